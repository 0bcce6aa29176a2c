from src.errors import ConfigError
from src.metricspace import build_alphabet
from src.pipelines.models import AlphabetConfig, ObservableConfig, SystemConfig
from src.shiftspace import (
    Observable,
    ShiftSystem,
    constant_observable,
    coordinate_valuation,
    windowed_observable,
)


def alphabet_from(config: AlphabetConfig):
    return build_alphabet(config.kind, **config.params)


def system_from(config: SystemConfig) -> ShiftSystem:
    alphabet = alphabet_from(config.alphabet)
    if config.truncation_radius is None:
        return ShiftSystem(alphabet)
    return ShiftSystem(alphabet, config.truncation_radius)


def observable_from(sys: ShiftSystem, config: ObservableConfig) -> Observable:
    if config.kind == "constant":
        return constant_observable(config.value)
    if config.kind == "valuation":
        return coordinate_valuation(sys.alphabet)
    if config.kind == "windowed":
        return windowed_observable(sys.alphabet, config.weights)
    raise ConfigError(f"Unsupported observable: {config.kind}")
