from collections.abc import Callable

from src.errors import ConfigError
from src.metricspace.alphabet import (
    Alphabet,
    cantor,
    dense,
    discrete,
    interval_grid,
    product_alphabet,
    single_point,
)

GENERATOR_REGISTRY: dict[str, Callable[..., Alphabet]] = {
    "interval_grid": interval_grid,
    "cantor": cantor,
    "discrete": discrete,
    "single_point": single_point,
    "dense": dense,
}


def build_alphabet(kind: str, **params) -> Alphabet:
    """Build an alphabet from a registered generator name and its parameters."""
    if kind == "product":
        factors = params.get("factors") or []
        if len(factors) != 2:
            raise ConfigError(f"product alphabet needs two factors, got {len(factors)}")
        first, second = (
            build_alphabet(f["kind"], **f.get("params", {})) for f in factors
        )
        return product_alphabet(first, second)
    generator = GENERATOR_REGISTRY.get(kind)
    if generator is None:
        supported = ", ".join([*GENERATOR_REGISTRY, "product"])
        raise ConfigError(f"Unsupported alphabet generator: {kind}. Supported: {supported}")
    try:
        return generator(**params)
    except TypeError as exc:
        raise ConfigError(f"Bad parameters for {kind}: {exc}") from exc


__all__ = [
    "Alphabet",
    "GENERATOR_REGISTRY",
    "build_alphabet",
    "product_alphabet",
]
