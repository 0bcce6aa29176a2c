from src.birkhoff.averages import (
    birkhoff_average,
    birkhoff_averages,
    deviation_members,
    sample_deviation_candidates,
    separated_in_deviation,
    tilted_weights,
)
from src.birkhoff.measures import (
    EmpiricalMeasure,
    bernoulli_measure,
    katok_covering_number,
    katok_entropy_estimate,
    periodic_orbit_measure,
)
from src.birkhoff.models import DeviationSpec, KatokEstimate

__all__ = [
    "DeviationSpec",
    "EmpiricalMeasure",
    "KatokEstimate",
    "bernoulli_measure",
    "birkhoff_average",
    "birkhoff_averages",
    "deviation_members",
    "katok_covering_number",
    "katok_entropy_estimate",
    "periodic_orbit_measure",
    "sample_deviation_candidates",
    "separated_in_deviation",
    "tilted_weights",
]
