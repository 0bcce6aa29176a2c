from src.caratheodory.covers import (
    CoverFamily,
    appendix_inequality_check,
    cover_weight,
    greedy_bowen_cover,
    spanning_cover,
)
from src.caratheodory.entropy import (
    bowen_entropy_estimate,
    capacity_entropy,
    uniform_cover_sizes,
)
from src.caratheodory.mass import mass_distribution_check
from src.caratheodory.models import (
    AppendixCheck,
    CapacityEstimate,
    CriticalExponent,
    MassCertificate,
)

__all__ = [
    "AppendixCheck",
    "CapacityEstimate",
    "CoverFamily",
    "CriticalExponent",
    "MassCertificate",
    "appendix_inequality_check",
    "bowen_entropy_estimate",
    "capacity_entropy",
    "cover_weight",
    "greedy_bowen_cover",
    "mass_distribution_check",
    "spanning_cover",
    "uniform_cover_sizes",
]
