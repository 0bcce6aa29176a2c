from src.counting.candidates import CandidateFamily, DepthRule, enumerate_candidates
from src.counting.growth import htop_eps_estimate, mdim_estimate
from src.counting.separated import SeparatedSet, maximal_separated, spanning_check

__all__ = [
    "CandidateFamily",
    "DepthRule",
    "SeparatedSet",
    "enumerate_candidates",
    "htop_eps_estimate",
    "maximal_separated",
    "mdim_estimate",
    "spanning_check",
]
