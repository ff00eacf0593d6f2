"""Point counts, Hecke data, fibres and lattices for an extremal elliptic K3 surface with an I19 fibre."""

from .hecke import charpoly_T, epsilon, picard_rank, represent, zeta
from .kernel import BACKEND
from .pointcount import count_points, trace_T
from .surface import canonical_model, char3_model, char19_model, classify_fibers

__all__ = [
    "BACKEND",
    "canonical_model",
    "char3_model",
    "char19_model",
    "charpoly_T",
    "classify_fibers",
    "count_points",
    "epsilon",
    "picard_rank",
    "represent",
    "trace_T",
    "zeta",
]
__version__ = "0.1.0"
