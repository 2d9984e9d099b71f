"""uhvopt: bi-objective optimization by uncrowded-hypervolume gradient ascent.

Casts a bi-objective minimization problem as the single-objective
maximization of the uncrowded hypervolume (UHV) of a fixed-size solution
set, and solves it with gradient ascent (an Adam variant and the GA-MO
scheme), using analytic or finite-difference objective gradients.
"""

from ._kernels import BACKEND
from .hypervolume import DominationStatus, classify, uhv, uncrowded_distance
from .problems import EvaluationLedger, SolutionSet, get_problem, sample_initial_set

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DominationStatus",
    "EvaluationLedger",
    "SolutionSet",
    "classify",
    "get_problem",
    "sample_initial_set",
    "uhv",
    "uncrowded_distance",
    "__version__",
]
