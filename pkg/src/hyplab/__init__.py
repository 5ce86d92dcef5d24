"""Numerical toolkit for hyperbolic polynomials and the regularity of their roots."""

from .errors import (
    DegenerateError,
    GridError,
    HyperbolicityError,
    InternalError,
    SpecError,
    ToleranceError,
)
from .polycore import (
    PolyCoeffs,
    RootVector,
    derivative,
    evaluate,
    is_hyperbolic,
    ordered_roots,
    roots_batch,
    vieta,
)
from .tschirnsplit import check_b2_bound, check_dominance, normalize, nuij, split, tschirnhausen
from .tuplemetric import UnorderedTuple, dist, dist_bruteforce, metric_speed

__version__ = "0.1.0"

__all__ = [
    "DegenerateError", "GridError", "HyperbolicityError", "InternalError", "SpecError",
    "ToleranceError", "PolyCoeffs", "RootVector", "derivative", "evaluate", "is_hyperbolic",
    "ordered_roots", "roots_batch", "vieta", "check_b2_bound", "check_dominance", "normalize",
    "nuij", "split", "tschirnhausen", "UnorderedTuple", "dist", "dist_bruteforce",
    "metric_speed",
]
