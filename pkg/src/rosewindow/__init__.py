"""Rose window graphs: construction, automorphism groups and Cayley classification."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    ApplicabilityError,
    CapacityError,
    DegreeMismatch,
    ParameterError,
    RoseWindowError,
    TranscriptionError,
)
from .graph import EdgeKind, RoseWindowParams, RWGraph, build, make_params, normalize
from .perm import Permutation, PermutationGroup, schreier_sims

__all__ = [
    "ApplicabilityError",
    "CapacityError",
    "DegreeMismatch",
    "EdgeKind",
    "ParameterError",
    "Permutation",
    "PermutationGroup",
    "RWGraph",
    "RoseWindowError",
    "RoseWindowParams",
    "TranscriptionError",
    "build",
    "make_params",
    "normalize",
    "schreier_sims",
]
