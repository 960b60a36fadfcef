"""Postulation-character calculus for ACM codimension-2 and arithmetically
Gorenstein codimension-3 subschemes of projective space."""

from .charcalc import (
    Character,
    CharacterError,
    CurveInvariants,
    PostulationTable,
    curve_invariants,
    degree_genus_p3,
    delta_split,
    gamma_from_delta,
    postulation_from_gamma,
    validate_admissible,
    validate_ag,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Character",
    "CharacterError",
    "CurveInvariants",
    "PostulationTable",
    "curve_invariants",
    "degree_genus_p3",
    "delta_split",
    "gamma_from_delta",
    "postulation_from_gamma",
    "validate_admissible",
    "validate_ag",
]
