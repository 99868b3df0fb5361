"""Decide and certify quasi-compactness of opens in F^L by finite-level Gröbner computations."""

from .polycore import MonomialOrder, ParseError, Polynomial, parse_poly, render
from .groebner import (
    GroebnerBasis,
    IdealPresentation,
    eliminate,
    groebner_basis,
    ideal,
    ideal_member,
    is_consistent,
    radical_equal,
    radical_member,
    saturate,
)
from ._backend import current as backend

__version__ = "0.1.0"

__all__ = [
    "GroebnerBasis",
    "IdealPresentation",
    "MonomialOrder",
    "ParseError",
    "Polynomial",
    "backend",
    "eliminate",
    "groebner_basis",
    "ideal",
    "ideal_member",
    "is_consistent",
    "parse_poly",
    "radical_equal",
    "radical_member",
    "render",
    "saturate",
]
