"""Strongly stable ideals, their duality, shift modules and resolutions."""
from .errors import (BorelError, DomainMismatch, GuardExceeded, InvalidInput,
                     NonMinimalPresentation, NotRearTorsionFree, ParseError,
                     UnrepresentableClass)
from .isotone import INF, IsotoneMap, dual as dual_map, parse_isotone
from .monomial import Monomial, parse_monomial
from .ideal import SstIdeal
from .duality import dual, dual_via_intersection

__version__ = "0.1.0"

__all__ = [
    "BorelError", "DomainMismatch", "GuardExceeded", "InvalidInput",
    "NonMinimalPresentation", "NotRearTorsionFree", "ParseError", "UnrepresentableClass",
    "INF", "IsotoneMap", "dual_map", "parse_isotone", "Monomial", "parse_monomial",
    "SstIdeal", "dual", "dual_via_intersection",
]
