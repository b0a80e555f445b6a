"""Radical generator constructions and the ara dispatcher."""

from .ara import ara, frame_params_for, in_scope, sv_construction
from .combine import combine_intersection, combine_sum, strip_indeg_one
from .cone import Removal, cone_reduce
from .result import AraResult, TAGS
from .section7 import (
    generic_generators,
    generic_ideal,
    load_certificate_for,
    section7_generators,
    specialize_generators,
)
from .sv import (
    H17Params,
    SVReport,
    SVSystem,
    diagonal_system,
    h1_generators,
    h1_systems,
    h14_system,
    h17_system,
    sv_check,
    sv_generators,
)

__all__ = [
    "AraResult",
    "H17Params",
    "Removal",
    "SVReport",
    "SVSystem",
    "TAGS",
    "ara",
    "combine_intersection",
    "combine_sum",
    "cone_reduce",
    "diagonal_system",
    "frame_params_for",
    "generic_generators",
    "generic_ideal",
    "h1_generators",
    "h1_systems",
    "h14_system",
    "h17_system",
    "in_scope",
    "load_certificate_for",
    "section7_generators",
    "specialize_generators",
    "strip_indeg_one",
    "sv_check",
    "sv_construction",
    "sv_generators",
]
