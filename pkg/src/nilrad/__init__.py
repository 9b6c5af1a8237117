"""Exact tools for deciding whether a nilpotent Lie algebra is an Einstein nilradical."""
from .algebra import LieLaw, ParamCoeff, abelian, direct_sum, instantiate, jacobi_check
from .classify import Report, classify, table
from .degeneration import assess, certificate_from_direction, find_degeneration, gphi_diag
from .derivations import derivation_space, diagonal_derivations, diagonal_rank
from .fileformat import parse, parse_catalog, serialize
from .lp import lp_feasible
from .moment import NumericLaw, emit_soliton_system, moment_map, verify_soliton
from .nice import gram_matrix, is_nice, nice_criterion
from .pre_einstein import min_value, pre_einstein, target_moment_map

__version__ = "0.1.0"

__all__ = [
    "LieLaw", "ParamCoeff", "abelian", "direct_sum", "instantiate", "jacobi_check",
    "Report", "classify", "table",
    "assess", "certificate_from_direction", "find_degeneration", "gphi_diag",
    "derivation_space", "diagonal_derivations", "diagonal_rank",
    "parse", "parse_catalog", "serialize",
    "lp_feasible",
    "NumericLaw", "emit_soliton_system", "moment_map", "verify_soliton",
    "gram_matrix", "is_nice", "nice_criterion",
    "min_value", "pre_einstein", "target_moment_map",
]
