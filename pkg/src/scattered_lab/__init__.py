"""Finite-field toolkit for scattered linear sets, their equivalence and MRD codes."""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, ConsistencyError, DivisionByZero, ParameterError,  # noqa: E402
                     ScatteredLabError)
from .gf import Field, field_for_q, make_field  # noqa: E402
from .linpoly import QPoly, adjoint, compose, dickson, identity, inverse, kernel_dim, qpoly  # noqa: E402
from .linset import INFINITY, LinearSet, contains_dickson, contains_direct, is_scattered, linear_set  # noqa: E402
from .families import make_cmpz, make_lp, make_pseudoregulus, make_trinomial  # noqa: E402
from .equiv import SemilinearMap, gammaL_equivalent, gl_stabilizer, scalar_equiv, zgl_lower_bound  # noqa: E402
from .mrd import RankCode, code_from, is_mrd, left_idealiser, matrix_rep, min_distance  # noqa: E402

__all__ = [
    "BudgetExceeded", "ConsistencyError", "DivisionByZero", "ParameterError", "ScatteredLabError",
    "Field", "field_for_q", "make_field",
    "QPoly", "adjoint", "compose", "dickson", "identity", "inverse", "kernel_dim", "qpoly",
    "INFINITY", "LinearSet", "contains_dickson", "contains_direct", "is_scattered", "linear_set",
    "make_cmpz", "make_lp", "make_pseudoregulus", "make_trinomial",
    "SemilinearMap", "gammaL_equivalent", "gl_stabilizer", "scalar_equiv", "zgl_lower_bound",
    "RankCode", "code_from", "is_mrd", "left_idealiser", "matrix_rep", "min_distance",
]
