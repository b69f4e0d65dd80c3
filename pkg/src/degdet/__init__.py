"""Degree of the Dieudonne determinant for linear symbolic matrices over K(t)."""
from .errors import *  # noqa: F401,F403
from .fields import GF, MINUS_INF, QQ, LaurentPoly, Polynomial, RationalFunction, RationalFunctionField, field_from_spec, field_to_spec
from .linalg import deg_det, is_biproper, max_minor_degree, ratmatrix, smith_mcmillan
from .pencil import LaurentMatrix, LeadingPencil, LinearPencil, apply_move, commutative_degdet_oracle, kappa_bound
from .mvsp import MvSubspace, mvsp_bipartite, mvsp_bruteforce, mvsp_layered, mvsp_rank1, nc_rank, solve_mvsp
from .solver import DegDetResult, combinatorial_relaxation, max_deg_subdet, sda_degdet, valuated_exchange_check
from .lconvex import SdaTrace, ZFunction, iteration_bound_check, sda_zn, steepest_direction
from .apps import (
    MatchingInstance,
    MatroidBaseInstance,
    MatroidIntersectionInstance,
    MixedPolySystem,
    dae_index,
    mixed_poly_degdet,
    solve_matroid_base,
    solve_matroid_intersection,
    solve_weighted_matching,
)

__version__ = "0.1.0"
