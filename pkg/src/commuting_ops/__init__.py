"""Exact construction and verification of commuting differential operators
with polynomial coefficients."""
from .exact_core import CoefPoly, ParamSet, Rat
from .diffop import (
    DiffOp,
    canonical_check,
    formal_adjoint,
    op_commutator,
    op_mul,
    op_pow,
    weyl_automorphism,
)
from .operator_zoo import FamilySpec, build, cheb_nest_check, cheb_operator, chebyshev
from .centralizer import AnsatzSpec, find_M, select_M, solve_centralizer
from .spectral import (
    HyperellipticCurve,
    curve_report,
    hyperelliptic_reduce,
    poly_in_op,
    rank_of,
    verify_pair,
)
from .selfadjoint import QPoly, VW, decompose_selfadjoint4, solve_mironov_g1, verify_mironov_relation
from .eigenspace import certify_rank, m_action, series_kernel

__version__ = "0.1.0"
