from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from commuting_ops.diffop import DiffOp
from commuting_ops.document import parse_poly
from commuting_ops.exact_core import CoefPoly, ParamSet
from commuting_ops.operator_zoo import FamilySpec, build
from commuting_ops.selfadjoint import (
    QPoly,
    SelfAdjointError,
    VW,
    decompose_selfadjoint4,
    is_selfadjoint,
    solve_mironov_g1,
    verify_mironov_relation,
)
from commuting_ops.spectral import HyperellipticCurve
from test_exact_core import to_sympy

A = ParamSet(("alpha",))
x = CoefPoly.x(1, A)
alpha = CoefPoly.param("alpha", A)
V0 = x ** 3 + alpha


def sympy_relation(V, W, Q):
    xs, lam = sympy.symbols("x lambda")
    d = lambda e, k=1: sympy.diff(e, xs, k)
    return sympy.expand((lam - W) * Q ** 2 - V * d(Q) ** 2 + d(Q, 2) ** 2 / 4 - d(Q) * d(Q, 3) / 2
                        + Q * (d(V) * d(Q) + 2 * V * d(Q, 2) + d(Q, 4) / 2))


def test_decompose_dixmier():
    L, _ = build(FamilySpec("dixmier_r2"))
    vw = decompose_selfadjoint4(L)
    assert vw.V == V0 and vw.W == x.scale(2)
    assert vw.operator() == L
    assert is_selfadjoint(L)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_decompose_mironov(g):
    L, _ = build(FamilySpec("mironov_r2", g=g))
    vw = decompose_selfadjoint4(L)
    assert vw.V == V0 and vw.W == x.scale(g * (g + 1))


def test_decompose_free():
    vw = decompose_selfadjoint4(DiffOp.D(4))
    assert vw.V.is_zero() and vw.W.is_zero()


@pytest.mark.parametrize("text", ["D^4 + D^3", "2*D^4", "D^4 + x*D^2", "D^2"])
def test_decompose_rejects(text):
    from commuting_ops.document import parse_operator
    with pytest.raises(SelfAdjointError):
        decompose_selfadjoint4(parse_operator(text))


def test_relation_examples():
    curve = HyperellipticCurve(1, (-alpha, 0, 0))
    assert verify_mironov_relation(VW(V0, x.scale(2)), QPoly((x,)), curve)
    bad = verify_mironov_relation(VW(V0, x.scale(2)), QPoly((-x,)), curve)
    assert not bad
    assert bad.mismatch_degree is not None
    zero = CoefPoly.const(0)
    assert verify_mironov_relation(VW(zero, zero), QPoly((zero,)), HyperellipticCurve(1, (0, 0, 0)))


def test_relation_agrees_with_sympy():
    xs, lam, al = sympy.symbols("x lambda alpha")
    rel = sympy_relation(xs ** 3 + al, 2 * xs, lam + xs)
    assert rel == sympy.expand(lam ** 3 - al)


def test_solver_dixmier():
    q, curve = solve_mironov_g1(VW(V0, x.scale(2)))
    assert q.coeffs == (x,)
    assert curve.coeffs == (-alpha, 0, 0)


def test_solver_free():
    zero = CoefPoly.const(0)
    q, curve = solve_mironov_g1(VW(zero, zero))
    assert q.coeffs[0].is_zero()
    assert all(c.is_zero() for c in curve.coeffs)


def test_solver_shifted_potential():
    q, curve = solve_mironov_g1(VW(V0, x.scale(2) + 1))
    assert q.coeffs == (x - 1,)
    assert curve.coeffs == (-alpha - 1, 3, -3)
    xs, lam, al = sympy.symbols("x lambda alpha")
    rel = sympy_relation(xs ** 3 + al, 2 * xs + 1, lam + xs - 1)
    assert rel == sympy.expand((lam - 1) ** 3 - al)


def test_solver_no_genus_one_solution():
    with pytest.raises(SelfAdjointError):
        solve_mironov_g1(VW(V0, x.scale(6)))


@settings(max_examples=40, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_solver_output_satisfies_sympy_relation(c3, c0, w0):
    V = parse_poly(f"{c3}*x^3 + {c0}")
    W = parse_poly(f"2*{c3}*x + {w0}") if c3 else parse_poly(f"{w0}")
    try:
        q, curve = solve_mironov_g1(VW(V, W))
    except SelfAdjointError:
        return
    xs, lam = sympy.symbols("x lambda")
    Q = lam + to_sympy(q.coeffs[0].with_params(ParamSet()))
    rhs = lam ** 3 + sum(to_sympy(c.with_params(ParamSet())) * lam ** k for k, c in enumerate(curve.coeffs))
    assert sympy_relation(to_sympy(V), to_sympy(W), Q) == sympy.expand(rhs)
