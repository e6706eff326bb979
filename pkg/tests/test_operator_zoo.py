from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from commuting_ops.diffop import DiffOp, canonical_check, op_commutator
from commuting_ops.exact_core import CoefPoly
from commuting_ops.operator_zoo import (
    FAMILIES,
    FamilySpec,
    build,
    cheb_nest_check,
    cheb_operator,
    chebyshev,
    companion_order,
    expected_order,
)
from golden import ARGS, golden, b_value

D = DiffOp.D


def cos_multiple(r, c, s):
    # real part of (c + i s)^r, exact
    re, im = Fraction(1), Fraction(0)
    for _ in range(r):
        re, im = re * c - im * s, re * s + im * c
    return re


def test_small_cases():
    assert chebyshev(0).coeffs == (1,)
    assert chebyshev(1).coeffs == (0, 1)
    assert chebyshev(2).coeffs == (-1, 0, 2)
    assert chebyshev(5).coeffs == (0, 5, 0, -20, 0, 16)
    assert chebyshev(-3) == chebyshev(3)


@pytest.mark.parametrize("r", range(9))
def test_cos_identity(r):
    c, s = Fraction(3, 5), Fraction(4, 5)
    assert chebyshev(r)(c) == cos_multiple(r, c, s)


@pytest.mark.parametrize("r", range(9))
def test_against_sympy(r):
    z = sympy.Symbol("z")
    ref = sympy.Poly(sympy.chebyshevt(r, z), z).all_coeffs()[::-1]
    assert list(chebyshev(r).coeffs) == [int(v) for v in ref]


@given(st.integers(0, 5), st.integers(0, 5))
def test_nesting(n, m):
    assert cheb_nest_check(n, m)


def test_cheb_operator():
    assert cheb_operator(2) == D(2).scale(2) - DiffOp.identity()
    assert cheb_operator(4) == D(4).scale(8) - D(2).scale(8) + DiffOp.identity()
    X = CoefPoly.x()
    assert cheb_operator(3, "x") == DiffOp.mult(X ** 3 * 4 - X * 3)


@pytest.mark.parametrize("r", [4, 5, 6, 7])
@pytest.mark.parametrize("g", [1, 2, 3])
def test_golden_examples(r, g):
    a, _ = ARGS[r]
    L, _ = build(FamilySpec("cheb_canonical", r=r, g=g, a=a, b=b_value(r)))
    diff = golden(r, g) - L
    assert diff.order <= 0
    c = diff.coeff(0)
    assert c.is_numeric() and c.deg_x() <= 0
    expected = {4: 2 * g * (g + 1), 5: 0, 6: Fraction(-9 * g * (g + 1), 8), 7: 0}[r]
    assert c == expected


@pytest.mark.parametrize("r,canonical", [(2, False), (3, False), (4, True), (5, True), (6, True)])
def test_canonical_threshold(r, canonical):
    L, _ = build(FamilySpec("cheb_canonical", r=r, g=1))
    assert canonical_check(L).is_canonical is canonical


@pytest.mark.parametrize("fam", ["dixmier_r2", "dixmier_r3"])
def test_dixmier_pairs_commute(fam):
    spec = FamilySpec(fam)
    L, M = build(spec)
    assert L.order == expected_order(spec)
    assert M.order == companion_order(spec)
    assert op_commutator(L, M).is_zero()


@pytest.mark.parametrize("spec", [
    FamilySpec("mironov_r2", g=2), FamilySpec("mironov_r3", g=1),
    FamilySpec("rank_2k", k=2), FamilySpec("rank_2k", k=3),
    FamilySpec("rank_3k", k=1), FamilySpec("rank_3k", k=2),
    FamilySpec("cheb_z", r=3, g=2), FamilySpec("cheb_z", r=-2),
    FamilySpec("cheb_canonical", r=3, g=2),
])
def test_orders(spec):
    L, M = build(spec)
    assert M is None
    assert L.order == expected_order(spec)
    assert canonical_check(L).is_monic or spec.family == "cheb_z"


def test_hyphenated_family_names():
    assert FamilySpec("dixmier-r2").family == "dixmier_r2"
    assert set(FAMILIES) >= {"dixmier_r2", "cheb_canonical"}


@pytest.mark.parametrize("kwargs", [
    dict(family="nope"), dict(family="mironov_r2", g=0),
    dict(family="rank_2k", k=1), dict(family="cheb_z", r=0),
])
def test_bad_specs(kwargs):
    with pytest.raises(ValueError):
        FamilySpec(**kwargs)


def test_symbolic_constants():
    L, _ = build(FamilySpec("cheb_canonical", r=2, a="a", b="b"))
    assert L.params.names == ("a", "b")
    assert L.coeff(0).used_params()
