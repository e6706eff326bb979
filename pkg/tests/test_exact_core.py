from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from commuting_ops.exact_core import CoefPoly, ParamSet, ParamSetMismatch, as_rat
from strategies import ALPHA, polys, rationals

AB = ParamSet(("a", "b"))
x = CoefPoly.x(1, ALPHA)
alpha = CoefPoly.param("alpha", ALPHA)


def to_sympy(p: CoefPoly):
    syms = sympy.symbols(("x",) + p.params.names)
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for s, e in zip(syms, mono):
            term *= s ** e
        out += term
    return sympy.expand(out)


def test_difference_of_squares():
    X = CoefPoly.x()
    assert (X + 1) * (X - 1) == X ** 2 - 1


def test_cancellation_leaves_alpha():
    assert (x ** 3 + alpha) + (-x ** 3) == alpha


def test_chebyshev_step():
    z = CoefPoly.x()
    T2 = z * z * 2 - 1
    assert z.scale(2) * T2 - z == z ** 3 * 4 - z * 3


def test_dx_examples():
    b = CoefPoly.param("b")
    X = CoefPoly.x(1, b.params)
    assert (x ** 3 + alpha).dx() == x ** 2 * 3
    assert CoefPoly.const(7).dx().is_zero()
    assert (X ** 2 * b).dx() == X * b * 2


def test_subst_examples():
    assert (x ** 2 + alpha).subst({"alpha": 1}) == CoefPoly.x() ** 2 + 1
    a, b = CoefPoly.param("a", AB), CoefPoly.param("b", AB)
    assert (a * b).subst({"a": 0}).is_zero()
    assert a.scale(Fraction(5, 16)).subst({"a": Fraction(1, 16)}) == Fraction(5, 256)


def test_is_constant():
    assert (-alpha).is_constant() == -alpha
    assert x.scale(2).is_constant() is None
    assert CoefPoly.const(0).is_constant() is not None


def test_mismatched_params_name_both():
    with pytest.raises(ParamSetMismatch) as info:
        CoefPoly.param("a", ParamSet(("a",))) + CoefPoly.param("b", ParamSet(("b",)))
    assert "a" in str(info.value) and "b" in str(info.value)


def test_empty_ring_embeds():
    assert alpha + 1 == CoefPoly.const(1, ALPHA) + alpha
    assert alpha * CoefPoly.x() == x * alpha


def test_as_rat():
    assert as_rat("5/16") == Fraction(5, 16)
    assert as_rat(Fraction(4, 2)) == 2
    with pytest.raises((ValueError, TypeError)):
        as_rat(0.5)


def test_divexact():
    p = (x + alpha) * (x ** 2 - alpha)
    assert p.divexact(x + alpha) == x ** 2 - alpha
    assert (x + 1).divexact(x) is None


@settings(max_examples=200)
@given(polys(ALPHA), polys(ALPHA), polys(ALPHA))
def test_ring_laws(p, q, r):
    zero = CoefPoly.const(0, ALPHA)
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == zero
    assert p * 1 == p


@settings(max_examples=200)
@given(polys(ALPHA), polys(ALPHA))
def test_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p.dx()) == sympy.diff(to_sympy(p), sympy.Symbol("x"))


@settings(max_examples=200)
@given(polys(ALPHA), polys(ALPHA))
def test_degree_law(p, q):
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).deg_x() == p.deg_x() + q.deg_x()


@settings(max_examples=200)
@given(polys(ALPHA), polys(ALPHA))
def test_leibniz(p, q):
    assert (p * q).dx() == p.dx() * q + p * q.dx()


@settings(max_examples=200)
@given(polys(ALPHA), polys(ALPHA), rationals)
def test_subst_is_a_ring_map(p, q, v):
    s = lambda t: t.subst({"alpha": v})
    assert s(p + q) == s(p) + s(q)
    assert s(p * q) == s(p) * s(q)
    assert s(p.dx()) == s(p).dx()


@given(polys(ALPHA))
def test_hash_agrees_with_eq(p):
    q = CoefPoly(ALPHA, dict(p.terms))
    assert p == q and hash(p) == hash(q)
