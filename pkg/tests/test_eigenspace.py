import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from commuting_ops.centralizer import find_M
from commuting_ops.diffop import DiffOp
from commuting_ops.eigenspace import (
    DegenerateBranchWarning,
    SeriesError,
    TruncSeries,
    apply_series,
    certify_rank,
    m_action,
    series_kernel,
)
from commuting_ops.linalg import det_bareiss
from commuting_ops.operator_zoo import FamilySpec, build
from commuting_ops.spectral import HyperellipticCurve, hyperelliptic_reduce

D = DiffOp.D
FREE = HyperellipticCurve(1, (0, 0, 0))


@pytest.fixture(scope="module")
def dixmier():
    L, M = build(FamilySpec("dixmier_r2", alpha=1))
    return L, M, hyperelliptic_reduce(L, M)


@pytest.fixture(scope="module")
def cheb_r2g1():
    L, _ = build(FamilySpec("cheb_canonical", r=2, g=1))
    M = find_M(L, 6)
    return L, M, hyperelliptic_reduce(L, M)


def test_cosh_sinh():
    ker = series_kernel(D(2), 4, 6)
    psi0, psi1 = ker.basis
    assert psi0.coeffs[:5] == (1, 0, 2, 0, Fraction(2, 3))
    assert psi1.coeffs[:4] == (0, 1, 0, Fraction(2, 3))
    xs = sympy.Symbol("x")
    ref = sympy.series(sympy.cosh(2 * xs), xs, 0, 7).removeO()
    assert [Fraction(str(ref.coeff(xs, k))) for k in range(7)] == list(psi0.coeffs)


def test_zero_eigenvalue():
    psi0, psi1 = series_kernel(D(2), 0, 5).basis
    assert psi0.coeffs == (1, 0, 0, 0, 0, 0)
    assert psi1.coeffs == (0, 1, 0, 0, 0, 0)


def test_apply_series():
    s = apply_series(D(), TruncSeries((1, 1, 1), 2))
    assert s.coeffs == (1, 2) and s.valid == 1
    s = apply_series(DiffOp.X(), TruncSeries((1, 1, 1), 2))
    assert s.valid == 2 and s.coeffs == (0, 1, 1)


def test_dixmier_kernel_is_annihilated(dixmier):
    L = dixmier[0]
    ker = series_kernel(L, 2, 30)
    assert ker.dimension == 4
    for j, psi in enumerate(ker.basis):
        assert all(psi.derivative_at_zero(i) == (i == j) for i in range(4))
        res = apply_series(L - DiffOp.identity().scale(2), psi)
        assert res.valid == 26 and not any(res.coeffs)


def test_kernel_of_non_constant_lead():
    # leading coefficient (1 - x^2)^2 is ordinary at 0
    L, _ = build(FamilySpec("cheb_z", r=2, g=1))
    for psi in series_kernel(L, Fraction(1, 3), 20).basis:
        res = apply_series(L - DiffOp.identity().scale(Fraction(1, 3)), psi)
        assert not any(res.coeffs)


def test_singular_base_point():
    with pytest.raises(SeriesError, match="singular"):
        series_kernel(DiffOp({2: DiffOp.X().coeff(0)}), 1, 5)
    with pytest.raises(SeriesError):
        series_kernel(D(2), 1, 1)


def test_m_action_free():
    act = m_action(D(2), D(3), 4, FREE)
    assert act.matrix == [[0, 4], [16, 0]]
    assert act.square() == [[64, 0], [0, 64]]
    assert m_action(D(2), D(3), 0, FREE).matrix == [[0, 0], [0, 0]]


def test_m_action_requires_commuting():
    with pytest.raises(SeriesError):
        m_action(D(2), D(2) + DiffOp.X(), 1, FREE)


def test_dixmier_square(dixmier):
    act = m_action(*dixmier[:2], 2, dixmier[2])
    assert act.square() == [[7 if i == j else 0 for j in range(4)] for i in range(4)]


def test_certify_free():
    rep = certify_rank(D(2), D(3), FREE, 4)
    assert rep.charpoly == [1, 0, -64]
    assert rep.certified and rep.rank == 1
    assert rep.eigenspace_dims == {"8": 1, "-8": 1}


def test_certify_dixmier(dixmier):
    rep = certify_rank(*dixmier, 2)
    assert rep.charpoly == [1, 0, -14, 0, 49]
    assert rep.minimal_poly == [1, 0, -7]
    assert rep.eigenspace_dims == {"sqrt(7)": 2, "-sqrt(7)": 2}
    assert rep.certified
    assert rep.summary() == "lambda = 2: charpoly (mu^2 - 7)^2, rank 2 certified"


def test_certify_negative_f(dixmier):
    rep = certify_rank(*dixmier, Fraction(-1, 2))
    assert rep.certified
    assert "(mu^2 + 9/8)^2" in rep.summary()


def test_branch_point_warns(dixmier):
    with pytest.warns(DegenerateBranchWarning):
        rep = certify_rank(*dixmier, 1)
    assert rep.f_lam == 0 and rep.warnings


@settings(max_examples=25, deadline=None)
@given(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)))
def test_trace_det_and_truncation(cheb_r2g1, lam):
    L, M, curve = cheb_r2g1
    act = m_action(L, M, lam, curve)
    A = act.matrix
    n = len(A)
    f = curve.f(lam)
    assert sum(A[i][i] for i in range(n)) == 0
    # eigenvalues +-sqrt(f), each r times
    assert det_bareiss(A) == (-f) ** (n // 2)
    assert act.square() == [[f if i == j else 0 for j in range(n)] for i in range(n)]
    assert m_action(L, M, lam, curve, margin=12).matrix == A
