"""Exact power-series kernels of ``L - lambda`` and the action of ``M`` on them.

Series are truncated Taylor expansions at ``x = 0`` in the monomial basis
with a *validity* ``v``: coefficients ``0..v`` are exact.  Applying an
operator of order ``k`` lowers the validity by ``k``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Optional

from .diffop import DiffOp, op_commutator
from .exact_core import as_rat
from .linalg import (
    QuadElem,
    charpoly_berkowitz,
    identity,
    mat_mul,
    rank,
    rational_sqrt,
)
from .spectral import HyperellipticCurve, rank_of


class SeriesError(ValueError):
    pass


class DegenerateBranchWarning(UserWarning):
    pass


@dataclass(frozen=True)
class TruncSeries:
    coeffs: tuple  # coeffs[k] multiplies x**k, k = 0..valid
    valid: int

    def __post_init__(self):
        if self.valid < 0:
            raise SeriesError("series validity must be nonnegative")
        c = tuple(Fraction(v) for v in self.coeffs[: self.valid + 1])
        c = c + (Fraction(0),) * (self.valid + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    def derivative_at_zero(self, i: int) -> Fraction:
        if i > self.valid:
            raise SeriesError(f"derivative {i} beyond validity {self.valid}")
        return self.coeffs[i] * factorial(i)


def _numeric(op: DiffOp) -> DiffOp:
    if op.used_params():
        raise SeriesError(f"operator still uses parameters {list(op.used_params())}")
    if op.params.names:
        return DiffOp({i: c.subst({n: 0 for n in c.params.names}) for i, c in op.coeffs.items()})
    return op


def _univariate(op: DiffOp):
    return {i: {m[0]: Fraction(v) for m, v in c.terms.items()} for i, c in op.coeffs.items()}


def apply_series(A: DiffOp, s: TruncSeries) -> TruncSeries:
    """``A`` applied to a truncated series; validity drops by ``order(A)``."""
    A = _numeric(A)
    if A.is_zero():
        return TruncSeries((), s.valid)
    valid = s.valid - A.order
    if valid < 0:
        raise SeriesError(f"validity would become {valid}")
    out = [Fraction(0)] * (valid + 1)
    c = s.coeffs
    for i, poly in _univariate(A).items():
        # D^i: coefficient k of psi^(i) is c[k+i] (k+i)!/k!
        for e, a in poly.items():
            for k in range(0, valid + 1 - e):
                idx = k + i
                ff = 1
                for t in range(k + 1, idx + 1):
                    ff *= t
                out[k + e] += a * c[idx] * ff
    return TruncSeries(tuple(out), valid)


@dataclass(frozen=True)
class SeriesKernel:
    lam: Fraction
    N: int
    basis: List[TruncSeries]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def series_kernel(L: DiffOp, lam, N: int) -> SeriesKernel:
    """Normalised basis ``psi_j = x^j/j! + O(x^n)`` of ``ker(L - lam)`` at ``x = 0``.

    Each series is exact through ``x^N``; ``(L - lam) psi_j`` vanishes
    through ``x^(N - n)``.
    """
    L = _numeric(L)
    lam = Fraction(as_rat(lam))
    n = L.order
    if L.is_zero() or n < 1:
        raise SeriesError("L must have positive order")
    if N < n:
        raise SeriesError(f"truncation N={N} is below order(L)={n}")
    lead0 = L.lead().constant_term()
    if not lead0:
        raise SeriesError("leading coefficient vanishes at x=0 (singular point); recentring is not supported")
    terms = _univariate(L)
    # (L - lam) psi at x^k: sum_{i,e} a_{i,e} c[k-e+i] (k-e+i)!/(k-e)! - lam c[k]
    basis = []
    for j in range(n):
        c = [Fraction(0)] * (N + 1)
        c[j] = Fraction(1, factorial(j))
        for k in range(0, N - n + 1):
            acc = -lam * c[k]
            for i, poly in terms.items():
                for e, a in poly.items():
                    idx = k - e + i
                    if e > k or (i == n and e == 0):
                        continue
                    ff = 1
                    for t in range(k - e + 1, idx + 1):
                        ff *= t
                    acc += a * c[idx] * ff
            ff = 1
            for t in range(k + 1, k + n + 1):
                ff *= t
            c[k + n] = -acc / (lead0 * ff)
        basis.append(TruncSeries(tuple(c), N))
    return SeriesKernel(lam, N, basis)


@dataclass(frozen=True)
class MActionMatrix:
    matrix: List[List[Fraction]]
    lam: Fraction
    f_lam: Fraction

    def square(self):
        return mat_mul(self.matrix, self.matrix)


def m_action(L: DiffOp, M: DiffOp, lam, curve: HyperellipticCurve, margin: int = 4) -> MActionMatrix:
    """Matrix of ``M`` on ``ker(L - lam)`` in the normalised basis.

    Column ``j`` holds the first ``order(L)`` derivatives at 0 of ``M psi_j``.
    """
    L, M = _numeric(L), _numeric(M)
    if not op_commutator(L, M).is_zero():
        raise SeriesError("[L, M] != 0; M does not act on the kernel")
    lam = Fraction(as_rat(lam))
    n = L.order
    N = n + M.order + margin
    ker = series_kernel(L, lam, N)
    cols = []
    for psi in ker.basis:
        img = apply_series(M, psi)
        cols.append([img.derivative_at_zero(i) for i in range(n)])
    matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    return MActionMatrix(matrix, lam, curve.f(lam))


def _poly_pow_mu2(f_lam: Fraction, r: int) -> List[Fraction]:
    """Coefficients (highest first) of ``(mu^2 - f)^r``."""
    base = [Fraction(1), Fraction(0), -f_lam]
    out = [Fraction(1)]
    for _ in range(r):
        new = [Fraction(0)] * (len(out) + 2)
        for i, a in enumerate(out):
            for j, b in enumerate(base):
                new[i + j] += a * b
        out = new
    return out


@dataclass
class RankReport:
    lam: Fraction
    f_lam: Fraction
    matrix: List[List[Fraction]]
    charpoly: List[Fraction]
    expected_charpoly: List[Fraction]
    square_is_scalar: bool
    minimal_poly: List[Fraction]
    eigenspace_dims: dict
    rank: int
    gcd_rank: int
    warnings: List[str] = field(default_factory=list)

    @property
    def charpoly_ok(self) -> bool:
        return self.charpoly == self.expected_charpoly

    @property
    def multiplicity_ok(self) -> bool:
        return bool(self.eigenspace_dims) and all(d == self.rank for d in self.eigenspace_dims.values())

    @property
    def certified(self) -> bool:
        return (self.charpoly_ok and self.square_is_scalar and self.multiplicity_ok
                and self.rank == self.gcd_rank)

    def summary(self) -> str:
        r = self.rank
        f = self.f_lam
        base = "mu^2" if f == 0 else (f"mu^2 - {f}" if f > 0 else f"mu^2 + {-f}")
        cp = f"({base})" + (f"^{r}" if r > 1 else "")
        status = "certified" if self.certified else "NOT certified"
        return f"lambda = {self.lam}: charpoly {cp}, rank {r} {status}"


def _fmt_poly(coeffs) -> str:
    n = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        if c:
            p = n - i
            parts.append(f"{c}" + ("" if p == 0 else ("*mu" if p == 1 else f"*mu^{p}")))
    return " + ".join(parts) or "0"


def certify_rank(L: DiffOp, M: DiffOp, curve: HyperellipticCurve, lam) -> RankReport:
    """Certify that ``M`` acts on ``ker(L - lam)`` with eigenvalues ``+-sqrt f(lam)``, each of multiplicity ``r``."""
    act = m_action(L, M, lam, curve)
    A, f = act.matrix, act.f_lam
    n = len(A)
    notes = []
    if n % 2:
        raise SeriesError("order(L) must be even for a hyperelliptic pair")
    r = n // 2
    if f == 0:
        notes.append("f(lambda) = 0: branch point, multiplicities are degenerate")
        warnings.warn(notes[-1], DegenerateBranchWarning)
    cp = charpoly_berkowitz(A)
    cp = [Fraction(c) for c in cp]
    expected = _poly_pow_mu2(f, r)
    sq = act.square()
    square_ok = sq == [[f if i == j else 0 for j in range(n)] for i in range(n)]
    # minimal polynomial: lowest-degree monic divisor of mu^2 - f that kills A
    if all(A[i][j] == 0 for i in range(n) for j in range(n)):
        minimal = [Fraction(1), Fraction(0)]
    else:
        s = rational_sqrt(f)
        if s is not None and all(A[i][j] == (s if i == j else 0) for i in range(n) for j in range(n)):
            minimal = [Fraction(1), -s]
        elif s is not None and all(A[i][j] == (-s if i == j else 0) for i in range(n) for j in range(n)):
            minimal = [Fraction(1), s]
        elif square_ok:
            minimal = [Fraction(1), Fraction(0), -f]
        else:
            minimal = []
    dims = {}
    if f != 0:
        s = rational_sqrt(f)
        if s is not None:
            for mu in (s, -s):
                shifted = [[A[i][j] - (mu if i == j else 0) for j in range(n)] for i in range(n)]
                dims[str(mu)] = n - rank(shifted)
        else:
            for sign in (1, -1):
                mu = QuadElem(0, sign, f)
                shifted = [[QuadElem(A[i][j], 0, f) - (mu if i == j else 0) for j in range(n)]
                           for i in range(n)]
                dims[("" if sign > 0 else "-") + f"sqrt({f})"] = n - rank(shifted)
    else:
        dims["0"] = n - rank(A)
    return RankReport(
        lam=act.lam, f_lam=f, matrix=A, charpoly=cp, expected_charpoly=expected,
        square_is_scalar=square_ok, minimal_poly=minimal, eigenspace_dims=dims,
        rank=r, gcd_rank=rank_of(L, M), warnings=notes,
    )
