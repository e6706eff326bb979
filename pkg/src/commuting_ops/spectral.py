"""Spectral curves of commuting pairs by descending reduction.

For commuting ``L`` (order ``n``) and ``M`` (order ``m``), ``M^2`` is reduced
against ``L^k`` and ``M L^k`` from the top order down.  For a pair of the
form considered here the remainder reaches zero, giving

    M^2 = f(L) + h(L) M,

and the pair is hyperelliptic in normalised form exactly when ``h = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .diffop import DiffOp, op_commutator, op_mul, op_pow
from .exact_core import CoefPoly, ParamSet
from .linalg import det_bareiss


class CurveError(ValueError):
    """The pair does not reduce to a hyperelliptic relation."""


@dataclass(frozen=True)
class HyperellipticCurve:
    """``mu^2 = lambda^(2g+1) + a_2g lambda^2g + ... + a_0``; ``coeffs = (a_0, ..., a_2g)``."""

    genus: int
    coeffs: Tuple[CoefPoly, ...]

    def __post_init__(self):
        coeffs = tuple(c if isinstance(c, CoefPoly) else CoefPoly.const(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != 2 * self.genus + 1:
            raise ValueError(f"genus {self.genus} needs {2 * self.genus + 1} coefficients")
        for c in coeffs:
            if c.deg_x() > 0:
                raise ValueError(f"curve coefficient {c} depends on x")

    @classmethod
    def from_descending(cls, values: Sequence) -> "HyperellipticCurve":
        """Build from ``(a_2g, ..., a_1, a_0)``."""
        values = list(values)
        g, rem = divmod(len(values) - 1, 2)
        if rem:
            raise ValueError("need an odd number of coefficients")
        return cls(g, tuple(reversed(values)))

    @property
    def degree(self) -> int:
        return 2 * self.genus + 1

    def full_coeffs(self) -> List[CoefPoly]:
        """``[a_0, ..., a_2g, 1]``."""
        return list(self.coeffs) + [CoefPoly.const(1, self.coeffs[0].params if self.coeffs else ParamSet())]

    def is_numeric(self) -> bool:
        return all(c.is_numeric() for c in self.coeffs)

    def rational_coeffs(self) -> List[Fraction]:
        return [Fraction(c.as_rational()) for c in self.coeffs] + [Fraction(1)]

    def f(self, lam):
        """Evaluate the right-hand side at a rational ``lam`` (numeric curves only)."""
        acc = Fraction(0)
        for c in reversed(self.rational_coeffs()):
            acc = acc * lam + c
        return acc

    def subst(self, bindings) -> "HyperellipticCurve":
        return HyperellipticCurve(self.genus, tuple(c.subst({k: v for k, v in bindings.items()
                                                              if k in c.params})
                                                     for c in self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, HyperellipticCurve):
            return NotImplemented
        return self.genus == other.genus and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.genus, self.coeffs))

    def __str__(self):
        parts = [f"lambda^{self.degree}"]
        for k in range(self.degree - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mon = "" if k == 0 else ("*lambda" if k == 1 else f"*lambda^{k}")
            parts.append(f"({c}){mon}")
        return "mu^2 = " + " + ".join(parts)


def eval_op_poly(L: DiffOp, coeffs: Sequence) -> DiffOp:
    """``sum coeffs[k] * L^k`` (coefficients are x-free polynomials or rationals)."""
    result = DiffOp.zero(L.params)
    power = DiffOp.identity(L.params)
    for k, c in enumerate(coeffs):
        if k:
            power = op_mul(power, L)
        if isinstance(c, CoefPoly):
            if c.is_zero():
                continue
        elif not c:
            continue
        result = result + power.scale(c)
    return result


def poly_in_op(L: DiffOp, curve: HyperellipticCurve) -> DiffOp:
    """``L^(2g+1) + a_2g L^2g + ... + a_0``."""
    return eval_op_poly(L, curve.full_coeffs())


def bc_reduce(L: DiffOp, M: DiffOp) -> Tuple[List[CoefPoly], List[CoefPoly]]:
    """Write ``M^2 = f(L) + h(L) M`` by descending reduction.

    Returns the coefficient lists ``(f, h)`` (lowest degree first).  Raises
    :class:`CurveError` when a leading ratio is not x-free or an order is
    reached that neither ``L^k`` nor ``M L^k`` can cancel.
    """
    if L.params != M.params:
        if not L.params.names:
            L = L.with_params(M.params)
        elif not M.params.names:
            M = M.with_params(L.params)
    n, m = L.order, M.order
    if L.is_zero() or M.is_zero():
        raise CurveError("both operators must be nonzero")
    ps = L.params
    R = op_mul(M, M)
    Lpow = [DiffOp.identity(ps)]
    MLpow = [M]
    f: dict = {}
    h: dict = {}

    def lpow(k):
        while len(Lpow) <= k:
            Lpow.append(op_mul(Lpow[-1], L))
        return Lpow[k]

    def mlpow(k):
        while len(MLpow) <= k:
            MLpow.append(op_mul(MLpow[-1], L))
        return MLpow[k]

    while not R.is_zero():
        o = R.order
        if o % n == 0:
            k = o // n
            basis = lpow(k)
            store = f
        elif o >= m and (o - m) % n == 0:
            k = (o - m) // n
            basis = mlpow(k)
            store = h
        else:
            raise CurveError(f"remainder of order {o} cannot be cancelled by L^k or M L^k")
        c = R.lead().divexact(basis.lead())
        if c is None or c.is_constant() is None:
            raise CurveError(f"leading ratio at order {o} is not x-free")
        store[k] = store.get(k, CoefPoly.const(0, ps)) + c
        R = R - basis.scale(c)
    zero = CoefPoly.const(0, ps)
    flist = [f.get(k, zero) for k in range(max(f, default=-1) + 1)]
    hlist = [h.get(k, zero) for k in range(max(h, default=-1) + 1)]
    return flist, hlist


def hyperelliptic_reduce(L: DiffOp, M: DiffOp) -> HyperellipticCurve:
    """Curve constants ``a_0..a_2g`` with ``M^2 = L^(2g+1) + ... + a_0`` exactly."""
    n, m = L.order, M.order
    if L.is_zero() or M.is_zero():
        raise CurveError("both operators must be nonzero")
    if (2 * m) % n or ((2 * m) // n) % 2 == 0:
        raise CurveError(f"orders {n}, {m}: 2*order(M) is not an odd multiple of order(L)")
    g = ((2 * m) // n - 1) // 2
    f, h = bc_reduce(L, M)
    if any(not c.is_zero() for c in h):
        raise CurveError("M^2 contains odd terms h(L) M; M is not in hyperelliptic normal form")
    if len(f) != 2 * g + 2:
        raise CurveError("reduction produced the wrong degree in L")
    if f[-1] != 1:
        raise CurveError(f"M is not normalised: leading curve coefficient is {f[-1]}, expected 1")
    return HyperellipticCurve(g, tuple(f[:-1]))


def rank_of(L: DiffOp, M: DiffOp) -> int:
    if L.is_zero() or M.is_zero():
        raise ValueError("rank needs nonzero operators")
    return gcd(L.order, M.order)


@dataclass(frozen=True)
class CurveReport:
    curve: HyperellipticCurve
    discriminant: Fraction

    @property
    def singular(self) -> bool:
        return self.discriminant == 0

    def summary(self) -> str:
        tag = "singular spectral curve" if self.singular else "nonsingular"
        return f"{self.curve}; discriminant = {self.discriminant} ({tag})"


def sylvester_resultant(p: Sequence, q: Sequence):
    """Resultant of two univariate polynomials given highest-degree-first."""
    p, q = list(p), list(q)
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    if size == 0:
        return 1
    rows = []
    for i in range(dq):
        rows.append([0] * i + p + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + q + [0] * (size - dq - 1 - i))
    return det_bareiss([[Fraction(v) for v in row] for row in rows])


def discriminant(coeffs_desc: Sequence) -> Fraction:
    """Discriminant of a monic polynomial (coefficients highest first)."""
    d = len(coeffs_desc) - 1
    deriv = [c * (d - i) for i, c in enumerate(coeffs_desc[:-1])]
    res = sylvester_resultant(coeffs_desc, deriv)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return Fraction(sign * res) / Fraction(coeffs_desc[0])


def curve_report(curve: HyperellipticCurve) -> CurveReport:
    if not curve.is_numeric():
        raise ValueError("curve_report needs numeric coefficients")
    desc = list(reversed(curve.rational_coeffs()))
    return CurveReport(curve, discriminant(desc))


@dataclass
class CommutingPair:
    L: DiffOp
    M: DiffOp
    curve: HyperellipticCurve
    rank: int
    provenance: object = "user"


@dataclass
class PairCheck:
    commutes: bool
    curve: Optional[HyperellipticCurve] = None
    round_trip: bool = False
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.commutes and self.round_trip


def verify_pair(L: DiffOp, M: DiffOp) -> PairCheck:
    """Commutator zero and ``M^2 == f(L)`` for the reduced curve."""
    if not op_commutator(L, M).is_zero():
        return PairCheck(False, error="[L, M] != 0")
    try:
        curve = hyperelliptic_reduce(L, M)
    except CurveError as exc:
        return PairCheck(True, error=str(exc))
    ok = op_mul(M, M) == poly_in_op(L, curve)
    return PairCheck(True, curve, ok, None if ok else "M^2 != f(L)")


def make_pair(L: DiffOp, M: DiffOp, provenance: object = "user") -> CommutingPair:
    check = verify_pair(L, M)
    if not check.ok:
        raise CurveError(check.error or "pair failed verification")
    return CommutingPair(L, M, check.curve, rank_of(L, M), provenance)
