"""Self-adjoint order-4 operators ``(D^2 + V)^2 + W`` and the rank-2 relation.

The relation checked here ties ``V``, ``W`` and a monic ``Q(x, lambda)`` of
degree ``g`` in ``lambda`` to a hyperelliptic right-hand side:

    (lambda - W) Q^2 - V Q_x^2 + Q_xx^2/4 - Q_x Q_xxx/2
        + Q (V_x Q_x + 2 V Q_xx + Q_xxxx/2)  =  lambda^(2g+1) + ... + a_0

It is evaluated in the polynomial ring over ``(x, lambda, params)`` with
``lambda`` carried as an extra parameter.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .diffop import DiffOp, formal_adjoint, op_mul
from .exact_core import CoefPoly, ParamSet
from .spectral import HyperellipticCurve


class SelfAdjointError(ValueError):
    pass


@dataclass(frozen=True)
class VW:
    V: CoefPoly
    W: CoefPoly

    def operator(self) -> DiffOp:
        ps = self.V.params.union(self.W.params)
        V, W = self.V.with_params(ps), self.W.with_params(ps)
        inner = DiffOp.D(2, ps) + DiffOp.mult(V, ps)
        return op_mul(inner, inner) + DiffOp.mult(W, ps)


@dataclass(frozen=True)
class QPoly:
    """``Q = lambda^g + q_{g-1} lambda^(g-1) + ... + q_0``; ``coeffs = (q_0, ..., q_{g-1})``."""

    coeffs: Tuple[CoefPoly, ...]

    @property
    def genus(self) -> int:
        return len(self.coeffs)

    def __str__(self):
        parts = [f"lambda^{self.genus}" if self.genus > 1 else "lambda"]
        for k in range(self.genus - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                mon = "" if k == 0 else ("*lambda" if k == 1 else f"*lambda^{k}")
                parts.append(f"({c}){mon}")
        return " + ".join(parts)


def decompose_selfadjoint4(L: DiffOp) -> VW:
    """Recover ``V = c_2/2`` and ``W = c_0 - V'' - V^2`` from ``L = D^4 + c_2 D^2 + c_1 D + c_0``."""
    if L.order != 4:
        raise SelfAdjointError(f"expected an order-4 operator, got order {L.order}")
    if L.lead() != 1:
        raise SelfAdjointError("operator is not monic")
    if not L.coeff(3).is_zero():
        raise SelfAdjointError("coefficient of D^3 is nonzero")
    c2, c1, c0 = L.coeff(2), L.coeff(1), L.coeff(0)
    if c1 != c2.dx():
        raise SelfAdjointError("c_1 != c_2' : not of the form (D^2 + V)^2 + W")
    V = c2.scale(Fraction(1, 2))
    W = c0 - V.dx(2) - V * V
    return VW(V, W)


def is_selfadjoint(L: DiffOp) -> bool:
    return formal_adjoint(L) == L


def _lam_name(ps: ParamSet) -> str:
    name = "lambda"
    while name in ps:
        name = "_" + name
    return name


@dataclass(frozen=True)
class RelationCheck:
    ok: bool
    mismatch_degree: Optional[int] = None
    lhs: Optional[CoefPoly] = None

    def __bool__(self):
        return self.ok


def _common(*polys) -> ParamSet:
    ps = ParamSet()
    for p in polys:
        ps = ps.union(p.params)
    return ps


def mironov_lhs(vw: VW, q: QPoly, lam_name: str, ps: ParamSet) -> CoefPoly:
    """Left side of the relation as a polynomial in ``x``, ``lambda`` and the parameters."""
    V, W = vw.V.with_params(ps), vw.W.with_params(ps)
    lam = CoefPoly.param(lam_name, ps)
    Q = lam ** q.genus
    for k, c in enumerate(q.coeffs):
        Q = Q + c.with_params(ps) * lam ** k
    Q1, Q2, Q3, Q4 = Q.dx(1), Q.dx(2), Q.dx(3), Q.dx(4)
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    return ((lam - W) * Q * Q - V * Q1 * Q1 + (Q2 * Q2).scale(quarter)
            - (Q1 * Q3).scale(half) + Q * (V.dx() * Q1 + (V * Q2).scale(2) + Q4.scale(half)))


def _lambda_coeffs(p: CoefPoly, lam_name: str):
    idx = p.params.index(lam_name) + 1
    rest = ParamSet(tuple(n for n in p.params.names if n != lam_name))
    out = {}
    for m, c in p.terms.items():
        k = m[idx]
        out.setdefault(k, {})[m[:idx] + m[idx + 1:]] = c
    return {k: CoefPoly(rest, t) for k, t in out.items()}, rest


def verify_mironov_relation(vw: VW, q: QPoly, curve: HyperellipticCurve) -> RelationCheck:
    """Exact check of the relation; on failure reports the highest mismatching lambda-degree."""
    if q.genus != curve.genus:
        raise ValueError(f"Q has genus {q.genus} but the curve has genus {curve.genus}")
    base = _common(vw.V, vw.W, *q.coeffs, *curve.coeffs)
    lam = _lam_name(base)
    ps = ParamSet(base.names + (lam,))
    lhs = mironov_lhs(vw, q, lam, ps)
    rhs = CoefPoly.param(lam, ps) ** curve.degree
    for k, a in enumerate(curve.coeffs):
        rhs = rhs + a.with_params(ps) * CoefPoly.param(lam, ps) ** k
    diff = lhs - rhs
    if diff.is_zero():
        return RelationCheck(True, None, lhs)
    by_deg, _ = _lambda_coeffs(diff, lam)
    return RelationCheck(False, max(by_deg), lhs)


def solve_mironov_g1(vw: VW) -> Tuple[QPoly, HyperellipticCurve]:
    """Solve the relation for ``g = 1``, ``Q = lambda - gamma(x)``.

    The ``lambda^2`` coefficient is ``-2 gamma - W``; writing it as the
    unknown constant ``a_2`` gives ``gamma = -(W + a_2)/2``.  Constancy of the
    ``lambda^1`` coefficient is linear in ``a_2`` whenever ``W`` depends on
    ``x`` and fixes it; for constant ``W`` the choice ``gamma = 0`` is taken.
    The remaining coefficients must then be x-free.
    """
    base = _common(vw.V, vw.W)
    lam = _lam_name(base)
    t = "_a2"
    while t in base or t == lam:
        t = "_" + t
    ps = ParamSet(base.names + (lam, t))
    W = vw.W.with_params(ps)
    gamma = (W + CoefPoly.param(t, ps)).scale(Fraction(-1, 2))
    lhs = mironov_lhs(vw, QPoly((-gamma,)), lam, ps)
    by_lam, rest = _lambda_coeffs(lhs, lam)
    c1 = by_lam.get(1, CoefPoly.const(0, rest))
    # split the lambda^1 coefficient into (x^k coefficient) = u_k * a2 + w_k
    t_idx = rest.index(t) + 1
    tvalue = None
    for k, xk in sorted(c1.x_coeffs().items()):
        if k == 0:
            continue
        lin = {}
        const = {}
        for m, c in xk.terms.items():
            if m[t_idx] > 1:
                raise SelfAdjointError("unexpected nonlinear dependence on a_2")
            target = lin if m[t_idx] == 1 else const
            target[m[:t_idx] + (0,) + m[t_idx + 1:]] = c
        u, w = CoefPoly(rest, lin), CoefPoly(rest, const)
        if u.is_zero():
            if not w.is_zero():
                raise SelfAdjointError(f"lambda^1 coefficient has x^{k} part {w} independent of a_2")
            continue
        cand = (-w).divexact(u)
        if cand is None:
            raise SelfAdjointError(f"a_2 = {-w}/({u}) is not a polynomial in the parameters")
        if tvalue is None:
            tvalue = cand
        elif tvalue != cand:
            raise SelfAdjointError("inconsistent conditions on a_2")
    if tvalue is None:
        tvalue = (-W.subst({t: 0, lam: 0})).with_params(rest)
        if tvalue.deg_x() > 0:
            raise SelfAdjointError("W depends on x but no condition fixed a_2")
    tval = tvalue.subst({t: 0})  # drops the unknown from the ring; value lives over `base`
    coeffs = []
    for k in range(3):
        c = by_lam.get(k, CoefPoly.const(0, rest)).subst({t: tval})
        if c.is_constant() is None:
            raise SelfAdjointError(f"no polynomial solution: lambda^{k} coefficient {c} depends on x")
        coeffs.append(c)
    if by_lam.get(3) != 1:
        raise SelfAdjointError("lambda^3 coefficient is not 1")
    gamma_val = gamma.subst({lam: 0, t: tval})
    q = QPoly((-gamma_val,))
    curve = HyperellipticCurve(1, tuple(coeffs))
    if not verify_mironov_relation(vw, q, curve):
        raise SelfAdjointError("internal: solved relation failed verification")
    return q, curve
