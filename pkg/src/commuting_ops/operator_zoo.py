"""Explicit operator families and Chebyshev polynomial machinery.

Operators are assembled by algebra (inner operator squared with
:func:`op_mul`) so that tabulated examples can be compared against them as
independent data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple, Optional, Union

from .diffop import DiffOp, op_mul
from .exact_core import EMPTY, CoefPoly, ParamSet, as_rat

FAMILIES = (
    "dixmier_r2",
    "dixmier_r3",
    "mironov_r2",
    "mironov_r3",
    "rank_2k",
    "rank_3k",
    "cheb_z",
    "cheb_canonical",
)

Value = Union[int, Fraction, str, CoefPoly]


@dataclass(frozen=True)
class ChebPoly:
    degree: int
    coeffs: tuple  # coeffs[k] multiplies z**k

    def as_poly(self, params: ParamSet = EMPTY) -> CoefPoly:
        return CoefPoly.from_univariate(self.coeffs, params)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc


_CHEB: List[List[int]] = [[1], [0, 1]]


def chebyshev(r: int) -> ChebPoly:
    """``T_r`` via ``T_r = 2z T_{r-1} - T_{r-2}``; ``T_{-r} = T_r``."""
    r = abs(r)
    while len(_CHEB) <= r:
        t1, t2 = _CHEB[-1], _CHEB[-2]
        nxt = [0] + [2 * c for c in t1]
        for i, c in enumerate(t2):
            nxt[i] -= c
        _CHEB.append(nxt)
    return ChebPoly(r, tuple(_CHEB[r]))


def compose_univariate(outer, inner) -> list:
    """Coefficients of ``outer(inner(z))`` for coefficient lists."""
    result = [0]
    for c in reversed(list(outer)):
        prod = [0] * (len(result) + len(inner) - 1)
        for i, a in enumerate(result):
            if a:
                for j, b in enumerate(inner):
                    prod[i + j] += a * b
        prod[0] += c
        result = prod
    while len(result) > 1 and result[-1] == 0:
        result.pop()
    return result


def cheb_nest_check(n: int, m: int) -> bool:
    """True iff ``T_n(T_m(z)) == T_{nm}(z)`` exactly."""
    lhs = compose_univariate(chebyshev(n).coeffs, chebyshev(m).coeffs)
    return tuple(lhs) == chebyshev(n * m).coeffs


def cheb_operator(r: int, var: str = "D", params: ParamSet = EMPTY) -> DiffOp:
    """``T_r`` evaluated at ``D`` (constant-coefficient operator) or at ``x``."""
    if r < 0:
        raise ValueError("cheb_operator needs r >= 0")
    coeffs = chebyshev(r).coeffs
    if var == "D":
        return DiffOp({i: c for i, c in enumerate(coeffs) if c}, params)
    if var == "x":
        return DiffOp({0: CoefPoly.from_univariate(coeffs, params)}, params)
    raise ValueError(f"var must be 'D' or 'x', got {var!r}")


@dataclass(frozen=True)
class FamilySpec:
    """Which family to build and with which constants.

    ``a``, ``b`` and ``alpha`` may be rationals, ``"p/q"`` strings, parameter
    names, or parameter-only :class:`CoefPoly` values.  ``a`` defaults to
    ``2**(1-|r|)`` (the monic normalisation), ``b`` to 0 and ``alpha`` to the
    symbol ``alpha``.
    """

    family: str
    r: int = 2
    g: int = 1
    k: int = 2
    a: Optional[Value] = None
    b: Optional[Value] = 0
    alpha: Optional[Value] = "alpha"

    def __post_init__(self):
        fam = self.family.replace("-", "_")
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.g < 1:
            raise ValueError("genus g must be >= 1")
        if fam in ("cheb_canonical",) and self.r < 1:
            raise ValueError("rank r must be >= 1")
        if fam == "cheb_z" and self.r == 0:
            raise ValueError("cheb_z needs a nonvanishing integer r")
        if fam == "rank_2k" and self.k < 2:
            raise ValueError("rank_2k needs k >= 2")
        if fam == "rank_3k" and self.k < 1:
            raise ValueError("rank_3k needs k >= 1")


class BuiltPair(NamedTuple):
    L: DiffOp
    M: Optional[DiffOp]


def _is_name(v) -> bool:
    if not isinstance(v, str):
        return False
    try:
        Fraction(v.strip())
        return False
    except ValueError:
        return True


def _paramset(*values) -> ParamSet:
    names: list = []
    for v in values:
        if _is_name(v):
            if v.strip() not in names:
                names.append(v.strip())
        elif isinstance(v, CoefPoly):
            if v.deg_x() > 0:
                raise ValueError("family constants must be x-free")
            for n in v.params.names:
                if n not in names:
                    names.append(n)
    return ParamSet(tuple(names))


def _value(v, ps: ParamSet) -> CoefPoly:
    if isinstance(v, CoefPoly):
        return v.with_params(ps)
    if _is_name(v):
        return CoefPoly.param(v.strip(), ps)
    return CoefPoly.const(as_rat(v), ps)


def _square_plus(inner: DiffOp, extra: DiffOp) -> DiffOp:
    return op_mul(inner, inner) + extra


def build(spec: FamilySpec) -> BuiltPair:
    """Construct ``L`` (and the explicit ``M`` for the Dixmier families)."""
    fam, g = spec.family, spec.g
    gg = g * (g + 1)
    if fam in ("cheb_z", "cheb_canonical"):
        r = spec.r
        a_raw = spec.a if spec.a is not None else Fraction(1, 2 ** (abs(r) - 1))
        b_raw = spec.b if spec.b is not None else 0
        ps = _paramset(a_raw, b_raw)
        a, b = _value(a_raw, ps), _value(b_raw, ps)
        if a.is_zero():
            raise ValueError("a must be nonzero")
        X = lambda e=1: DiffOp.X(e, ps)
        D = lambda e=1: DiffOp.D(e, ps)
        if fam == "cheb_z":
            T = cheb_operator(abs(r), "x", ps)
            inner = (op_mul(X(0) - X(2), D(2)) - op_mul(X(), D())
                     + T.scale(a) + DiffOp.mult(b, ps))
        else:
            T = cheb_operator(r, "D", ps)
            inner = (T.scale(a) - op_mul(X(2), D(2)) - op_mul(X(), D()).scale(3)
                     + X(2) + DiffOp.mult(b, ps))
        return BuiltPair(_square_plus(inner, -T.scale(a.scale(r * r * gg))), None)

    alpha_raw = spec.alpha if spec.alpha is not None else "alpha"
    ps = _paramset(alpha_raw)
    alpha = DiffOp.mult(_value(alpha_raw, ps), ps)
    X = lambda e=1: DiffOp.X(e, ps)
    D = lambda e=1: DiffOp.D(e, ps)

    if fam == "dixmier_r2":
        inner = D(2) + X(3) + alpha
        L = _square_plus(inner, X().scale(2))
        M = (op_mul(op_mul(inner, inner), inner) + op_mul(X(), D(2)).scale(3) + D().scale(3)
             + op_mul(X(), X(3) + alpha).scale(3))
        return BuiltPair(L, M)
    if fam == "dixmier_r3":
        inner = D(3) + X(2) + alpha
        L = _square_plus(inner, D().scale(2))
        M = (op_mul(op_mul(inner, inner), inner) + D(4).scale(3)
             + op_mul(X(2) + alpha, D()).scale(3) + X().scale(3))
        return BuiltPair(L, M)
    if fam == "mironov_r2":
        inner = D(2) + X(3) + alpha
        return BuiltPair(_square_plus(inner, X().scale(gg)), None)
    if fam == "mironov_r3":
        inner = D(3) + X(2) + alpha
        return BuiltPair(_square_plus(inner, D().scale(gg)), None)
    if fam == "rank_2k":
        k = spec.k
        inner = (D(2 * k) - op_mul(X(), D(k)).scale(2) - D(k - 1).scale(k) + D(3)
                 + X(2) + alpha)
        return BuiltPair(_square_plus(inner, D().scale(gg)), None)
    if fam == "rank_3k":
        k = spec.k
        inner = (D(3 * k) - op_mul(X(), D(2 * k)).scale(3) - D(2 * k - 1).scale(3 * k)
                 + op_mul(X(2), D(k)).scale(3) + op_mul(X(), D(k - 1)).scale(3 * k)
                 + D(2) - X(3) + alpha)
        if k >= 2:
            inner = inner + D(k - 2).scale(k * (k - 1))
        return BuiltPair(_square_plus(inner, -X().scale(gg)), None)
    raise AssertionError(fam)


def expected_order(spec: FamilySpec) -> int:
    """Order of ``L`` as stated for each family."""
    return {
        "dixmier_r2": 4, "dixmier_r3": 6, "mironov_r2": 4, "mironov_r3": 6,
        "rank_2k": 4 * spec.k, "rank_3k": 6 * spec.k,
        "cheb_z": 4, "cheb_canonical": 2 * spec.r if spec.r > 1 else 4,
    }[spec.family]


def companion_order(spec: FamilySpec) -> int:
    """Order of the companion ``M`` as stated for each family."""
    g = spec.g
    return {
        "dixmier_r2": 6, "dixmier_r3": 9, "mironov_r2": 4 * g + 2, "mironov_r3": 6 * g + 3,
        "rank_2k": 4 * spec.k * g + 2 * spec.k, "rank_3k": 6 * spec.k * g + 3 * spec.k,
        "cheb_z": 4 * g + 2,
        "cheb_canonical": (2 * g + 1) * spec.r if spec.r > 1 else 4 * g + 2,
    }[spec.family]
