"""Differential operators with polynomial coefficients (the Weyl algebra).

An operator is stored in normal form ``sum_i c_i(x) D^i`` with the
coefficient to the left of the derivative.  Products use the Leibniz rule

    f D^i * g D^j = sum_k C(i, k) f g^(k) D^(i+j-k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

from .exact_core import EMPTY, CoefPoly, ParamSet, ParamSetMismatch, _mul_terms, _norm

#: order of the zero operator
ZERO_ORDER = -math.inf

_BINOM = [[1]]


def binom(n: int, k: int) -> int:
    """Binomial coefficient from a table extended on demand."""
    while len(_BINOM) <= n:
        prev = _BINOM[-1]
        _BINOM.append([1] + [prev[i] + prev[i + 1] for i in range(len(prev) - 1)] + [1])
    return _BINOM[n][k]


binom(64, 0)


class DiffOp:
    """Normal-form operator ``sum c_i D^i`` with :class:`CoefPoly` coefficients."""

    __slots__ = ("params", "coeffs")

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None, params: Optional[ParamSet] = None):
        coeffs = dict(coeffs or {})
        if params is None:
            params = EMPTY
            for c in coeffs.values():
                if isinstance(c, CoefPoly) and c.params.names:
                    params = params.union(c.params) if params != c.params else params
        self.params = params
        clean: Dict[int, CoefPoly] = {}
        for i, c in coeffs.items():
            if i < 0:
                raise ValueError("negative derivative order")
            if not isinstance(c, CoefPoly):
                c = CoefPoly.const(c, params)
            elif c.params != params:
                c = c.with_params(params)
            if c:
                clean[int(i)] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, params: ParamSet, coeffs: Dict[int, CoefPoly]) -> "DiffOp":
        obj = cls.__new__(cls)
        obj.params = params
        obj.coeffs = coeffs
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, params: ParamSet = EMPTY) -> "DiffOp":
        return cls._raw(params, {})

    @classmethod
    def identity(cls, params: ParamSet = EMPTY) -> "DiffOp":
        return cls._raw(params, {0: CoefPoly.const(1, params)})

    @classmethod
    def D(cls, power: int = 1, params: ParamSet = EMPTY) -> "DiffOp":
        return cls._raw(params, {power: CoefPoly.const(1, params)})

    @classmethod
    def mult(cls, poly, params: Optional[ParamSet] = None) -> "DiffOp":
        """Multiplication operator by a polynomial."""
        if not isinstance(poly, CoefPoly):
            poly = CoefPoly.const(poly, params or EMPTY)
        return cls({0: poly}, params or poly.params)

    @classmethod
    def X(cls, power: int = 1, params: ParamSet = EMPTY) -> "DiffOp":
        return cls._raw(params, {0: CoefPoly.x(power, params)})

    # basic queries -------------------------------------------------------------
    @property
    def order(self):
        """Highest derivative order, or ``ZERO_ORDER`` (-inf) for the zero operator."""
        return max(self.coeffs) if self.coeffs else ZERO_ORDER

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i: int) -> CoefPoly:
        c = self.coeffs.get(i)
        return c if c is not None else CoefPoly.const(0, self.params)

    def lead(self) -> CoefPoly:
        if not self.coeffs:
            raise ValueError("the zero operator has no leading coefficient")
        return self.coeffs[self.order]

    def max_deg_x(self) -> int:
        return max((c.deg_x() for c in self.coeffs.values()), default=-1)

    def is_numeric(self) -> bool:
        return all(c.is_numeric() for c in self.coeffs.values())

    def used_params(self):
        used = set()
        for c in self.coeffs.values():
            used.update(c.used_params())
        return tuple(n for n in self.params.names if n in used)

    # ring structure ---------------------------------------------------------------
    def _coerce(self, other) -> "DiffOp":
        if isinstance(other, DiffOp):
            if other.params == self.params:
                return other
            if not other.params.names:
                return other.with_params(self.params)
            raise ParamSetMismatch(self.params, other.params)
        return DiffOp.mult(CoefPoly.const(other, self.params) if not isinstance(other, CoefPoly)
                           else other.with_params(self.params), self.params)

    def _lift(self, other) -> "DiffOp":
        if isinstance(other, DiffOp) and other.params != self.params and not self.params.names:
            return self.with_params(other.params)
        return self

    def with_params(self, params: ParamSet) -> "DiffOp":
        return DiffOp._raw(params, {i: c.with_params(params) for i, c in self.coeffs.items()})

    def __add__(self, other):
        a = self._lift(other)
        b = a._coerce(other)
        out = dict(a.coeffs)
        for i, c in b.coeffs.items():
            s = out[i] + c if i in out else c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
        return DiffOp._raw(a.params, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp._raw(self.params, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other) if not isinstance(other, DiffOp) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffOp":
        """Left multiplication by a polynomial or rational ``c``."""
        if isinstance(c, CoefPoly):
            if c.params != self.params:
                if not c.params.names:
                    c = c.with_params(self.params)
                elif not self.params.names:
                    return self.with_params(c.params).scale(c)
                else:
                    raise ParamSetMismatch(self.params, c.params)
            out = {i: v * c for i, v in self.coeffs.items()}
        else:
            out = {i: v.scale(c) for i, v in self.coeffs.items()}
        return DiffOp._raw(self.params, {i: v for i, v in out.items() if v})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return op_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        return op_pow(self, k)

    # comparison / display ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, DiffOp):
            if self.params == other.params:
                return self.coeffs == other.coeffs
            try:
                a = self._lift(other)
                return a.coeffs == a._coerce(other).coeffs
            except ParamSetMismatch:
                return False
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.params, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"DiffOp({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs, reverse=True):
            c = self.coeffs[i]
            d = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            if not d:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(d)
            else:
                parts.append(f"({c})*{d}")
        return " + ".join(parts)


def _check(A: DiffOp, B: DiffOp):
    if A.params == B.params:
        return A, B
    if not B.params.names:
        return A, B.with_params(A.params)
    if not A.params.names:
        return A.with_params(B.params), B
    raise ParamSetMismatch(A.params, B.params)


def op_add(A: DiffOp, B: DiffOp) -> DiffOp:
    A, B = _check(A, B)
    return A + B


def op_scale(A: DiffOp, c) -> DiffOp:
    return A.scale(c)


def op_mul(A: DiffOp, B: DiffOp) -> DiffOp:
    """Normal-ordered product ``A * B``."""
    A, B = _check(A, B)
    params = A.params
    if not A.coeffs or not B.coeffs:
        return DiffOp.zero(params)
    acc: Dict[int, Dict] = {}
    max_i = max(A.coeffs)
    # derivatives of B's coefficients up to the highest D-power in A
    derivs = {}
    for j, g in B.coeffs.items():
        ds = [g.terms]
        t = g.terms
        for _ in range(max_i):
            nt = {}
            for m, c in t.items():
                e = m[0]
                if e:
                    nt[(e - 1,) + m[1:]] = c * e
            if not nt:
                break
            ds.append(nt)
            t = nt
        derivs[j] = ds
    for i, f in A.coeffs.items():
        ft = f.terms
        for j, ds in derivs.items():
            for k in range(min(i, len(ds) - 1) + 1):
                prod = _mul_terms(ft, ds[k])
                if not prod:
                    continue
                bc = binom(i, k)
                bucket = acc.setdefault(i + j - k, {})
                get = bucket.get
                for m, c in prod.items():
                    bucket[m] = get(m, 0) + bc * c
    out = {}
    for order, terms in acc.items():
        clean = {m: _norm(c) for m, c in terms.items() if c}
        if clean:
            out[order] = CoefPoly._raw(params, clean)
    return DiffOp._raw(params, out)


def op_commutator(A: DiffOp, B: DiffOp) -> DiffOp:
    return op_mul(A, B) - op_mul(B, A)


def op_pow(A: DiffOp, k: int) -> DiffOp:
    if k < 0:
        raise ValueError("negative power of a differential operator")
    result = DiffOp.identity(A.params)
    for _ in range(k):
        result = op_mul(result, A)
    return result


def formal_adjoint(A: DiffOp) -> DiffOp:
    """``sum c_i D^i  ->  sum (-1)^i D^i o c_i``."""
    result = DiffOp.zero(A.params)
    for i, c in A.coeffs.items():
        term = op_mul(DiffOp.D(i, A.params), DiffOp._raw(A.params, {0: c}))
        result = result + (term if i % 2 == 0 else -term)
    return result


@dataclass(frozen=True)
class CanonicalReport:
    is_monic: bool
    subleading_zero: bool

    @property
    def is_canonical(self) -> bool:
        return self.is_monic and self.subleading_zero


def canonical_check(A: DiffOp) -> CanonicalReport:
    if A.is_zero():
        raise ValueError("canonical form is undefined for the zero operator")
    n = A.order
    return CanonicalReport(
        is_monic=A.lead() == 1,
        subleading_zero=n == 0 or A.coeff(n - 1).is_zero(),
    )


def weyl_automorphism(A: DiffOp) -> DiffOp:
    """Apply the Weyl-algebra automorphism ``x -> D``, ``D -> -x``.

    Each monomial ``x^e D^i`` goes to ``D^e (-x)^i``, evaluated with
    :func:`op_mul`; parameters are untouched.
    """
    ps = A.params
    result = DiffOp.zero(ps)
    for i, c in A.coeffs.items():
        right = DiffOp.X(i, ps)
        if i % 2:
            right = -right
        for mono, v in c.terms.items():
            e = mono[0]
            pcoef = CoefPoly._raw(ps, {(0,) + mono[1:]: v})
            result = result + op_mul(DiffOp.D(e, ps), right).scale(pcoef)
    return result


def brute_force_mul(A: DiffOp, B: DiffOp) -> DiffOp:
    """Reference product by repeated use of ``D x = x D + 1`` on words.

    Every monomial is expanded into a word over {x, D} with the parameter
    part carried as a scalar; the word is normal-ordered by swapping the
    leftmost ``D x`` pair.  Exponential in the number of swaps, so only for
    tiny operators in tests.
    """
    A, B = _check(A, B)
    ps = A.params
    from collections import Counter

    pending = Counter()
    for i, f in A.coeffs.items():
        for mf, cf in f.terms.items():
            for j, g in B.coeffs.items():
                for mg, cg in g.terms.items():
                    word = "x" * mf[0] + "D" * i + "x" * mg[0] + "D" * j
                    pm = tuple(a + b for a, b in zip(mf[1:], mg[1:]))
                    pending[(word, pm)] += cf * cg
    done: Dict[int, Dict] = {}
    while pending:
        (word, pm), c = pending.popitem()
        if not c:
            continue
        pos = word.find("Dx")
        if pos < 0:
            e = word.count("x")
            order = word.count("D")
            bucket = done.setdefault(order, {})
            key = (e,) + pm
            bucket[key] = bucket.get(key, 0) + c
            continue
        pending[(word[:pos] + "xD" + word[pos + 2:], pm)] += c
        pending[(word[:pos] + word[pos + 2:], pm)] += c
    return DiffOp({i: CoefPoly(ps, t) for i, t in done.items()}, ps)
