"""Exact rationals and sparse polynomials in ``x`` plus named parameters.

Every coefficient in the package lives in ``Q[x, p_1, ..., p_k]`` where the
``p_i`` are commuting symbolic constants (``alpha``, ``a``, ``b`` ...).  A
polynomial is a dict from exponent tuples ``(e_x, e_1, ..., e_k)`` to exact
rationals; integral values are stored as ``int`` and everything else as
``fractions.Fraction``, which keeps the common all-integer case fast.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Rat = Fraction
Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


class ParamSetMismatch(ValueError):
    """Raised when two values live in rings with different parameter sets."""

    def __init__(self, left: "ParamSet", right: "ParamSet"):
        super().__init__(
            f"incompatible parameter sets {list(left.names)} and {list(right.names)}"
        )
        self.left = left
        self.right = right


def as_rat(value) -> Scalar:
    """Coerce ``value`` to an exact scalar (int when integral)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_rat(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return as_rat(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _norm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


@dataclass(frozen=True)
class ParamSet:
    """Ordered, duplicate-free tuple of parameter names (never ``x``)."""

    names: Tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {list(names)}")
        for n in names:
            if not isinstance(n, str) or not n:
                raise ValueError("parameter names must be nonempty strings")
            if n == "x":
                raise ValueError("'x' is reserved for the independent variable")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        return self.names.index(name)

    def union(self, other: "ParamSet") -> "ParamSet":
        return ParamSet(self.names + tuple(n for n in other.names if n not in self.names))


EMPTY = ParamSet()


def _embed_terms(terms: Mapping[Monomial, Scalar], src: ParamSet, dst: ParamSet):
    if src == dst:
        return dict(terms)
    pos = [dst.index(n) for n in src.names]
    width = len(dst) + 1
    out = {}
    for mono, c in terms.items():
        key = [0] * width
        key[0] = mono[0]
        for i, p in enumerate(pos):
            key[p + 1] = mono[i + 1]
        out[tuple(key)] = c
    return out


def _mul_terms(a: Mapping[Monomial, Scalar], b: Mapping[Monomial, Scalar]):
    out: Dict[Monomial, Scalar] = {}
    get = out.get
    if a and len(next(iter(a))) == 1:
        for (ea,), ca in a.items():
            for (eb,), cb in b.items():
                k = (ea + eb,)
                out[k] = get(k, 0) + ca * cb
    else:
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple([i + j for i, j in zip(ka, kb)])
                out[k] = get(k, 0) + ca * cb
    return {k: _norm(v) for k, v in out.items() if v}


class CoefPoly:
    """Exact polynomial in ``x`` and the parameters of a :class:`ParamSet`.

    Values are immutable; all arithmetic returns new objects.  Python ints and
    ``Fraction`` objects are accepted wherever a polynomial is expected, and a
    polynomial with an empty parameter set embeds into any other ring.
    """

    __slots__ = ("params", "terms", "_hash")

    def __init__(self, params: ParamSet = EMPTY, terms: Optional[Mapping] = None):
        if not isinstance(params, ParamSet):
            params = ParamSet(tuple(params))
        self.params = params
        width = len(params) + 1
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != width or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for parameters {list(params.names)}")
            c = as_rat(c)
            if c:
                clean[mono] = c
        self.terms: Dict[Monomial, Scalar] = clean
        self._hash = None

    @classmethod
    def _raw(cls, params: ParamSet, terms: Dict[Monomial, Scalar]) -> "CoefPoly":
        obj = cls.__new__(cls)
        obj.params = params
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c, params: ParamSet = EMPTY) -> "CoefPoly":
        c = as_rat(c)
        return cls._raw(params, {(0,) * (len(params) + 1): c} if c else {})

    @classmethod
    def x(cls, power: int = 1, params: ParamSet = EMPTY) -> "CoefPoly":
        return cls._raw(params, {(power,) + (0,) * len(params): 1})

    @classmethod
    def param(cls, name: str, params: Optional[ParamSet] = None) -> "CoefPoly":
        params = params if params is not None else ParamSet((name,))
        key = [0] * (len(params) + 1)
        key[params.index(name) + 1] = 1
        return cls._raw(params, {tuple(key): 1})

    @classmethod
    def from_univariate(cls, coeffs: Iterable, params: ParamSet = EMPTY) -> "CoefPoly":
        """Build ``sum coeffs[k] * x**k``."""
        pad = (0,) * len(params)
        terms = {}
        for k, c in enumerate(coeffs):
            c = as_rat(c)
            if c:
                terms[(k,) + pad] = c
        return cls._raw(params, terms)

    # coercion -------------------------------------------------------------
    def _coerce(self, other) -> Tuple[Dict, Dict, ParamSet]:
        if isinstance(other, CoefPoly):
            if other.params == self.params:
                return self.terms, other.terms, self.params
            if not other.params.names:
                return self.terms, _embed_terms(other.terms, other.params, self.params), self.params
            if not self.params.names:
                return _embed_terms(self.terms, self.params, other.params), other.terms, other.params
            raise ParamSetMismatch(self.params, other.params)
        c = as_rat(other)
        return self.terms, ({(0,) * (len(self.params) + 1): c} if c else {}), self.params

    def with_params(self, params: ParamSet) -> "CoefPoly":
        """Embed into a ring whose parameter set contains ours."""
        missing = [n for n in self.params.names if n not in params]
        if missing:
            raise ParamSetMismatch(self.params, params)
        return CoefPoly._raw(params, _embed_terms(self.terms, self.params, params))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        a, b, ps = self._coerce(other)
        out = dict(a)
        for k, v in b.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return CoefPoly._raw(ps, out)

    __radd__ = __add__

    def __neg__(self):
        return CoefPoly._raw(self.params, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        a, b, ps = self._coerce(other)
        out = dict(a)
        for k, v in b.items():
            s = out.get(k, 0) - v
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return CoefPoly._raw(ps, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CoefPoly):
            return self.scale(other)
        a, b, ps = self._coerce(other)
        return CoefPoly._raw(ps, _mul_terms(a, b))

    __rmul__ = __mul__

    def scale(self, c) -> "CoefPoly":
        c = as_rat(c)
        if not c:
            return CoefPoly._raw(self.params, {})
        return CoefPoly._raw(self.params, {k: _norm(v * c) for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "CoefPoly":
        if n < 0:
            raise ValueError("negative power")
        result = CoefPoly.const(1, self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def dx(self, times: int = 1) -> "CoefPoly":
        terms = self.terms
        for _ in range(times):
            out = {}
            for mono, c in terms.items():
                e = mono[0]
                if e:
                    out[(e - 1,) + mono[1:]] = c * e
            terms = out
        return CoefPoly._raw(self.params, terms)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def deg_x(self) -> int:
        """x-degree; ``-1`` for the zero polynomial."""
        return max((m[0] for m in self.terms), default=-1)

    def x_coeff(self, k: int) -> "CoefPoly":
        """Coefficient of ``x**k`` as a parameter-only polynomial."""
        return CoefPoly._raw(
            self.params, {(0,) + m[1:]: c for m, c in self.terms.items() if m[0] == k}
        )

    def x_coeffs(self) -> Dict[int, "CoefPoly"]:
        out: Dict[int, Dict] = {}
        for m, c in self.terms.items():
            out.setdefault(m[0], {})[(0,) + m[1:]] = c
        return {k: CoefPoly._raw(self.params, v) for k, v in out.items()}

    def is_constant(self) -> Optional["CoefPoly"]:
        """Return self if x-free, else None."""
        if any(m[0] for m in self.terms):
            return None
        return self

    def is_numeric(self) -> bool:
        return all(not any(m[1:]) for m in self.terms)

    def as_rational(self) -> Scalar:
        """The value of a polynomial with no x and no parameters."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            if not any(m):
                return c
        raise ValueError(f"{self} is not a rational constant")

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * (len(self.params) + 1), 0)

    def used_params(self) -> Tuple[str, ...]:
        return tuple(
            n for i, n in enumerate(self.params.names)
            if any(m[i + 1] for m in self.terms)
        )

    def sorted_terms(self):
        """Terms in the canonical graded-lex order (highest first)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    # substitution ----------------------------------------------------------
    def subst(self, bindings: Mapping[str, object]) -> "CoefPoly":
        """Replace parameters by rationals (or parameter-only polynomials).

        The bound names are removed from the parameter set.  Polynomial values
        must use parameters that remain in the result ring.
        """
        for name in bindings:
            if name not in self.params:
                raise KeyError(f"unknown parameter {name!r}; have {list(self.params.names)}")
        keep = ParamSet(tuple(n for n in self.params.names if n not in bindings))
        keep_idx = [i + 1 for i, n in enumerate(self.params.names) if n not in bindings]
        bound = [(i + 1, bindings[n]) for i, n in enumerate(self.params.names) if n in bindings]
        numeric = all(not isinstance(v, CoefPoly) for _, v in bound)
        if numeric:
            vals = [(i, as_rat(v)) for i, v in bound]
            out: Dict[Monomial, Scalar] = {}
            for m, c in self.terms.items():
                for i, v in vals:
                    if m[i]:
                        c = c * v ** m[i]
                        if not c:
                            break
                if c:
                    k = (m[0],) + tuple(m[i] for i in keep_idx)
                    s = out.get(k, 0) + c
                    if s:
                        out[k] = _norm(s)
                    else:
                        del out[k]
            return CoefPoly._raw(keep, out)
        result = CoefPoly.const(0, keep)
        polys = [(i, v.with_params(keep) if isinstance(v, CoefPoly) else CoefPoly.const(v, keep))
                 for i, v in bound]
        for m, c in self.terms.items():
            term = CoefPoly._raw(keep, {(m[0],) + tuple(m[i] for i in keep_idx): c})
            for i, p in polys:
                if m[i]:
                    term = term * p ** m[i]
            result = result + term
        return result

    def eval_x(self, value) -> "CoefPoly":
        """Substitute a rational for x, leaving a parameter-only polynomial."""
        value = as_rat(value)
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            k = (0,) + m[1:]
            s = out.get(k, 0) + c * value ** m[0]
            if s:
                out[k] = _norm(s)
            else:
                out.pop(k, None)
        return CoefPoly._raw(self.params, out)

    # exact division ----------------------------------------------------------
    def divexact(self, other: "CoefPoly") -> Optional["CoefPoly"]:
        """Return ``q`` with ``q * other == self`` or None when no such polynomial exists."""
        if not isinstance(other, CoefPoly):
            other = CoefPoly.const(other, self.params)
        num, den, ps = self._coerce(other)
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        key = lambda m: (sum(m), m)
        lead_m = max(den, key=key)
        lead_c = den[lead_m]
        rem = dict(num)
        quot: Dict[Monomial, Scalar] = {}
        while rem:
            m = max(rem, key=key)
            diff = tuple(a - b for a, b in zip(m, lead_m))
            if any(d < 0 for d in diff):
                return None
            c = _norm(Fraction(rem[m]) / lead_c)
            quot[diff] = c
            for dm, dc in den.items():
                k = tuple(a + b for a, b in zip(diff, dm))
                s = rem.get(k, 0) - c * dc
                if s:
                    rem[k] = _norm(s)
                else:
                    rem.pop(k, None)
        return CoefPoly._raw(ps, quot)

    # comparison / display -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CoefPoly):
            if self.params == other.params:
                return self.terms == other.terms
            try:
                a, b, _ = self._coerce(other)
            except ParamSetMismatch:
                return False
            return a == b
        try:
            a, b, _ = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a == b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"CoefPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = []
            if mono[0]:
                factors.append("x" if mono[0] == 1 else f"x^{mono[0]}")
            for name, e in zip(self.params.names, mono[1:]):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_arith(p, q, kind: str) -> CoefPoly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    if kind == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {kind!r}")


def poly_dx(p: CoefPoly) -> CoefPoly:
    return p.dx()


def poly_subst(p: CoefPoly, bindings: Mapping[str, object]) -> CoefPoly:
    return p.subst(bindings)


def poly_is_constant(p: CoefPoly) -> Optional[CoefPoly]:
    return p.is_constant()
