"""Exact linear algebra over Q (and Q(sqrt d)).

The nullspace solver works on sparse integer rows and keeps them primitive
(content divided out) after every elimination step, i.e. fraction-free
elimination; it maintains a reduced row echelon form incrementally.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Dict, List, Optional, Sequence

SparseRow = Dict[int, int]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integer_row(row: Dict[int, Fraction]) -> SparseRow:
    """Scale a rational sparse row to a primitive integer row."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    return _primitive(out)


def _primitive(row: SparseRow) -> SparseRow:
    if not row:
        return row
    g = reduce(gcd, row.values())
    if g < 0:
        g = -g
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


class EchelonBasis:
    """Incrementally maintained reduced row echelon form of integer rows.

    The pivot of every row is its smallest column index, and every pivot
    column is zero in all other rows, so the result is the unique RREF of
    the row space (up to row scaling).
    """

    def __init__(self):
        self.rows: Dict[int, SparseRow] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: SparseRow) -> SparseRow:
        row = dict(row)
        for c in sorted(k for k in row if k in self.rows):
            v = row.get(c)
            if not v:
                continue
            prow = self.rows[c]
            p = prow[c]
            g = gcd(p, v)
            mp, mv = p // g, v // g
            new = {k: val * mp for k, val in row.items()}
            for k, val in prow.items():
                s = new.get(k, 0) - mv * val
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def add(self, row: SparseRow) -> bool:
        """Insert a row; returns True when it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        piv = min(row)
        if row[piv] < 0:
            row = {k: -v for k, v in row.items()}
        for c, other in list(self.rows.items()):
            v = other.get(piv)
            if not v:
                continue
            p = row[piv]
            g = gcd(p, v)
            mp, mv = p // g, v // g
            new = {k: val * mp for k, val in other.items()}
            for k, val in row.items():
                s = new.get(k, 0) - mv * val
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            new = _primitive(new)
            if new[c] < 0:
                new = {k: -val for k, val in new.items()}
            self.rows[c] = new
        self.rows[piv] = row
        return True

    def nullspace(self, ncols: int) -> List[Dict[int, Fraction]]:
        """Basis of the solution space, one vector per free column.

        The vector for free column ``f`` has a 1 at ``f`` and support only on
        pivot columns smaller than ``f``.
        """
        by_col: Dict[int, List[int]] = {}
        for piv, row in self.rows.items():
            for k in row:
                if k != piv:
                    by_col.setdefault(k, []).append(piv)
        basis = []
        for f in range(ncols):
            if f in self.rows:
                continue
            vec = {f: Fraction(1)}
            for piv in by_col.get(f, ()):
                row = self.rows[piv]
                vec[piv] = Fraction(-row[f], row[piv])
            basis.append(vec)
        return basis


def nullspace(rows: Sequence[Dict[int, Fraction]], ncols: int) -> List[Dict[int, Fraction]]:
    ech = EchelonBasis()
    for r in rows:
        ech.add(integer_row(r))
    return ech.nullspace(ncols)


# ---------------------------------------------------------------------------
# dense helpers


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def charpoly_berkowitz(A) -> List:
    """Division-free characteristic polynomial ``det(mu I - A)``.

    Returns coefficients from the leading ``1`` down to the constant term.
    """
    n = len(A)
    if n == 0:
        return [1]
    # Berkowitz: build Toeplitz columns for the principal submatrices
    vect = [1, -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]          # row vector
        C = [A[i][r] for i in range(r)]          # column vector
        Asub = [row[:r] for row in A[:r]]
        a = A[r][r]
        col = [1, -a]
        Ak_C = C
        for _ in range(r):
            col.append(-sum(R[i] * Ak_C[i] for i in range(r)))
            Ak_C = [sum(Asub[i][j] * Ak_C[j] for j in range(r)) for i in range(r)]
        # multiply lower-triangular Toeplitz(col) of size (r+2) x (r+1) with vect
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i + 1, r + 1)):
                s += col[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def charpoly_faddeev_leverrier(A) -> List:
    """Characteristic polynomial by the Faddeev–LeVerrier recursion (needs division)."""
    n = len(A)
    coeffs = [Fraction(1)]
    Mk = [[Fraction(0)] * n for _ in range(n)]
    I = identity(n, Fraction(1))
    c = Fraction(1)
    for k in range(1, n + 1):
        Mk = [[x + c * I[i][j] for j, x in enumerate(row)] for i, row in enumerate(mat_mul(A, Mk))]
        AM = mat_mul(A, Mk)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def det_bareiss(A):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = Fraction(M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev
                M[i][j] = v.numerator if v.denominator == 1 else v
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A) -> int:
    """Rank over the field the entries live in (Fraction or QuadElem)."""
    M = [[v if isinstance(v, QuadElem) else Fraction(v) for v in row] for row in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rk = 0
    for c in range(cols):
        piv = next((i for i in range(rk, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        p = M[rk][c]
        for i in range(rows):
            if i != rk and M[i][c] != 0:
                f = M[i][c] / p
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        rk += 1
        if rk == rows:
            break
    return rk


def rational_sqrt(q) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None when irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadElem:
    """``u + v*sqrt(d)`` with rational ``u, v`` and a fixed non-square ``d``."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u, v, d):
        self.u, self.v, self.d = Fraction(u), Fraction(v), Fraction(d)

    def _lift(self, o):
        if isinstance(o, QuadElem):
            return o
        return QuadElem(o, 0, self.d)

    def __add__(self, o):
        o = self._lift(o)
        return QuadElem(self.u + o.u, self.v + o.v, self.d)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return QuadElem(self.u - o.u, self.v - o.v, self.d)

    def __rsub__(self, o):
        return self._lift(o) - self

    def __neg__(self):
        return QuadElem(-self.u, -self.v, self.d)

    def __mul__(self, o):
        o = self._lift(o)
        return QuadElem(self.u * o.u + self.d * self.v * o.v, self.u * o.v + self.v * o.u, self.d)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        norm = o.u * o.u - self.d * o.v * o.v
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        conj = QuadElem(o.u / norm, -o.v / norm, self.d)
        return self * conj

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def __eq__(self, o):
        o = self._lift(o)
        return self.u == o.u and self.v == o.v

    def __ne__(self, o):
        return not self == o

    def __hash__(self):
        return hash((self.u, self.v, self.d))

    def __repr__(self):
        return f"{self.u} + {self.v}*sqrt({self.d})"
