"""Companion operators by exact linear algebra.

An ansatz ``M = sum_{i<=m, e<=B} c_{i,e} x^e D^i`` is substituted into
``[L, M] = 0``; every coefficient of every ``x^p D^q`` gives one linear
equation in the unknowns ``c_{i,e}``.  The equations are assembled
column-by-column (``[L, x^e D^i]`` for each monomial) and solved over Q.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .diffop import DiffOp, op_commutator, op_pow
from .exact_core import CoefPoly
from .linalg import EchelonBasis, integer_row, rational_sqrt

log = logging.getLogger(__name__)


class CentralizerError(RuntimeError):
    pass


@dataclass(frozen=True)
class AnsatzSpec:
    order: int
    degree: Optional[int] = None  # None -> heuristic initial bound
    cap: int = 64

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("ansatz order must be >= 1")
        if self.degree is not None and self.degree < 0:
            raise ValueError("degree bound must be >= 0")


@dataclass
class CentralizerBasis:
    elements: List[DiffOp]
    order: int
    degree: int
    attempts: List[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.elements)


def initial_degree(L: DiffOp, m: int) -> int:
    n = L.order
    return -(-m * max(L.max_deg_x(), 0) // n) + 4


def _solve_at(L: DiffOp, m: int, B: int) -> List[DiffOp]:
    ps = L.params
    cols = [(i, e) for i in range(m + 1) for e in range(B + 1)]
    # equation (D-power, x-power) -> sparse row over column indices
    eqs = {}
    for idx, (i, e) in enumerate(cols):
        mono = DiffOp._raw(ps, {i: CoefPoly.x(e, ps)})
        comm = op_commutator(L, mono)
        for q, c in comm.coeffs.items():
            for mono_x, v in c.terms.items():
                eqs.setdefault((q, mono_x[0]), {})[idx] = v
    ech = EchelonBasis()
    # highest D-power first keeps the system close to triangular
    for key in sorted(eqs, reverse=True):
        ech.add(integer_row(eqs[key]))
    out = []
    for vec in ech.nullspace(len(cols)):
        coeffs = {}
        for idx, v in vec.items():
            i, e = cols[idx]
            coeffs.setdefault(i, {})[(e,)] = v
        out.append(DiffOp({i: CoefPoly(ps, t) for i, t in coeffs.items()}, ps))
    return out


def solve_centralizer(L: DiffOp, spec: AnsatzSpec) -> CentralizerBasis:
    """Basis of ``{M : [L, M] = 0, order M <= m, deg_x coeffs <= B}``.

    The bound ``B`` starts at ``spec.degree`` (or the heuristic) and doubles
    while no element of exact order ``m`` appears, up to ``spec.cap``.
    """
    if L.is_zero():
        raise ValueError("L must be nonzero")
    if L.used_params():
        raise ValueError(
            f"instantiate all parameters before solving; L still uses {list(L.used_params())}"
        )
    if L.params.names:
        L = DiffOp({i: c.subst({n: 0 for n in c.params.names}) for i, c in L.coeffs.items()})
    m = spec.order
    B = spec.degree if spec.degree is not None else initial_degree(L, m)
    attempts = []
    while True:
        attempts.append(B)
        log.info("centralizer: order %d, degree bound %d", m, B)
        elements = _solve_at(L, m, B)
        for el in elements:
            if not op_commutator(L, el).is_zero():
                raise CentralizerError("solver returned an element that does not commute with L")
        if any(el.order == m for el in elements):
            return CentralizerBasis(elements, m, B, attempts)
        if B >= spec.cap:
            raise CentralizerError(
                f"no commuting operator of order {m} with coefficient degree <= {B} "
                f"(escalation cap {spec.cap} reached)"
            )
        B = min(2 * B, spec.cap) if B else 1


def _positive(p: CoefPoly) -> bool:
    c0 = p.constant_term()
    if c0:
        return c0 > 0
    return p.leading_term()[1] > 0


def normalize_companion(M: DiffOp, L: DiffOp) -> DiffOp:
    """Remove the ``C[L]`` part of ``M`` by a fixed scalar functional.

    For ``j`` from high to low, subtract ``c_j L^j`` so that the constant term
    of the ``D^{n j}`` coefficient vanishes (``n = order L``).
    """
    n = L.order
    for j in range(M.order // n, -1, -1):
        Lj = op_pow(L, j)
        target = M.coeff(n * j).constant_term()
        if not target:
            continue
        base = Lj.coeff(n * j).constant_term()
        if not base:
            raise CentralizerError(f"lead of L^{j} vanishes at x=0; functional undefined")
        M = M - Lj.scale(Fraction(target) / Fraction(base))
    return M


def select_M(basis: CentralizerBasis, L: DiffOp, m: Optional[int] = None) -> DiffOp:
    """Canonical companion of order ``m`` from a centralizer basis.

    1. pick the basis element of order ``m`` and scale it so that
       ``lead(M)^2 = lead(L)^(2g+1)`` with a positive leading coefficient;
    2. strip its ``C[L]`` part with :func:`normalize_companion`;
    3. complete the square: if ``M^2 = f(L) + h(L) M`` then ``M - h(L)/2``
       squares to a polynomial in ``L`` alone.
    """
    from .spectral import bc_reduce, eval_op_poly

    m = basis.order if m is None else m
    n = L.order
    if (2 * m) % n or ((2 * m) // n) % 2 == 0:
        raise ValueError(f"order {m} is not an odd multiple of order(L)/2 = {n}/2")
    candidates = [el for el in basis.elements if el.order == m]
    if not candidates:
        raise CentralizerError(f"no element of order {m} in the basis")
    M = candidates[-1]
    if L.params != M.params and not L.params.names:
        L = L.with_params(M.params)
    if M.params != L.params:
        M = M.with_params(L.params)
    target = op_pow_lead(L, (2 * m) // n)
    ratio = target.divexact(M.lead() * M.lead())
    if ratio is None or not ratio.is_numeric() or ratio.is_zero():
        raise CentralizerError("leading coefficient of M is not a constant multiple of lead(L)^(m/n)")
    s = rational_sqrt(ratio.as_rational())
    if s is None:
        raise CentralizerError(f"lead(L)^(2g+1)/lead(M)^2 = {ratio} is not a rational square")
    M = M.scale(s)
    if not _positive(M.lead()):
        M = -M
    try:
        M = normalize_companion(M, L)
    except CentralizerError:
        # lead(L) vanishes at 0; step 3 alone still fixes M, since every
        # element of order <= m is c M + p(L)
        log.info("select_M: skipping the constant-term normalisation")
    _, h = bc_reduce(L, M)
    if any(h):
        M = M - eval_op_poly(L, [c.scale(Fraction(1, 2)) for c in h])
    return M


def op_pow_lead(L: DiffOp, k: int) -> CoefPoly:
    return L.lead() ** k


def find_M(L: DiffOp, m: int, degree: Optional[int] = None, cap: int = 64) -> DiffOp:
    """Convenience: solve the centralizer and select the companion."""
    return select_M(solve_centralizer(L, AnsatzSpec(m, degree, cap)), L, m)
