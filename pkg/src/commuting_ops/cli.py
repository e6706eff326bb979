"""Command-line front end.

Exit codes: 0 success / verified, 1 a mathematical check failed, 2 bad input
or usage.  ``--json`` switches every report to a structured rendering.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import document
from .centralizer import AnsatzSpec, CentralizerError, select_M, solve_centralizer
from .diffop import canonical_check, formal_adjoint, op_commutator, weyl_automorphism
from .document import DocumentError
from .eigenspace import SeriesError, certify_rank
from .exact_core import CoefPoly, ParamSet, ParamSetMismatch
from .operator_zoo import FamilySpec, build, chebyshev
from .selfadjoint import QPoly, SelfAdjointError, VW, solve_mironov_g1, verify_mironov_relation
from .spectral import CurveError, HyperellipticCurve, curve_report, hyperelliptic_reduce, rank_of, verify_pair

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Report:
    """Collects facts for both the human and the structured rendering."""

    def __init__(self, command: str):
        self.data = {"command": command, "inputs": {}, "results": {}, "timings": {}}
        self.lines: List[str] = []
        self.keys: List[str] = []
        self._t0 = time.perf_counter()

    def input(self, key, value):
        self.data["inputs"][key] = value

    def fact(self, key, value, line: Optional[str] = None):
        self.data["results"][key] = value
        self.keys.append(key)
        self.lines.append(line if line is not None else f"{key}: {value}")

    def finish(self, as_json: bool, out=sys.stdout):
        self.data["timings"]["total_seconds"] = round(time.perf_counter() - self._t0, 6)
        if as_json:
            out.write(json.dumps(self.data, indent=1) + "\n")
        else:
            out.write("\n".join(self.lines) + "\n")


def _frac(s) -> str:
    return str(Fraction(s))


def _curve_json(curve: HyperellipticCurve):
    return {"genus": curve.genus,
            "coefficients_descending": [str(c) for c in reversed(curve.coeffs)]}


def _curve_line(curve: HyperellipticCurve) -> str:
    return "(" + ", ".join(str(c) for c in reversed(curve.coeffs)) + ")"


def _matrix_json(A):
    return [[_frac(v) for v in row] for row in A]


def _read(arg: str):
    try:
        return document.read_operator(arg)
    except (DocumentError, OSError) as exc:
        raise UsageError(str(exc)) from exc


def _write(op, path: Optional[str], rep: Report, key: str = "output"):
    if path:
        document.save(op, path)
        rep.input(key, path)


def _value(text):
    if text is None:
        return None
    try:
        return document.parse_value(text)
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------


def cmd_build(args, rep: Report) -> int:
    spec = FamilySpec(args.family, r=args.r, g=args.g, k=args.k,
                      a=_value(args.a), b=_value(args.b) if args.b is not None else 0,
                      alpha=_value(args.alpha) if args.alpha is not None else "alpha")
    rep.input("family", {"family": spec.family, "r": spec.r, "g": spec.g, "k": spec.k,
                         "a": None if args.a is None else args.a, "b": args.b, "alpha": args.alpha})
    L, M = build(spec)
    rep.fact("order_L", L.order)
    rep.fact("L", str(L), f"L = {L}")
    rep.fact("canonical", canonical_check(L).is_canonical)
    _write(L, args.output, rep)
    if M is not None:
        rep.fact("order_M", M.order)
        rep.fact("M", str(M), f"M = {M}")
        _write(M, args.m_output, rep, "m_output")
    return EXIT_OK


def cmd_cheb(args, rep: Report) -> int:
    T = chebyshev(args.r)
    rep.input("r", args.r)
    rep.fact("coefficients", [str(c) for c in T.coeffs])
    rep.fact("T", str(T.as_poly()).replace("x", "z"), f"T_{args.r}(z) = {str(T.as_poly()).replace('x', 'z')}")
    return EXIT_OK


def cmd_commutator(args, rep: Report) -> int:
    A, B = _read(args.A), _read(args.B)
    rep.input("A", args.A)
    rep.input("B", args.B)
    C = op_commutator(A, B)
    rep.fact("commutator", str(C), f"[A, B] = {C}")
    rep.fact("zero", C.is_zero())
    _write(C, args.output, rep)
    return EXIT_OK if C.is_zero() else EXIT_FAIL


def cmd_adjoint(args, rep: Report) -> int:
    A = _read(args.A)
    rep.input("A", args.A)
    adj = formal_adjoint(A)
    rep.fact("adjoint", str(adj), f"A* = {adj}")
    rep.fact("self_adjoint", adj == A)
    _write(adj, args.output, rep)
    return EXIT_OK


def cmd_canonical(args, rep: Report) -> int:
    A = _read(args.A)
    rep.input("A", args.A)
    if A.is_zero():
        raise UsageError("canonical form is undefined for the zero operator")
    c = canonical_check(A)
    rep.fact("order", A.order)
    rep.fact("is_monic", c.is_monic)
    rep.fact("subleading_zero", c.subleading_zero)
    rep.fact("is_canonical", c.is_canonical)
    return EXIT_OK if c.is_canonical else EXIT_FAIL


def cmd_weyl(args, rep: Report) -> int:
    A = _read(args.A)
    rep.input("A", args.A)
    S = weyl_automorphism(A)
    rep.fact("image", str(S), f"sigma(A) = {S}")
    _write(S, args.output, rep)
    return EXIT_OK


def cmd_find_m(args, rep: Report) -> int:
    L = _read(args.L)
    rep.input("L", args.L)
    rep.input("order", args.order)
    try:
        basis = solve_centralizer(L, AnsatzSpec(args.order, args.degree, args.cap))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except CentralizerError as exc:
        rep.fact("error", str(exc))
        return EXIT_FAIL
    rep.fact("degree_bound", basis.degree)
    rep.fact("dimension", basis.dimension)
    try:
        M = select_M(basis, L, args.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except (CentralizerError, CurveError) as exc:
        rep.fact("error", str(exc))
        return EXIT_FAIL
    rep.fact("order_M", M.order)
    rep.fact("M", str(M), f"M = {M}")
    rep.fact("commutes", op_commutator(L, M).is_zero())
    _write(M, args.output, rep)
    return EXIT_OK


def _report_curve(rep: Report, curve: HyperellipticCurve):
    rep.fact("genus", curve.genus)
    rep.fact("curve", _curve_json(curve), f"curve (a_{2 * curve.genus}, ..., a_0) = {_curve_line(curve)}")
    rep.fact("equation", str(curve), str(curve))
    if curve.is_numeric():
        cr = curve_report(curve)
        rep.fact("discriminant", _frac(cr.discriminant))
        rep.fact("singular", cr.singular,
                 "singular spectral curve" if cr.singular else "spectral curve is nonsingular")


def cmd_curve(args, rep: Report) -> int:
    L, M = _read(args.L), _read(args.M)
    rep.input("L", args.L)
    rep.input("M", args.M)
    try:
        curve = hyperelliptic_reduce(L, M)
    except CurveError as exc:
        rep.fact("error", str(exc))
        return EXIT_FAIL
    _report_curve(rep, curve)
    rep.fact("rank_gcd", rank_of(L, M))
    return EXIT_OK


def cmd_verify_pair(args, rep: Report) -> int:
    L, M = _read(args.L), _read(args.M)
    rep.input("L", args.L)
    rep.input("M", args.M)
    chk = verify_pair(L, M)
    rep.fact("commutes", chk.commutes)
    if chk.curve is not None:
        _report_curve(rep, chk.curve)
    rep.fact("round_trip", chk.round_trip)
    if chk.error:
        rep.fact("error", chk.error)
    rep.fact("verified", chk.ok)
    return EXIT_OK if chk.ok else EXIT_FAIL


def _parse_q(text: str) -> QPoly:
    # "lambda" is a Python keyword; the expression reader sees it as "lam"
    p = document.parse_poly(re.sub(r"\blambda\b", "lam", text))
    if "lam" not in p.params:
        raise UsageError("Q must be a polynomial in lambda")
    idx = p.params.index("lam") + 1
    rest = ParamSet(tuple(n for n in p.params.names if n != "lam"))
    by = {}
    for m, c in p.terms.items():
        by.setdefault(m[idx], {})[m[:idx] + m[idx + 1:]] = c
    g = max(by)
    if CoefPoly(rest, by[g]) != 1:
        raise UsageError("Q must be monic in lambda")
    return QPoly(tuple(CoefPoly(rest, by.get(k, {})) for k in range(g)))


def _parse_curve(text: str) -> HyperellipticCurve:
    vals = [document.parse_value(t) for t in text.split(",")]
    try:
        return HyperellipticCurve.from_descending(vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_mironov_verify(args, rep: Report) -> int:
    try:
        vw = VW(document.parse_poly(args.V), document.parse_poly(args.W))
        q = _parse_q(args.Q)
        curve = _parse_curve(args.curve)
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc
    for k in ("V", "W", "Q", "curve"):
        rep.input(k, getattr(args, k))
    try:
        res = verify_mironov_relation(vw, q, curve)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep.fact("holds", res.ok)
    if not res.ok:
        rep.fact("mismatch_lambda_degree", res.mismatch_degree)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_mironov_solve(args, rep: Report) -> int:
    try:
        vw = VW(document.parse_poly(args.V), document.parse_poly(args.W))
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc
    rep.input("V", args.V)
    rep.input("W", args.W)
    try:
        q, curve = solve_mironov_g1(vw)
    except SelfAdjointError as exc:
        rep.fact("error", str(exc))
        return EXIT_FAIL
    rep.fact("Q", str(q), f"Q = {q}")
    rep.fact("curve", _curve_json(curve), f"curve (a_2, a_1, a_0) = {_curve_line(curve)}")
    return EXIT_OK


def cmd_certify(args, rep: Report) -> int:
    L, M = _read(args.L), _read(args.M)
    rep.input("L", args.L)
    rep.input("M", args.M)
    try:
        lam = Fraction(args.lam)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad lambda {args.lam!r}") from exc
    rep.input("lambda", str(lam))
    try:
        curve = hyperelliptic_reduce(L, M)
    except CurveError as exc:
        rep.fact("error", str(exc))
        return EXIT_FAIL
    if not curve.is_numeric():
        raise UsageError("certify-rank needs numeric operators")
    try:
        res = certify_rank(L, M, curve, lam)
    except SeriesError as exc:
        raise UsageError(str(exc)) from exc
    rep.fact("f_lambda", _frac(res.f_lam))
    rep.fact("matrix", _matrix_json(res.matrix))
    rep.fact("charpoly", [_frac(c) for c in res.charpoly])
    rep.fact("charpoly_matches", res.charpoly_ok)
    rep.fact("square_is_scalar", res.square_is_scalar)
    rep.fact("minimal_poly", [_frac(c) for c in res.minimal_poly])
    rep.fact("eigenspace_dims", res.eigenspace_dims)
    rep.fact("rank", res.rank)
    rep.fact("rank_gcd", res.gcd_rank)
    if res.warnings:
        rep.fact("warnings", res.warnings, "\n".join(f"warning: {w}" for w in res.warnings))
    rep.fact("certified", res.certified, res.summary())
    return EXIT_OK if res.certified else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON report")
    p = argparse.ArgumentParser(prog="commop", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build", parents=[common], help="construct an operator family")
    s.add_argument("family")
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--g", type=int, default=1)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--alpha")
    s.add_argument("-o", "--output")
    s.add_argument("--m-output", help="where to write the explicit companion, if any")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("cheb", parents=[common], help="print T_r")
    s.add_argument("r", type=int)
    s.set_defaults(func=cmd_cheb)

    s = sub.add_parser("commutator", parents=[common], help="[A, B]; exit 0 iff zero")
    s.add_argument("A")
    s.add_argument("B")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_commutator)

    s = sub.add_parser("adjoint", parents=[common], help="formal adjoint")
    s.add_argument("A")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_adjoint)

    s = sub.add_parser("canonical-check", parents=[common], help="monic with zero subleading term?")
    s.add_argument("A")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("weyl-auto", parents=[common], help="apply x -> D, D -> -x")
    s.add_argument("A")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_weyl)

    s = sub.add_parser("find-m", parents=[common], help="companion of given order")
    s.add_argument("L")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--degree", type=int)
    s.add_argument("--cap", type=int, default=64)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_find_m)

    s = sub.add_parser("curve", parents=[common], help="hyperelliptic curve of a pair")
    s.add_argument("L")
    s.add_argument("M")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("verify-pair", parents=[common], help="[L,M]=0 and M^2=f(L)")
    s.add_argument("L")
    s.add_argument("M")
    s.set_defaults(func=cmd_verify_pair)

    s = sub.add_parser("mironov-verify", parents=[common], help="check the rank-2 Q relation")
    s.add_argument("--V", required=True)
    s.add_argument("--W", required=True)
    s.add_argument("--Q", required=True, help="monic polynomial in lambda, e.g. 'lambda + x'")
    s.add_argument("--curve", required=True, help="a_2g,...,a_0 comma separated")
    s.set_defaults(func=cmd_mironov_verify)

    s = sub.add_parser("mironov-solve-g1", parents=[common], help="solve the Q relation at genus 1")
    s.add_argument("--V", required=True)
    s.add_argument("--W", required=True)
    s.set_defaults(func=cmd_mironov_solve)

    s = sub.add_parser("certify-rank", parents=[common], help="eigenspace rank at a rational lambda")
    s.add_argument("L")
    s.add_argument("M")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_certify)
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    rep = Report(args.command)
    try:
        code = args.func(args, rep)
    except (UsageError, DocumentError, ParamSetMismatch, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    rep.data["results"]["exit_code"] = code
    rep.finish(args.json, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
