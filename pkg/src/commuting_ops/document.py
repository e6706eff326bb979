"""Operator documents (JSON) and a small expression reader for CLI input.

Document layout::

    {"format": "commuting-ops/operator", "version": 1,
     "params": ["alpha"],
     "terms": [{"order": 2, "coeff": [{"c": "1", "x": 0, "p": []}]},
               {"order": 0, "coeff": [{"c": "-5/16", "x": 3, "p": [["alpha", 1]]}]}]}

Rationals are strings in lowest terms (``"3"``, ``"-5/16"``); orders are
listed from highest to lowest and monomials in the canonical graded order,
so serialising a parsed document reproduces it byte for byte.
"""
from __future__ import annotations

import ast
import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .diffop import DiffOp, op_mul, op_pow
from .exact_core import CoefPoly, ParamSet, as_rat

FORMAT = "commuting-ops/operator"
VERSION = 1


class DocumentError(ValueError):
    pass


def to_document(op: DiffOp) -> dict:
    names = op.params.names
    terms = []
    for i in sorted(op.coeffs, reverse=True):
        mons = []
        for mono, c in op.coeffs[i].sorted_terms():
            mons.append({
                "c": str(Fraction(c)),
                "x": mono[0],
                "p": [[n, e] for n, e in zip(names, mono[1:]) if e],
            })
        terms.append({"order": i, "coeff": mons})
    return {"format": FORMAT, "version": VERSION, "params": list(names), "terms": terms}


def from_document(doc: dict) -> DiffOp:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise DocumentError("not an operator document")
    if doc.get("version") != VERSION:
        raise DocumentError(f"unsupported document version {doc.get('version')!r}")
    try:
        ps = ParamSet(tuple(doc.get("params", [])))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    coeffs = {}
    for term in doc.get("terms", []):
        order = term["order"]
        if not isinstance(order, int) or order < 0 or order in coeffs:
            raise DocumentError(f"bad or repeated order {order!r}")
        poly = {}
        for mon in term["coeff"]:
            key = [0] * (len(ps) + 1)
            key[0] = int(mon.get("x", 0))
            for name, e in mon.get("p", []):
                if name not in ps:
                    raise DocumentError(f"undeclared parameter {name!r}")
                key[ps.index(name) + 1] = int(e)
            try:
                c = Fraction(mon["c"])
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise DocumentError(f"bad rational {mon.get('c')!r}") from exc
            if tuple(key) in poly:
                raise DocumentError("repeated monomial")
            poly[tuple(key)] = c
        coeffs[order] = CoefPoly(ps, poly)
    return DiffOp(coeffs, ps)


def dumps(op: DiffOp) -> str:
    return json.dumps(to_document(op), indent=1) + "\n"


def loads(text: str) -> DiffOp:
    try:
        return from_document(json.loads(text))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"malformed operator document: {exc}") from exc


def save(op: DiffOp, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(op))


def load(path: Union[str, Path]) -> DiffOp:
    return loads(Path(path).read_text())


# ---------------------------------------------------------------------------
# expressions


def _names(tree) -> list:
    out = []
    for node in ast.walk(tree):
        if isinstance(node, ast.Name) and node.id not in ("x", "D") and node.id not in out:
            out.append(node.id)
    return out


def _eval(node, ps: ParamSet, leaf):
    if isinstance(node, ast.Expression):
        return _eval(node.body, ps, leaf)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        if isinstance(node.value, float):
            raise DocumentError("use exact rationals (p/q), not decimals")
        return leaf("const", node.value)
    if isinstance(node, ast.Name):
        return leaf("name", node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, ps, leaf)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = node.right
            if isinstance(e, ast.UnaryOp) or not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise DocumentError("exponents must be nonnegative integer literals")
            return leaf("pow", (_eval(node.left, ps, leaf), e.value))
        a, b = _eval(node.left, ps, leaf), _eval(node.right, ps, leaf)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return leaf("mul", (a, b))
        if isinstance(node.op, ast.Div):
            return leaf("div", (a, b))
    raise DocumentError(f"unsupported expression element: {ast.dump(node)[:60]}")


def _parse(text: str):
    try:
        return ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise DocumentError(f"cannot parse expression {text!r}") from exc


def parse_poly(text: str, params: ParamSet = None) -> CoefPoly:
    """Parse ``"x^3 + alpha"``-style text into a :class:`CoefPoly`.

    Every name other than ``x`` becomes a parameter; division is allowed
    only by rational constants.
    """
    tree = _parse(text)
    names = _names(tree)
    if "D" in {n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}:
        raise DocumentError("D is not allowed in a coefficient polynomial")
    ps = params if params is not None else ParamSet(tuple(names))
    missing = [n for n in names if n not in ps]
    if missing:
        raise DocumentError(f"unknown parameters {missing}")

    def leaf(kind, v):
        if kind == "const":
            return CoefPoly.const(v, ps)
        if kind == "name":
            return CoefPoly.x(1, ps) if v == "x" else CoefPoly.param(v, ps)
        if kind == "pow":
            return v[0] ** v[1]
        if kind == "mul":
            return v[0] * v[1]
        if kind == "div":
            num, den = v
            if not den.is_numeric() or den.deg_x() > 0 or den.is_zero():
                raise DocumentError("can only divide by nonzero rational constants")
            return num.scale(1 / Fraction(den.as_rational()))
        raise AssertionError(kind)

    return _eval(tree, ps, leaf)


def parse_operator(text: str) -> DiffOp:
    """Parse a Weyl-algebra expression such as ``"(D^2 + x^3 + alpha)^2 + 2*x"``.

    Products are noncommutative and taken in the written order.
    """
    tree = _parse(text)
    ps = ParamSet(tuple(_names(tree)))

    def leaf(kind, v):
        if kind == "const":
            return DiffOp.mult(CoefPoly.const(v, ps), ps)
        if kind == "name":
            if v == "D":
                return DiffOp.D(1, ps)
            if v == "x":
                return DiffOp.X(1, ps)
            return DiffOp.mult(CoefPoly.param(v, ps), ps)
        if kind == "pow":
            return op_pow(v[0], v[1])
        if kind == "mul":
            return op_mul(v[0], v[1])
        if kind == "div":
            num, den = v
            if den.order != 0 or not den.coeff(0).is_numeric() or den.coeff(0).deg_x() > 0:
                raise DocumentError("can only divide by nonzero rational constants")
            return num.scale(1 / Fraction(den.coeff(0).as_rational()))
        raise AssertionError(kind)

    return _eval(tree, ps, leaf)


def parse_value(text: str):
    """A rational (``"5/16"``) or a parameter-only polynomial (``"alpha - 1/8"``)."""
    try:
        return as_rat(text)
    except (ValueError, ZeroDivisionError, TypeError):
        pass
    p = parse_poly(text)
    if p.deg_x() > 0:
        raise DocumentError(f"{text!r} must not depend on x")
    return p


def read_operator(arg: str) -> DiffOp:
    """A document path, or an inline operator expression."""
    path = Path(arg)
    if path.suffix == ".json" or path.exists():
        if not path.exists():
            raise DocumentError(f"no such file: {arg}")
        return load(path)
    return parse_operator(arg)
