"""Published rank 4..7 operators, typed in directly as expressions."""
from fractions import Fraction

from commuting_ops.document import parse_operator
from commuting_ops.exact_core import CoefPoly, ParamSet

GOLDEN = {
    4: ("(D^4 - (x^2 + 1)*D^2 - 3*x*D + x^2 + alpha)^2"
        " - 16*G*(D^4 - D^2)"),
    5: ("(D^5 - 5/4*D^3 - x^2*D^2 - (3*x - 5/16)*D + x^2 + alpha)^2"
        " - 25*G*(D^5 - 5/4*D^3 + 5/16*D)"),
    6: ("(D^6 - 3/2*D^4 - (x^2 - 9/16)*D^2 - 3*x*D + x^2 + alpha)^2"
        " - 36*G*(D^6 - 3/2*D^4 + 9/16*D^2)"),
    7: ("(D^7 - 7/4*D^5 + 7/8*D^3 - x^2*D^2 - (3*x + 7/64)*D + x^2 + alpha)^2"
        " - 49*G*(D^7 - 7/4*D^5 + 7/8*D^3 - 7/64*D)"),
}

# constructor arguments (a, b - alpha) that reproduce each example
ARGS = {
    4: (Fraction(1, 8), Fraction(-1, 8)),
    5: (Fraction(1, 16), Fraction(0)),
    6: (Fraction(1, 32), Fraction(1, 32)),
    7: (Fraction(1, 64), Fraction(0)),
}


def golden(r: int, g: int):
    return parse_operator(GOLDEN[r].replace("G", f"({g * (g + 1)})"))


def b_value(r: int):
    ps = ParamSet(("alpha",))
    return CoefPoly.param("alpha", ps) + ARGS[r][1]
