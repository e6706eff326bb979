"""Hypothesis strategies for small exact operators."""
from fractions import Fraction

from hypothesis import strategies as st

from commuting_ops.diffop import DiffOp
from commuting_ops.exact_core import CoefPoly, ParamSet

ALPHA = ParamSet(("alpha",))

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def polys(params=ParamSet(), max_deg=3, max_terms=4):
    npar = len(params)
    mono = st.tuples(st.integers(0, max_deg), *[st.integers(0, 2) for _ in range(npar)])
    return st.dictionaries(mono, rationals, max_size=max_terms).map(lambda t: CoefPoly(params, t))


def ops(params=ParamSet(), max_order=3, max_deg=3, max_terms=3):
    return st.dictionaries(
        st.integers(0, max_order), polys(params, max_deg, max_terms), max_size=max_order + 1
    ).map(lambda c: DiffOp(c, params))
