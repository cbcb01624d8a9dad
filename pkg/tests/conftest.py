import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from conewave.polyalg import MultiPoly

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, dim=2, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = tuple(draw(st.integers(0, max_exp)) for _ in range(dim + 1))
        terms[exps] = draw(rationals)
    return MultiPoly(dim, terms)


@pytest.fixture
def xt2():
    return MultiPoly.var(2, "x1"), MultiPoly.var(2, "x2"), MultiPoly.var(2, "t")


def worked_example():
    x1, x2, t = MultiPoly.var(2, "x1"), MultiPoly.var(2, "x2"), MultiPoly.var(2, "t")
    f = t * x1**2 + t**2 * x2 + x1 * x2**2
    u = 8 + 2 * x1**2 + 6 * x2 + t**2 * x2 + t * (2 + x1**2 + 4 * x2) + x1 * (2 + x2**2)
    return f, u


ZERO = Fraction(0)
