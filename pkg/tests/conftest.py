import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from pforms.field_core import FieldContext, RationalFunction
from pforms.forms import DifferentialForm, index_tuples

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F2 = FieldContext(2, ("a", "b", "c"))
F3 = FieldContext(3, ("a", "b", "c"))
F5 = FieldContext(5, ("a", "b"))
CONTEXTS = [F2, F3, F5]


@pytest.fixture
def rng():
    return random.Random(20261015)


@st.composite
def polynomials(draw, ctx, max_degree=3, max_terms=4):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_degree) for _ in range(ctx.m)]),
        st.integers(1, ctx.p - 1), max_size=max_terms))
    return ctx.from_poly(ctx.poly(terms))


@st.composite
def rationals(draw, ctx, max_degree=3):
    num = draw(polynomials(ctx, max_degree))
    den = draw(polynomials(ctx, max(1, max_degree - 1), 3))
    if den.is_zero():
        return num
    return num / den


@st.composite
def nonzero_rationals(draw, ctx, max_degree=3):
    f = draw(rationals(ctx, max_degree))
    return f if not f.is_zero() else ctx.one()


@st.composite
def forms(draw, ctx, degree=None, max_degree=2):
    if degree is None:
        degree = draw(st.integers(0, ctx.m))
    coeffs = {}
    for sigma in index_tuples(ctx.m, degree):
        if draw(st.booleans()):
            coeffs[sigma] = draw(rationals(ctx, max_degree))
    return DifferentialForm(ctx, degree, coeffs)


contexts = st.sampled_from(CONTEXTS)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
