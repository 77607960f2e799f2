import random

import pytest
from hypothesis import given, strategies as st

from pforms.errors import HypothesisError
from pforms.forms import FormSubspace, d, wedge
from pforms.pstructure import (PDecomposition, complete_to_p_basis, decompose_at, extract_p_basis,
                               in_fpt_subfield, in_p_span, is_p_independent, max_t_decomposition,
                               p_degree, span_coordinates)

from conftest import F2, F3, contexts, rationals
from pforms.field_core import random_polynomial


@given(contexts.flatmap(lambda K: st.lists(rationals(K, 2), min_size=1, max_size=3)))
def test_three_way_independence(elements):
    ctx = elements[0].ctx
    by_rank = is_p_independent(elements)
    by_span = FormSubspace.span(ctx, 1, [d(x) for x in elements]).dim == len(elements)
    by_wedge = len(elements) <= ctx.m and not wedge(*[d(x) for x in elements]).is_zero()
    assert by_rank == by_span == by_wedge


@given(contexts.flatmap(lambda K: st.lists(rationals(K, 2), min_size=1, max_size=4)))
def test_extract_p_basis(elements):
    basis = extract_p_basis(elements)
    assert is_p_independent(basis)
    assert len(basis) == p_degree(elements)
    for x in elements:
        assert in_p_span(x, basis)


@given(contexts.flatmap(lambda K: st.tuples(st.lists(rationals(K, 2), min_size=1, max_size=2),
                                            st.lists(rationals(K, 2), min_size=1, max_size=2))))
def test_subfield_equality_criteria(pair):
    S, T = pair
    if not (is_p_independent(S) and is_p_independent(T)):
        return
    ctx = S[0].ctx
    same_field = all(in_p_span(x, T) for x in S) and all(in_p_span(y, S) for y in T)
    same_span = FormSubspace.span(ctx, 1, [d(x) for x in S]) == FormSubspace.span(ctx, 1, [d(y) for y in T])
    proportional = len(S) == len(T) and FormSubspace.span(ctx, len(S), [wedge(*[d(x) for x in S])]) == \
        FormSubspace.span(ctx, len(T), [wedge(*[d(y) for y in T])])
    assert same_field == same_span == proportional


def test_complete_to_p_basis():
    a, b, c = F3.gens()
    extra = complete_to_p_basis([a + b ** 2])
    assert len(extra) == 2 and is_p_independent([a + b ** 2] + extra)
    with pytest.raises(HypothesisError):
        complete_to_p_basis([a, a ** 4])


def test_span_coordinates():
    a, b, c = F2.gens()
    lam = span_coordinates(a * b + c ** 2, [a, b])
    assert lam == [b, a]
    assert span_coordinates(c, [a, b]) is None


def test_subfield_membership_examples():
    a, b, c = F2.gens()
    assert in_fpt_subfield(a * c ** 4, [a], 2)
    assert not in_fpt_subfield(a * c ** 4, [a], 3)
    assert in_fpt_subfield(a ** 3 * b + c ** 8, [a, b], 1)
    assert not in_fpt_subfield(a * c, [a], 1)
    with pytest.raises(HypothesisError) as exc:
        in_fpt_subfield(a, [a + b], 1)
    assert exc.value.hypothesis == "coordinate-generators"


def test_max_t_examples():
    a, b, c = F2.gens()
    dec = max_t_decomposition(a + c ** 2 * b, [a, b], 3)
    assert dec.t == 1 and set(dec.coefficient_set) == {F2.one(), c}
    dec = max_t_decomposition(a * c ** 4, [a], 3)
    assert dec.t == 2 and dec.coefficient_set == (c,)
    dec = max_t_decomposition(a ** 4 * b ** 4 * a, [a, b], 2)
    assert dec.modular
    with pytest.raises(HypothesisError) as exc:
        max_t_decomposition(c ** 2, [a, b], 3)
    assert exc.value.hypothesis == "not-a-p-th-power"


@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_decomposition_round_trip_and_maximality(seed, p):
    rng = random.Random(seed)
    ctx = F2 if p == 2 else F3
    a, b, c = ctx.gens()
    q_max = 3
    b_elem = ctx.zero()
    for _ in range(rng.randint(1, 3)):
        t = rng.randint(1, 2)
        x = random_polynomial(ctx, rng, 1, 2, variables=[2])
        b_elem = b_elem + x ** (p ** t) * a ** rng.randrange(p ** t) * b ** rng.randrange(p ** t)
    if not in_fpt_subfield(b_elem, [a, b], 1) or in_p_span(b_elem, []):
        return
    dec = max_t_decomposition(b_elem, [a, b], q_max)
    assert dec.verify()
    if not dec.modular:
        assert not in_fpt_subfield(b_elem, [a, b], dec.t + 1)
    for t in range(1, dec.t + 1):
        assert decompose_at(b_elem, [a, b], t).verify()


def test_decomposition_type_checks_identity():
    a, b, c = F2.gens()
    good = PDecomposition(a * c ** 2, (a,), 1, {(1,): c})
    bad = PDecomposition(a * c ** 2, (a,), 1, {(1,): c + 1})
    assert good.verify() and not bad.verify()
    assert good.index_set == ((1,),)
