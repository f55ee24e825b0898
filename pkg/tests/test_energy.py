"""Frozen small values (each confirmed by a pure-Python brute force) and
fast-vs-oracle properties."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpsums import energy as en
from fpsums import oracles
from fpsums.errors import CapExceeded, ContextMismatch
from fpsums.field import make_field_ctx
from fpsums.sets import RepFn, explicit_set, full_field, random_set, rep_fn, subgroup


@pytest.fixture
def f5():
    return make_field_ctx(5)


def S(ctx, *xs):
    return explicit_set(ctx, xs)


def test_energy_examples(f5):
    A = S(f5, 1, 2)
    assert en.energy(A, A, "+").value == 6
    assert en.energy3(A, A, "+").value == 10
    assert en.energy(S(f5), A, "-").value == 0
    assert en.energy3(S(f5), S(f5), "*").value == 0
    G = subgroup(make_field_ctx(7), 3)
    assert en.energy(G, G, "*").value == 27
    assert en.energy3(G, G, "*").value == 81


def test_energy_fn_examples(f5):
    one = RepFn.indicator(S(f5, 1))
    assert en.energy_fn(one, "*").value == 1
    assert en.energy3_fn(one, "*").value == 1
    r = rep_fn(S(f5, 1, 2), S(f5, 1, 2), "-")
    assert en.energy_fn(r, "*").value == 152
    assert en.energy_fn(RepFn.from_values(f5, np.zeros(5, dtype=np.int64)), "*").value == 0
    two = RepFn.indicator(S(f5, 1, 2))
    assert en.energy_fn_set(two, S(f5, 1), "*").value == 2
    assert en.energy_fn_set(two, S(f5), "+").value == 0


def test_d_times_examples(f5):
    A = S(f5, 1, 2)
    assert en.d_times(A, A).value == 152
    assert en.d_times(S(f5, 3), S(f5, 3)).value == 1
    assert en.d_times(A, S(f5, 0)).value == 6
    assert en.d_times_tilde(A, A).value == 8
    assert en.d_times_tilde(S(f5, 2), A).value == 0
    G = S(f5, 1, 4)
    assert en.d_times_tilde(G, G).value == 8


def test_n_count_examples(f5):
    assert en.n_count(S(f5, 1), S(f5, 1, 2), S(f5, 0)).value == 2
    assert en.n_count(S(f5, 1, 3), S(f5), S(f5)).value == 0
    # the worked Cauchy link: 2^2 <= 1 * 6
    n = en.n_count(S(f5, 1), S(f5, 1, 2), S(f5, 0)).value
    assert n * n <= en.energy(S(f5, 1), S(f5, 1), "*").value * en.d_times(S(f5, 1, 2), S(f5, 0)).value


def test_literal_cauchy_link_counterexample():
    # zero solutions are counted on the left but not controlled on the right
    ctx = make_field_ctx(11)
    U, V, W = S(ctx, 5, 6), S(ctx, 1), S(ctx, 1)
    n = en.n_count(U, V, W).value
    assert (n, en.energy(U, U, "*").value, en.d_times(V, W).value) == (4, 8, 1)
    assert n * n > 8 * 1
    assert en.n_count_nonzero(U, V, W).value == 0


def test_triples_examples(f5):
    assert en.collinear_triples(S(f5, 0, 1), S(f5, 0, 1)).value == 4
    assert en.collinear_triples(S(f5, 1), S(f5, 0, 1, 2)).value == 0
    assert en.triples_equal_products(S(f5, 1, 4), S(f5, 1, 4)).value == 4
    assert en.triples_equal_products(S(f5, 2), S(f5, 2)).value == 0
    F = full_field(f5)
    assert en.collinear_triples(F, F).value == 1600
    assert en.collinear_triples(F, F, "oracle").value == 1600
    assert en.triples_equal_products(F, F).value == 1600


def test_quadruples_examples(f5):
    assert en.collinear_quadruples(S(f5, 3)).value == 0
    assert en.r3_pivot_sum(S(f5, 3)).value == 0
    # 8, not 16: brute force over all 8-tuples agrees
    A = S(f5, 0, 1)
    assert en.collinear_quadruples(A).value == 8
    assert oracles.enum_collinear_quadruples(A) == 8
    assert en.r3_pivot_sum(A).value == 8


def test_quadruple_cap():
    A = random_set(make_field_ctx(101), 41, 1)
    with pytest.raises(CapExceeded):
        en.collinear_quadruples(A)


def test_unit_line_incidences():
    f7 = make_field_ctx(7)
    assert en.unit_line_incidences(S(f7, 1, 2, 4), S(f7, 1, 6), 1, 1) == 1
    assert en.unit_line_incidences(S(f7, 1, 2), S(f7, 3), 0, 0) == 0
    star = S(f7, 1, 2, 3, 4, 5, 6)
    assert en.unit_line_incidences(star, star, 1, 0) == 6


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        en.d_times(S(make_field_ctx(5), 1), S(make_field_ctx(7), 1))


def test_oracle_tier_fallback():
    # beyond the 8-tuple cap the oracle ladder drops to pair products
    ctx = make_field_ctx(101)
    A = random_set(ctx, 30, 4)
    assert en.d_times(A, A, "oracle").value == en.d_times(A, A).value


@pytest.mark.parametrize("p", [11, 31, 101])
def test_subgroup_energy_laws(p):
    ctx = make_field_ctx(p)
    from fpsums.field import divisors

    for d in divisors(p - 1):
        G = subgroup(ctx, d)
        assert en.energy(G, G, "*").value == d**3
        assert en.energy3(G, G, "*").value == d**4


small_sets = st.lists(st.integers(0, 12), min_size=0, max_size=5)


@settings(max_examples=120, deadline=None)
@given(small_sets, small_sets, small_sets, st.sampled_from("+-*/"))
def test_fast_matches_oracle(a, b, c, op):
    ctx = make_field_ctx(13)
    U, V, W = S(ctx, *a), S(ctx, *b), S(ctx, *c)
    assert en.energy(U, V, op).value == oracles.enum_energy(U, V, op)
    assert en.energy3(U, V, op).value == oracles.enum_energy3(U, V, op)
    assert en.d_times(U, V).value == oracles.enum_d_times(U, V) == oracles.pairs_d_times(U, V)
    assert en.d_times_tilde(U, V).value == oracles.enum_d_times_tilde(U, V)
    assert en.n_count(U, V, W).value == oracles.enum_n_count(U, V, W)
    assert en.n_count_nonzero(U, V, W).value == oracles.enum_n_count_nonzero(U, V, W)
    assert en.collinear_triples(U, V).value == oracles.enum_collinear_triples(U, V)
    assert en.triples_equal_products(U, V).value == oracles.enum_triples_literal(U, V)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=6))
def test_quadruples_match_oracle_and_pivot_sum(a):
    A = S(make_field_ctx(31), *a)
    q = en.collinear_quadruples(A).value
    assert q == oracles.enum_collinear_quadruples(A) == en.r3_pivot_sum(A).value


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 30), max_size=8), st.sampled_from("+-*/"))
def test_function_energies_match_oracle(a, op):
    ctx = make_field_ctx(31)
    A = S(ctx, *a)
    r = rep_fn(A, A, "-")
    assert en.energy_fn(r, op).value == oracles.enum_energy_fn(r, op)
    assert en.energy3_fn(r, op).value == oracles.enum_energy3_fn(r, op)
    T = S(ctx, 1, 5, 9)
    assert en.energy_fn_set(r, T, op).value == oracles.enum_energy_fn_set(r, T, op)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 30), max_size=8))
def test_exact_relations(a):
    ctx = make_field_ctx(31)
    A = S(ctx, *a)
    d = en.d_times(A, A).value
    dt = en.d_times_tilde(A, A).value
    assert dt <= d <= dt + 4 * A.size**6
    assert d == en.energy_fn(rep_fn(A, A, "-"), "*").value


@settings(max_examples=100, deadline=None)
@given(small_sets, small_sets, small_sets)
def test_nonzero_cauchy_link(a, b, c):
    ctx = make_field_ctx(13)
    U, V, W = S(ctx, *a), S(ctx, *b), S(ctx, *c)
    n = en.n_count_nonzero(U, V, W).value
    assert n * n <= en.energy(U, U, "*").value * en.d_times(V, W).value
