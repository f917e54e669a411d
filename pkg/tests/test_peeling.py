import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from densecores import (ContractViolation, GraphView, core_decomposition, parse_multilayer,
                        parse_temporal, peel_interval, peel_to_vector)
from densecores.generators import gen_random

EXAMPLE = "1 2 A\n2 3 A\n1 3 A\n3 4 A\n1 2 B\n2 3 B\n1 3 B\n2 4 B\n"
TRIANGLES = "a b 0\nb c 0\na c 0\na b 1\nb c 1\na c 1\na b 2\n"


def view(n, edges):
    return GraphView.from_codes(sorted(min(u, v) * n + max(u, v) for u, v in edges), n)


@pytest.mark.parametrize("n, edges, expected", [
    (3, [(0, 1), (1, 2), (0, 2)], [2, 2, 2]),
    (4, [(0, 1), (1, 2), (0, 2), (2, 3)], [2, 2, 2, 1]),
    (6, [(0, i) for i in range(1, 6)], [1] * 6),
    (3, [], [0, 0, 0]),
])
def test_core_numbers_small(n, edges, expected):
    idx = core_decomposition(view(n, edges))
    assert idx.core_number.tolist() == expected
    assert idx.k_star == max(expected)


def test_core_chain_nested():
    idx = core_decomposition(view(4, [(0, 1), (1, 2), (0, 2), (2, 3)]))
    chain = idx.chain()
    assert [c.tolist() for c in chain] == [[0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 2]]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 25), st.floats(0.05, 0.6))
def test_core_numbers_match_oracle(seed, n, p):
    G = gen_random("multilayer", n, 1, p, seed)
    got = core_decomposition(G.layer_view(0)).core_number.tolist()
    assert got == oracles.core_numbers(n, list(G.edges(0)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 25))
def test_core_rederivation(seed, n):
    G = gen_random("multilayer", n, 1, 0.3, seed)
    v = G.layer_view(0)
    idx = core_decomposition(v)
    for k in range(idx.k_star + 1):
        sub = core_decomposition(v, within=idx.core(k))
        assert (sub.core_number >= k).sum() == len(idx.core(k))


def test_peel_to_vector_examples():
    G = parse_multilayer(EXAMPLE)
    assert G.labels_of(peel_to_vector(G, (2, 2))) == ["1", "2", "3"]
    assert peel_to_vector(G, (0, 0)).tolist() == [0, 1, 2, 3]
    assert peel_to_vector(G, (3, 0)).size == 0


def test_peel_to_vector_checks_vector():
    G = parse_multilayer(EXAMPLE)
    with pytest.raises(ContractViolation):
        peel_to_vector(G, (1,))
    with pytest.raises(ContractViolation):
        peel_to_vector(G, (-1, 0))


def test_peel_interval_examples():
    G = parse_temporal(TRIANGLES)
    assert G.labels_of(peel_interval(G, 2, (0, 1))) == ["a", "b", "c"]
    assert peel_interval(G, 2, (0, 2)).size == 0
    assert G.labels_of(peel_interval(G, 1, (0, 2))) == ["a", "b"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 14), st.integers(1, 3), st.data())
def test_peel_order_independent(seed, n, L, data):
    G = gen_random("multilayer", n, L, 0.45, seed)
    k = data.draw(st.lists(st.integers(0, 4), min_size=L, max_size=L))
    outcomes = oracles.shuffled_peels(G, k, range(5))
    assert len(outcomes) == 1
    assert set(peel_to_vector(G, k).tolist()) == outcomes.pop()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 20), st.data())
def test_peel_monotone_and_restartable(seed, n, data):
    G = gen_random("multilayer", n, 2, 0.35, seed)
    k = data.draw(st.lists(st.integers(0, 3), min_size=2, max_size=2))
    bump = data.draw(st.lists(st.integers(0, 2), min_size=2, max_size=2))
    big = [a + b for a, b in zip(k, bump)]
    low = set(peel_to_vector(G, k).tolist())
    high = set(peel_to_vector(G, big).tolist())
    assert high <= low
    # any superset of the answer is a valid starting point
    extra = data.draw(st.sets(st.integers(0, n - 1)))
    assert set(peel_to_vector(G, big, sorted(high | extra)).tolist()) == high
    assert set(peel_to_vector(G, big, np.isin(np.arange(n), sorted(low))).tolist()) == high
