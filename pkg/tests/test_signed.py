import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from densecores import (ContractViolation, ConvergenceError, NoSolutionError,
                        ResourceLimitError, SignedGraph, brute_force_polarity, generate_planted,
                        leading_eigenvector, parse_signed, polarity, round_deterministic,
                        round_randomized)
from densecores.generators import gen_random
from densecores.signed import SpectralResult

REF = "1 2 +1\n3 4 +1\n1 3 -1\n1 4 -1\n2 3 -1\n2 4 -1\n"


@pytest.fixture
def ref():
    return parse_signed(REF)


def test_polarity_examples(ref):
    assert polarity(ref, [1, 1, -1, -1]) == 3.0
    edge = parse_signed("a b +1")
    assert polarity(edge, [1, 1]) == 1.0
    assert polarity(edge, [1, -1]) == -1.0


def test_polarity_rejects_bad_assignments(ref):
    with pytest.raises(ContractViolation):
        polarity(ref, [0, 0, 0, 0])
    with pytest.raises(ContractViolation):
        polarity(ref, [1, 1, 2, 0])
    with pytest.raises(ContractViolation):
        polarity(ref, [1, 1])


def test_eigen_single_edge():
    s = leading_eigenvector(parse_signed("a b +1"))
    assert s.lambda1 == pytest.approx(1.0)
    np.testing.assert_allclose(np.abs(s.v), [1 / math.sqrt(2)] * 2, atol=1e-8)
    assert s.residual <= 1e-9 and np.linalg.norm(s.v) == pytest.approx(1.0)


def test_eigen_reference_matches_dense(ref):
    s = leading_eigenvector(ref)
    assert s.lambda1 == pytest.approx(3.0, abs=1e-9)
    np.testing.assert_allclose(s.v, [0.5, 0.5, -0.5, -0.5], atol=1e-8)
    w = np.linalg.eigvalsh(ref.adjacency_matrix().toarray())
    assert s.lambda1 == pytest.approx(w[-1], abs=1e-9)


def test_eigen_single_negative_edge():
    # the all-ones start is orthogonal to the answer here
    s = leading_eigenvector(parse_signed("a b -1"))
    assert s.lambda1 == pytest.approx(1.0)
    np.testing.assert_allclose(s.v, [1 / math.sqrt(2), -1 / math.sqrt(2)], atol=1e-8)


def test_eigen_edgeless_is_degenerate():
    G = SignedGraph.from_edges([], vertices="abc")
    s = leading_eigenvector(G)
    assert s.lambda1 == 0.0 and s.degenerate
    with pytest.raises(NoSolutionError):
        round_deterministic(G, s)
    with pytest.raises(NoSolutionError):
        round_randomized(G, s)
    with pytest.raises(NoSolutionError):
        brute_force_polarity(G)


def test_eigen_budget_exhausted():
    G = gen_random("signed", 40, 1, 0.3, 1)
    with pytest.raises(ConvergenceError) as err:
        leading_eigenvector(G, tol=1e-14, max_iter=3)
    assert err.value.iterations == 3 and err.value.residual > 0
    s = leading_eigenvector(G, tol=1e-14, max_iter=3, fallback=True)
    assert s.method == "dense"
    assert s.lambda1 == pytest.approx(np.linalg.eigvalsh(G.adjacency_matrix().toarray())[-1])


def test_eigen_magnitude_mode():
    # star of negative edges: spectrum is {+2, -2, 0, 0, 0}
    G = parse_signed("c a -1\nc b -1\nc d -1\nc e -1")
    s = leading_eigenvector(G, magnitude=True)
    assert abs(s.lambda1) == pytest.approx(2.0)
    # bipartite-like odd spectrum: largest magnitude is negative
    K = gen_random("signed", 12, 1, 0.5, 3)
    w = np.linalg.eigvalsh(K.adjacency_matrix().toarray())
    s = leading_eigenvector(K, magnitude=True, fallback=True)
    assert abs(s.lambda1) == pytest.approx(np.abs(w).max())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 30))
def test_eigen_matches_dense_solver(seed, n):
    G = gen_random("signed", n, 1, 0.3, seed)
    if not G.m:
        return
    s = leading_eigenvector(G, fallback=True)
    A = G.adjacency_matrix().toarray()
    assert s.lambda1 == pytest.approx(np.linalg.eigvalsh(A)[-1], abs=1e-7)
    assert np.linalg.norm(A @ s.v - s.lambda1 * s.v) <= 1e-7


def test_deterministic_examples(ref):
    s = leading_eigenvector(ref)
    r = round_deterministic(ref, s)
    assert r.assignment.tolist() == [1, 1, -1, -1] and r.polarity == 3.0
    edge = parse_signed("a b +1")
    r = round_deterministic(edge, leading_eigenvector(edge))
    assert r.assignment.tolist() == [1, 1] and r.polarity == 1.0


def test_deterministic_two_hostile_cliques():
    inst = generate_planted(8, 4, 4, 1.0, 1.0, 0.0, seed=1)
    G, truth = inst
    r = round_deterministic(G, leading_eigenvector(G))
    assert sorted(map(tuple, [r.positive, r.negative])) == sorted(
        map(tuple, [np.flatnonzero(truth > 0), np.flatnonzero(truth < 0)]))
    assert r.polarity == brute_force_polarity(G).polarity


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.01, 100))
def test_deterministic_scale_invariant(seed, scale):
    G = gen_random("signed", 10, 1, 0.4, seed)
    if not G.m:
        return
    s = leading_eigenvector(G, fallback=True)
    scaled = SpectralResult(s.lambda1, s.v * scale, s.iterations, s.residual)
    assert (round_deterministic(G, scaled).assignment.tolist()
            == round_deterministic(G, s).assignment.tolist())


def test_randomized_examples(ref):
    s = leading_eigenvector(ref)
    assert round_randomized(ref, s, trials=32, seed=5).polarity == 3.0
    edge = parse_signed("a b +1")
    assert round_randomized(edge, leading_eigenvector(edge), trials=16).polarity == 1.0


def test_randomized_deterministic_per_seed():
    G = gen_random("signed", 30, 1, 0.2, 9)
    s = leading_eigenvector(G, fallback=True)
    a = round_randomized(G, s, 8, seed=3)
    b = round_randomized(G, s, 8, seed=3)
    assert a.assignment.tolist() == b.assignment.tolist() and a.polarity == b.polarity
    with pytest.raises(ContractViolation):
        round_randomized(G, s, 0)


def test_brute_force_examples(ref):
    assert brute_force_polarity(ref).polarity == 3.0
    r = brute_force_polarity(parse_signed("a b -1"))
    assert r.assignment.tolist() == [1, -1] and r.polarity == 1.0
    r = brute_force_polarity(parse_signed("a b +\nb c +\na c +"))
    assert r.assignment.tolist() == [1, 1, 1] and r.polarity == 2.0


def test_brute_force_guard():
    with pytest.raises(ResourceLimitError):
        brute_force_polarity(gen_random("signed", 13, 1, 0.3, 0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 7))
def test_brute_force_matches_oracle(seed, n):
    G = gen_random("signed", n, 1, 0.5, seed)
    if not G.m:
        return
    r = brute_force_polarity(G)
    assert r.polarity == pytest.approx(oracles.polarity_opt(G))
    assert r.assignment[np.flatnonzero(r.assignment)[0]] == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 9))
def test_sign_symmetry_and_canonical_output(seed, n):
    G = gen_random("signed", n, 1, 0.5, seed)
    if not G.m:
        return
    s = leading_eigenvector(G, fallback=True)
    for r in (round_deterministic(G, s), round_randomized(G, s, 4, seed)):
        x = r.assignment
        assert polarity(G, x) == polarity(G, -x) == r.polarity
        assert x[np.flatnonzero(x)[0]] == 1


def test_planted_construction():
    inst = generate_planted(100, 15, 15, 0.9, 0.9, 0.01, seed=0)
    assert np.count_nonzero(inst.truth) == 30 and inst.valid
    again = generate_planted(100, 15, 15, 0.9, 0.9, 0.01, seed=0)
    assert list(again.graph.edges()) == list(inst.graph.edges())
    empty = generate_planted(20, 0, 0, 0.9, 0.9, 0.2, seed=0)
    assert not empty.valid and not empty.truth.any()
    with pytest.raises(ContractViolation):
        generate_planted(10, 6, 6, 0.5, 0.5, 0.0)
    with pytest.raises(ContractViolation):
        generate_planted(10, 2, 2, 1.5, 0.5, 0.0)


def test_planted_noise_free_is_balanced_and_recovered():
    inst = generate_planted(40, 6, 5, 1.0, 1.0, 0.0, seed=2)
    G, truth = inst
    # every edge agrees with the planted split: a balanced signed graph
    assert all(s == truth[u] * truth[v] for u, v, s in G.edges())
    s = leading_eigenvector(G)
    r = round_deterministic(G, s)
    assert set(np.flatnonzero(r.assignment)) == set(np.flatnonzero(truth))
    assert r.polarity == pytest.approx(s.lambda1)
