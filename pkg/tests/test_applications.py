import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from densecores import (CommunityQuery, ContractViolation, DensestParams, MultilayerGraph,
                        NoSolutionError, QuasiCliqueParams, ResourceLimitError,
                        UnknownVertexError, community_search, densest_subgraph,
                        min_degree_score, multilayer_density, parse_multilayer,
                        quasi_clique_enumerate, quasi_clique_prune)
from densecores.applications import safe_ceil
from densecores.generators import gen_random

EXAMPLE = "1 2 A\n2 3 A\n1 3 A\n3 4 A\n1 2 B\n2 3 B\n1 3 B\n2 4 B\n"
K4_PENDANT = [(a, b, "x") for a, b in ["12", "13", "14", "23", "24", "34", "45"]]


@pytest.fixture
def G():
    return parse_multilayer(EXAMPLE)


def test_density_example(G):
    d = multilayer_density(G, G.vertex_ids("123"), 1)
    assert d.value == 2.0 and d.support == (0, 1)


def test_density_single_layer():
    H = MultilayerGraph.from_edges(K4_PENDANT)
    for beta in (0, 1, 3):
        assert multilayer_density(H, H.vertex_ids("12345"), beta).value == pytest.approx(7 / 5)
    assert multilayer_density(H, H.vertex_ids("1234"), 0).value == pytest.approx(6 / 4)


def test_density_beta_zero_is_best_layer():
    G = gen_random("multilayer", 12, 3, 0.4, 1)
    S = np.arange(12)
    per = [sum(1 for _ in G.edges(l)) / 12 for l in range(3)]
    assert multilayer_density(G, S, 0).value == pytest.approx(max(per))


def test_density_empty_set_rejected(G):
    with pytest.raises(ContractViolation):
        multilayer_density(G, [], 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.sampled_from([0, 0.5, 1, 2, 3.7]),
       st.data())
def test_prefix_scan_matches_subset_scan(seed, L, beta, data):
    G = gen_random("multilayer", 10, L, 0.45, seed)
    S = sorted(data.draw(st.sets(st.integers(0, 9), min_size=1)))
    got = multilayer_density(G, S, beta).value
    assert got == pytest.approx(oracles.density(oracles.ml_adjacency(G), S, beta), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5), st.data())
def test_support_size_monotone_in_beta(seed, L, data):
    G = gen_random("multilayer", 10, L, 0.4, seed)
    S = sorted(data.draw(st.sets(st.integers(0, 9), min_size=2)))
    sizes = [len(multilayer_density(G, S, b).support) for b in np.linspace(0, 4, 17)]
    assert sizes == sorted(sizes)


def test_densest_examples(G):
    r = densest_subgraph(G, DensestParams(1))
    assert G.labels_of(r.vertices) == ["1", "2", "3"]
    assert r.delta == 2.0 and r.guarantee == 0.25 and r.support_layers == ("A", "B")
    H = MultilayerGraph.from_edges(K4_PENDANT)
    r = densest_subgraph(H, DensestParams(0))
    assert H.labels_of(r.vertices) == ["1", "2", "3", "4"] and r.delta == 1.5


def test_densest_edgeless_raises():
    H = MultilayerGraph.from_edges([], vertices="ab", layers="x")
    with pytest.raises(NoSolutionError, match="no dense subgraph"):
        densest_subgraph(H)


def test_densest_params_validated():
    with pytest.raises(ContractViolation):
        DensestParams(-1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.sampled_from([0, 0.5, 1, 2]))
def test_densest_delta_recomputes(seed, L, beta):
    G = gen_random("multilayer", 10, L, 0.4, seed)
    if not sum(G.m_per_layer):
        return
    r = densest_subgraph(G, DensestParams(beta))
    assert r.delta == multilayer_density(G, r.vertices, beta).value
    assert r.support_layers


def test_safe_ceil():
    assert safe_ceil(0.6 * 5) == 3
    assert safe_ceil(0.7 * 10) == 7
    assert safe_ceil(2.5) == 3
    assert safe_ceil(0.1) == 1


def test_qc_examples(G):
    p = QuasiCliqueParams(1.0, 3, 1.0)
    assert G.labels_of(quasi_clique_prune(G, p)) == ["1", "2", "3"]
    assert [G.labels_of(S) for S in quasi_clique_enumerate(G, p, G.vertex_ids("123"))] == [
        ["1", "2", "3"]]
    p = QuasiCliqueParams(1.0, 3, 0.5)
    assert [G.labels_of(S) for S in quasi_clique_enumerate(G, p)] == [["1", "2", "3"]]
    assert quasi_clique_enumerate(G, QuasiCliqueParams(1.0, 5, 0.5)) == []


def test_qc_weak_threshold_keeps_non_isolated():
    H = MultilayerGraph.from_edges([("a", "b", 1), ("c", "d", 1)], vertices="abcde")
    p = QuasiCliqueParams(0.01, 2, 1.0)
    assert H.labels_of(quasi_clique_prune(H, p)) == ["a", "b", "c", "d"]


def test_qc_infeasible_size_prunes_everything(G):
    assert quasi_clique_prune(G, QuasiCliqueParams(0.5, 10, 1.0)).size == 0


def test_qc_guard():
    H = gen_random("multilayer", 30, 1, 0.1, 0)
    with pytest.raises(ResourceLimitError, match="prune"):
        quasi_clique_enumerate(H, QuasiCliqueParams(0.5, 3, 1.0))


@pytest.mark.parametrize("args", [(0, 3, 1), (1.5, 3, 1), (1, 1, 1), (1, 3, 0), (1, 3, 1.2)])
def test_qc_params_validated(args):
    with pytest.raises(ContractViolation):
        QuasiCliqueParams(*args)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.sampled_from([0.6, 0.8, 1.0]),
       st.sampled_from([2, 3, 4]), st.sampled_from([0.5, 1.0]))
def test_qc_enumerate_matches_oracle_and_prune_is_safe(seed, L, gamma, m, sup):
    G = gen_random("multilayer", 10, L, 0.5, seed)
    p = QuasiCliqueParams(gamma, m, sup)
    found = [frozenset(S.tolist()) for S in quasi_clique_enumerate(G, p)]
    assert sorted(found, key=sorted) == sorted(oracles.quasi_cliques(G, gamma, m, sup), key=sorted)
    pruned = set(quasi_clique_prune(G, p).tolist())
    assert all(S <= pruned for S in found)
    # enumerating inside the pruned set loses nothing
    assert [frozenset(S.tolist()) for S in quasi_clique_enumerate(G, p, sorted(pruned))] == found


def test_community_examples(G):
    r = community_search(G, CommunityQuery(tuple(G.vertex_ids("1")), 1))
    assert G.labels_of(r.vertices) == ["1", "2", "3"] and r.mu == 4.0
    r = community_search(G, CommunityQuery(tuple(G.vertex_ids("4")), 1))
    assert G.labels_of(r.vertices) == ["1", "2", "3", "4"] and r.mu == 2.0


def test_community_unknown_vertex(G):
    with pytest.raises(UnknownVertexError):
        G.vertex_ids(["1", "x"])
    with pytest.raises(UnknownVertexError):
        community_search(G, CommunityQuery((0, 99)))


def test_community_disconnected_query():
    H = MultilayerGraph.from_edges([("a", "b", 1), ("c", "d", 2)])
    with pytest.raises(NoSolutionError):
        community_search(H, CommunityQuery(tuple(H.vertex_ids("ac"))))


def test_community_empty_query():
    with pytest.raises(ContractViolation):
        CommunityQuery(())


def _brute_community(G, Q, beta):
    # best connected component holding Q over every core of the exhaustive oracle
    adjs = oracles.ml_adjacency(G)
    best = None
    for vec, S in sorted(oracles.all_ml_cores(G).items(), key=lambda kv: (sum(kv[0]), kv[0])):
        if not set(Q) <= S:
            continue
        comp, todo = {Q[0]}, [Q[0]]
        while todo:
            u = todo.pop()
            for a in adjs:
                for v in a[u] & S:
                    if v not in comp:
                        comp.add(v)
                        todo.append(v)
        if not set(Q) <= comp:
            continue
        mind = [min(len(a[u] & comp) for u in comp) for a in adjs]
        mu = max(min(mind[l] for l in sub) * len(sub) ** beta
                 for r in range(1, len(adjs) + 1)
                 for sub in itertools.combinations(range(len(adjs)), r))
        if best is None or mu > best[0] + 1e-12 or (abs(mu - best[0]) <= 1e-12
                                                     and len(comp) < len(best[1])):
            best = (mu, comp)
    return best


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3), st.sampled_from([0, 1, 2]), st.data())
def test_community_matches_oracle(seed, L, beta, data):
    G = gen_random("multilayer", 9, L, 0.45, seed)
    Q = sorted(data.draw(st.sets(st.integers(0, 8), min_size=1, max_size=2)))
    truth = _brute_community(G, Q, beta)
    if truth is None:
        with pytest.raises(NoSolutionError):
            community_search(G, CommunityQuery(tuple(Q), beta))
        return
    r = community_search(G, CommunityQuery(tuple(Q), beta))
    assert r.mu == pytest.approx(truth[0])
    assert set(r.vertices.tolist()) == truth[1]
    assert set(Q) <= set(r.vertices.tolist())
    assert min_degree_score(G, r.vertices, beta).value == r.mu
