"""Slow, obviously-correct reference implementations used by the tests.

Everything here works on plain Python sets and dicts, straight from the
definitions, and shares no code with the package beyond reading graph
edges.
"""

import itertools
import random
from fractions import Fraction


def adjacency(n, edges):
    adj = {u: set() for u in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def ml_adjacency(G):
    return [adjacency(G.n, G.edges(l)) for l in range(G.num_layers)]


def peel(adjs, k, start, rng=None):
    """Delete violators one at a time (in random order if ``rng`` is given)."""
    S = set(start)
    while True:
        bad = [u for u in sorted(S) if any(len(a[u] & S) < kl for a, kl in zip(adjs, k))]
        if not bad:
            return S
        if rng is None:
            S.discard(bad[0])
        else:
            S.discard(rng.choice(bad))


def core_numbers(n, edges):
    """Largest k whose k-core contains u, by peeling every k separately."""
    adj = adjacency(n, edges)
    c = [0] * n
    k = 1
    while True:
        core = peel([adj], [k], range(n))
        if not core:
            return c
        for u in core:
            c[u] = k
        k += 1


def all_ml_cores(G):
    """Map vector -> frozenset for every vector up to the per-layer max degree."""
    adjs = ml_adjacency(G)
    top = [max((len(a[u]) for u in a), default=0) for a in adjs]
    out = {}
    for k in itertools.product(*[range(t + 1) for t in top]):
        S = peel(adjs, k, range(G.n))
        if S:
            out[tuple(k)] = frozenset(S)
    return out


def maximal_ml(cores):
    return {k: S for k, S in cores.items()
            if not any(k2 != k and all(a >= b for a, b in zip(k2, k)) for k2 in cores)}


def all_span_cores(G):
    """Map (k, ts, te) -> frozenset via set intersections and plain peeling."""
    out = {}
    T = list(G.timestamps)
    for i, ts in enumerate(T):
        for te in T[i:]:
            edges = set(G.edges_at(ts))
            for t in range(ts + 1, te + 1):
                edges &= set(G.edges_at(t))
            adj = adjacency(G.n, edges)
            k = 1
            while True:
                S = peel([adj], [k], range(G.n))
                if not S:
                    break
                out[(k, ts, te)] = frozenset(S)
                k += 1
    return out


def maximal_spans(cores):
    return {key: S for key, S in cores.items()
            if not any(k2 >= key[0] and s2 <= key[1] and e2 >= key[2] and (k2, s2, e2) != key
                       for (k2, s2, e2) in cores)}


def density(adjs, S, beta):
    """max over every non-empty layer subset, no sorting tricks."""
    S = set(S)
    per = [Fraction(sum(len(a[u] & S) for u in S), 2 * len(S)) for a in adjs]
    best = 0.0
    for r in range(1, len(adjs) + 1):
        for sub in itertools.combinations(range(len(adjs)), r):
            best = max(best, float(min(per[l] for l in sub)) * r ** beta)
    return best


def densest_opt(G, beta):
    adjs = ml_adjacency(G)
    best = 0.0
    for r in range(1, G.n + 1):
        for S in itertools.combinations(range(G.n), r):
            best = max(best, density(adjs, S, beta))
    return best


def _ceil(x):
    # float products like 0.6 * 5 overshoot the integer they stand for
    r = round(x)
    return r if abs(x - r) < 1e-9 else int(x) + (x > int(x))


def quasi_cliques(G, gamma, m, min_sup):
    adjs = ml_adjacency(G)
    s = _ceil(min_sup * G.num_layers)
    out = []
    for r in range(m, G.n + 1):
        for S in itertools.combinations(range(G.n), r):
            need = _ceil(gamma * (r - 1))
            Sset = set(S)
            good = sum(all(len(a[u] & Sset) >= need for u in S) for a in adjs)
            if good >= s:
                out.append(frozenset(S))
    return out


def polarity_opt(G):
    A = {}
    for u, v, s in G.edges():
        A[(u, v)] = A[(v, u)] = s
    best = None
    for x in itertools.product((-1, 0, 1), repeat=G.n):
        size = sum(1 for e in x if e)
        if not size:
            continue
        num = sum(s * x[u] * x[v] for (u, v), s in A.items())
        val = Fraction(num, size)
        if best is None or val > best:
            best = val
    return float(best)


def shuffled_peels(G, k, seeds):
    """Distinct outcomes of random-order peeling, one per seed."""
    adjs = ml_adjacency(G)
    results = {frozenset(peel(adjs, k, range(G.n), random.Random(s))) for s in seeds}
    return results
