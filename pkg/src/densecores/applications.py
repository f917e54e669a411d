"""Applications of the multilayer core decomposition.

* densest subgraph under the multilayer density ``δ_β``,
* search-space pruning for frequent cross-graph quasi-cliques,
* community search around a set of query vertices.

Both objectives share one shape: given a per-layer score ``x_l`` (edge
density or minimum degree), take the best layer subset ``L̂`` of the
trade-off ``min_{l in L̂} x_l * |L̂|^β``. The best subset of each size is a
prefix of the layers sorted by score, so a sort and a scan suffice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from . import _kernels
from ._parallel import Pool
from .errors import ContractViolation, NoSolutionError, ResourceLimitError, UnknownVertexError
from .graphs import MultilayerGraph, as_mask
from .multilayer import DEFAULT_MAX_CORES, MultilayerCore, _lattice_bfs, decompose_all
from .peeling import Peeler

__all__ = [
    "DensestParams",
    "DensestResult",
    "QuasiCliqueParams",
    "CommunityQuery",
    "CommunityResult",
    "Density",
    "multilayer_density",
    "densest_subgraph",
    "quasi_clique_prune",
    "quasi_clique_enumerate",
    "community_search",
    "safe_ceil",
    "min_degree_score",
    "ENUMERATE_LIMIT",
]

ENUMERATE_LIMIT = 25
_REL_TIE = 1e-12


def safe_ceil(x: float) -> int:
    """Ceiling that treats values within 1e-9 of an integer as that integer.

    ``0.6 * 5`` is ``3.0000000000000004`` in floating point; the degree
    threshold it stands for is 3, not 4.
    """
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


class Density(NamedTuple):
    value: float
    support: tuple  # layer indices, ascending


def _tradeoff(scores, beta) -> Density:
    """Best ``min(scores over L̂) * |L̂|^β``; near-ties go to the larger ``L̂``.

    Preferring the larger prefix on ties keeps the chosen support size
    non-decreasing in ``β``.
    """
    scores = np.asarray(scores, dtype=float)
    order = np.argsort(-scores, kind="stable")
    best, best_i = -1.0, 1
    for i in range(1, len(order) + 1):
        val = scores[order[i - 1]] * i ** beta
        if val >= best - _REL_TIE * abs(best):
            best, best_i = max(val, best), i
    return Density(float(best), tuple(sorted(int(l) for l in order[:best_i])))


def multilayer_density(G: MultilayerGraph, S, beta: float) -> Density:
    """``δ_β(S)`` and the layer subset attaining it."""
    if beta < 0:
        raise ContractViolation("beta must be non-negative")
    mask = as_mask(G.n, S)
    size = int(mask.sum())
    if size == 0:
        raise ContractViolation("density of an empty vertex set")
    counts = Peeler.for_multilayer(G).edge_counts(mask)
    return _tradeoff(counts / size, beta)


# -- densest subgraph ------------------------------------------------------

@dataclass(frozen=True)
class DensestParams:
    beta: float = 1.0

    def __post_init__(self):
        if not self.beta >= 0:
            raise ContractViolation("beta must be non-negative")


@dataclass(frozen=True, eq=False)
class DensestResult:
    vertices: np.ndarray
    delta: float
    support_layers: tuple  # layer labels
    guarantee: float
    vector: tuple


def densest_subgraph(G: MultilayerGraph, params: DensestParams = DensestParams(),
                     threads=None, max_cores: int = DEFAULT_MAX_CORES,
                     cores=None) -> DensestResult:
    """Core of maximum ``δ_β``; within ``1/(2|L|^β)`` of the best vertex subset.

    Ties (relative 1e-12) go to the smaller core, then to the earlier vector
    in level-major order. ``cores`` may pass a precomputed decomposition.
    """
    if sum(G.m_per_layer) == 0:
        raise NoSolutionError("no dense subgraph: the graph has no edges")
    if cores is None:
        cores = decompose_all(G, max_cores=max_cores, threads=threads)
    peeler = Peeler.for_multilayer(G)

    def score(core):
        return _tradeoff(peeler.edge_counts(core.mask) / core.size, params.beta)

    with Pool(threads) as pool:
        scores = pool.map(score, cores)
    best = None
    for core, d in zip(cores, scores):
        if best is None or d.value > best[1].value * (1 + _REL_TIE) or (
                d.value >= best[1].value * (1 - _REL_TIE) and core.size < best[0].size):
            best = (core, d)
    core, d = best
    return DensestResult(core.vertices, d.value, tuple(G.layers[l] for l in d.support),
                         1.0 / (2 * G.num_layers ** params.beta), core.vector)


# -- quasi-cliques ---------------------------------------------------------

@dataclass(frozen=True)
class QuasiCliqueParams:
    gamma: float
    min_size: int
    min_sup: float

    def __post_init__(self):
        if not 0 < self.gamma <= 1:
            raise ContractViolation("gamma must lie in (0, 1]")
        if self.min_size < 2:
            raise ContractViolation("min_size must be at least 2")
        if not 0 < self.min_sup <= 1:
            raise ContractViolation("min_sup must lie in (0, 1]")

    def degree_threshold(self, size: int) -> int:
        return safe_ceil(self.gamma * (size - 1))

    def support(self, num_layers: int) -> int:
        return safe_ceil(self.min_sup * num_layers)


def quasi_clique_prune(G: MultilayerGraph, params: QuasiCliqueParams) -> np.ndarray:
    """Vertices that can belong to a frequent cross-graph quasi-clique of size ``>= m``.

    Such a set has, in each of at least ``s`` layers, every member with at
    least ``t = ⌈γ(m-1)⌉`` neighbours inside it, so it lies in the core whose
    vector is ``t`` on those layers and 0 elsewhere. Every qualifying core
    is contained in one of these minimal ones, so the union over layer
    subsets of size ``s`` is the union over all qualifying cores. Minimal
    cores with fewer than ``m`` vertices cannot host such a set and are
    skipped.
    """
    L = G.num_layers
    t = params.degree_threshold(params.min_size)
    s = params.support(L)
    peeler = Peeler.for_multilayer(G)
    keep = np.zeros(G.n, dtype=np.bool_)
    for layers in combinations(range(L), s):
        k = np.zeros(L, dtype=np.int64)
        k[list(layers)] = t
        mask, _, size = peeler.peel(k)
        if size >= params.min_size:
            keep |= mask
    return np.flatnonzero(keep)


def quasi_clique_enumerate(G: MultilayerGraph, params: QuasiCliqueParams,
                           candidates=None) -> list[np.ndarray]:
    """Every subset of ``candidates`` that is a frequent cross-graph quasi-clique.

    Exhaustive over the ``2^c`` subsets, so ``c`` is capped at
    :data:`ENUMERATE_LIMIT`; prune first to get there. Each result is a
    sorted id array; results are ordered by size, then lexicographically.
    """
    cand = np.flatnonzero(as_mask(G.n, candidates))
    c = cand.size
    if c > ENUMERATE_LIMIT:
        raise ResourceLimitError(
            f"{c} candidates exceed the enumeration limit of {ENUMERATE_LIMIT}; "
            "run quasi_clique_prune first")
    if c < params.min_size:
        return []
    pos = np.full(G.n, -1, dtype=np.int64)
    pos[cand] = np.arange(c)
    adj = np.zeros((G.num_layers, c), dtype=np.int64)
    for l in range(G.num_layers):
        for i, u in enumerate(cand):
            p = pos[G.neighbors(l, u)]
            adj[l, i] = int(np.bitwise_or.reduce(np.left_shift(1, p[p >= 0]), initial=0))
    thresholds = np.array([params.degree_threshold(max(s, 1)) for s in range(c + 1)],
                          dtype=np.int64)
    found = _kernels.quasi_clique_scan(adj, params.min_size,
                                       params.support(G.num_layers), thresholds)
    sets = [cand[[i for i in range(c) if (S >> i) & 1]] for S in found]
    sets.sort(key=lambda a: (a.size, a.tolist()))
    return sets


# -- community search ------------------------------------------------------

@dataclass(frozen=True)
class CommunityQuery:
    vertices: tuple  # vertex ids
    beta: float = 1.0

    def __post_init__(self):
        if not self.vertices:
            raise ContractViolation("query must contain at least one vertex")
        if not self.beta >= 0:
            raise ContractViolation("beta must be non-negative")


@dataclass(frozen=True, eq=False)
class CommunityResult:
    vertices: np.ndarray
    mu: float
    support_layers: tuple  # layer labels
    vector: tuple


def min_degree_score(G: MultilayerGraph, S, beta: float) -> Density:
    """``μ_β(S)``: the trade-off applied to per-layer minimum degrees inside ``S``."""
    mask = as_mask(G.n, S)
    if not mask.any():
        raise ContractViolation("score of an empty vertex set")
    deg = Peeler.for_multilayer(G).degrees(mask)
    return _tradeoff(deg[:, mask].min(axis=1), beta)


def community_search(G: MultilayerGraph, query: CommunityQuery, threads=None,
                     max_cores: int = DEFAULT_MAX_CORES, cores=None) -> CommunityResult:
    """Best connected community containing every query vertex.

    Candidates are the connected components (through edges of any layer)
    holding the query inside each core that contains it; the one with the
    largest ``μ_β`` wins, ties going to the smaller set and then to the
    earlier vector. Only cores containing the query are ever peeled: a core
    that misses a query vertex has no descendant that contains it.
    ``cores`` may pass a precomputed complete decomposition instead.
    """
    q = np.asarray(query.vertices, dtype=np.int64)
    bad = q[(q < 0) | (q >= G.n)]
    if bad.size:
        raise UnknownVertexError(int(bad[0]))
    if cores is None:
        cores = _lattice_bfs(G, max_cores, threads, required=q)
    else:
        cores = [c for c in cores if c.mask[q].all()]

    def evaluate(core: MultilayerCore):
        comp = _kernels.union_component(G.indptr, G.indices, core.mask, q[0])
        if not comp[q].all():
            return None
        return comp, min_degree_score(G, comp, query.beta)

    with Pool(threads) as pool:
        scored = pool.map(evaluate, cores)
    best = None
    for core, res in zip(cores, scored):
        if res is None:
            continue
        comp, d = res
        size = int(comp.sum())
        if best is None or d.value > best[2].value * (1 + _REL_TIE) or (
                d.value >= best[2].value * (1 - _REL_TIE) and size < best[1]):
            best = (core, size, d, comp)
    if best is None:
        raise NoSolutionError("no community: the query vertices are never connected in one core")
    core, _, d, comp = best
    return CommunityResult(np.flatnonzero(comp), d.value,
                           tuple(G.layers[l] for l in d.support), core.vector)
