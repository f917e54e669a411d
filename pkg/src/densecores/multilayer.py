"""Multilayer core decomposition.

A coreness vector ``k`` (one non-negative threshold per layer) identifies
the multilayer ``k``-core: the largest vertex set in which every vertex has
at least ``k[l]`` neighbours in layer ``l``, for all layers at once. The
non-empty cores form a down-closed lattice under the componentwise order,
and ``k <= k'`` implies ``core(k') ⊆ core(k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._parallel import Pool
from .errors import ResourceLimitError
from .graphs import MultilayerGraph
from .peeling import Peeler

__all__ = [
    "DEFAULT_MAX_CORES",
    "MultilayerCore",
    "LatticeNode",
    "decompose_all",
    "decompose_naive",
    "maximal_cores",
    "filter_maximal",
    "collapse_distinct_sets",
    "dominates",
]

DEFAULT_MAX_CORES = 10_000_000
_BATCH = 64


@dataclass(frozen=True, eq=False)
class MultilayerCore:
    """A coreness vector together with its (non-empty) vertex set."""

    vector: tuple
    mask: np.ndarray
    size: int

    @classmethod
    def from_mask(cls, vector, mask, size=None):
        mask = np.array(mask, dtype=np.bool_)
        mask.setflags(write=False)
        return cls(tuple(int(x) for x in vector), mask,
                   int(mask.sum()) if size is None else int(size))

    @property
    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def level(self) -> int:
        return sum(self.vector)

    def sort_key(self):
        return (self.level, self.vector)

    def __repr__(self):
        return f"MultilayerCore(vector={self.vector}, size={self.size})"


@dataclass(frozen=True)
class LatticeNode:
    vector: tuple

    @property
    def parents(self) -> list[tuple]:
        v = self.vector
        return [v[:l] + (v[l] - 1,) + v[l + 1:] for l in range(len(v)) if v[l] > 0]

    @property
    def children(self) -> list[tuple]:
        v = self.vector
        return [v[:l] + (v[l] + 1,) + v[l + 1:] for l in range(len(v))]


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """True if ``a >= b`` componentwise and ``a != b``."""
    return all(x >= y for x, y in zip(a, b)) and tuple(a) != tuple(b)


def _check_cap(count, max_cores):
    if count > max_cores:
        raise ResourceLimitError(f"more than {max_cores} cores; raise the cap to continue")


def _next_level(vectors: Iterable[tuple]) -> list[tuple]:
    return sorted({c for v in vectors for c in LatticeNode(v).children})


def decompose_all(G: MultilayerGraph, max_cores: int = DEFAULT_MAX_CORES,
                  threads=None, distinct_sets: bool = False) -> list[MultilayerCore]:
    """Every non-empty multilayer core, in level-major lexicographic order.

    Breadth-first over the core lattice. A vector is only examined when all
    its parents are non-empty, and its core is peeled from the intersection
    of the parent cores rather than from the whole vertex set; degree
    counters are inherited from the smallest parent and corrected only for
    the vertices the intersection drops. Only the current frontier keeps its
    masks and degree arrays.

    With ``distinct_sets`` the output keeps, for each distinct vertex set,
    only the vectors that are maximal among those generating it.
    """
    cores = _lattice_bfs(G, max_cores, threads)
    return collapse_distinct_sets(cores) if distinct_sets else cores


def _layer_degeneracy(G) -> np.ndarray:
    ones = np.ones(G.n, dtype=np.bool_)
    out = []
    for l in range(G.num_layers):
        lo, hi = G.indptr[l, 0], G.indptr[l, -1]
        out.append(_kernels.core_numbers(G.indptr[l] - lo, G.indices[lo:hi], ones).max())
    return np.array(out, dtype=np.int64)


def _lattice_bfs(G, max_cores, threads, required=None):
    """Shared BFS; ``required`` is an optional id array every core must contain.

    Vectors are handled as mixed-radix integer codes (layer 0 most
    significant, so numeric order is lexicographic order). Component ``l``
    never exceeds the degeneracy of layer ``l`` alone, which fixes the radix
    and prunes children that are certainly empty.
    """
    n, L = G.n, G.num_layers
    if n == 0:
        return []
    req = np.zeros(n, dtype=np.bool_)
    if required is not None:
        req[required] = True
    top = _layer_degeneracy(G)
    radix = top + 1
    if float(np.prod(radix.astype(float))) >= 2.0 ** 62:
        raise ResourceLimitError("coreness-vector space too large to index")
    stride = np.ones(L, dtype=np.int64)
    for l in range(L - 2, -1, -1):
        stride[l] = stride[l + 1] * radix[l + 1]

    fcode = np.zeros(1, dtype=np.int64)
    fmask = np.ones((1, n), dtype=np.bool_)
    fdeg = Peeler.for_multilayer(G).degrees(fmask[0])[None]
    fsize = np.array([n], dtype=np.int64)
    fmask.setflags(write=False)
    out = [MultilayerCore((0,) * L, fmask[0], n)]

    with Pool(threads) as pool:
        while fcode.size:
            digits = fcode[:, None] // stride % radix
            cand = np.unique(np.concatenate(
                [fcode[digits[:, l] < top[l]] + stride[l] for l in range(L)]))
            cdig = cand[:, None] // stride % radix
            prow = np.full((cand.size, L), -1, dtype=np.int64)
            valid = np.ones(cand.size, dtype=np.bool_)
            for l in range(L):
                has = cdig[:, l] > 0
                pc = cand[has] - stride[l]
                r = np.minimum(np.searchsorted(fcode, pc), fcode.size - 1)
                ok = fcode[r] == pc
                prow[np.flatnonzero(has)[ok], l] = r[ok]
                valid[np.flatnonzero(has)[~ok]] = False
            cand, cdig, prow = cand[valid], cdig[valid], prow[valid]
            C = cand.size
            if not C:
                break
            psize = np.where(prow >= 0, fsize[np.maximum(prow, 0)], np.iinfo(np.int64).max)
            base = prow[np.arange(C), psize.argmin(axis=1)]
            cmask = np.empty((C, n), dtype=np.bool_)
            cdeg = np.empty((C, L, n), dtype=fdeg.dtype)
            csize = np.zeros(C, dtype=np.int64)

            def run(span, fmask=fmask, fdeg=fdeg, cdig=cdig, prow=prow, base=base,
                    cmask=cmask, cdeg=cdeg, csize=csize):
                _kernels.expand_level(G.indptr, G.indices, cdig, prow, base,
                                      fmask, fdeg, req, cmask, cdeg, csize, span[0], span[1])

            pool.map(run, [(lo, min(lo + _BATCH, C)) for lo in range(0, C, _BATCH)])
            keep = np.flatnonzero(csize)
            fcode, fmask, fdeg, fsize = cand[keep], cmask[keep], cdeg[keep], csize[keep]
            fmask.setflags(write=False)
            for row, (vec, size) in enumerate(zip(map(tuple, cdig[keep].tolist()),
                                                  fsize.tolist())):
                out.append(MultilayerCore(vec, fmask[row], size))
            _check_cap(len(out), max_cores)
    return out


def decompose_naive(G: MultilayerGraph, max_cores: int = DEFAULT_MAX_CORES,
                    threads=None) -> list[MultilayerCore]:
    """Reference enumeration: every candidate vector is peeled from the whole graph.

    Candidates at each level are the children of the previous level's
    non-empty vectors. Same output as :func:`decompose_all`.
    """
    n, L = G.n, G.num_layers
    if n == 0:
        return []
    peeler = Peeler.for_multilayer(G)
    out = []

    def peel(vec):
        mask, _, size = peeler.peel(vec)
        return (mask, size) if size else None

    level = [(0,) * L]
    with Pool(threads) as pool:
        while level:
            found = []
            for vec, res in zip(level, pool.map(peel, level)):
                if res is not None:
                    found.append(vec)
                    out.append(MultilayerCore.from_mask(vec, res[0], res[1]))
            _check_cap(len(out), max_cores)
            level = _next_level(found)
    return out


def maximal_cores(G: MultilayerGraph, max_cores: int = DEFAULT_MAX_CORES) -> list[MultilayerCore]:
    """Cores whose vector is not dominated by any other non-empty core's vector.

    Depth-first over the thresholds of layers ``0..L-2`` (the prefix), each
    raise peeling the previous core and bounded by the degeneracy of that
    layer inside the current core. For a prefix ``p`` let ``f(p)`` be the
    largest last-layer threshold with a non-empty core. Prefixes are visited
    with thresholds in descending order, so every ``f(p + e_l)`` is known
    when ``p`` is reached; with ``lb`` their maximum, ``(p, f(p))`` is
    maximal iff peeling at last-layer threshold ``lb + 1`` leaves something,
    i.e. iff all children of the node are empty. Non-maximal prefixes cost
    one peel and no vertex set is kept for them.
    """
    n, L = G.n, G.num_layers
    if n == 0:
        return []
    peeler = Peeler.for_multilayer(G)
    last = L - 1
    reach = {}
    found = []

    def layer_bound(layer, mask):
        lo, hi = G.indptr[layer, 0], G.indptr[layer, -1]
        return int(_kernels.core_numbers(G.indptr[layer] - lo, G.indices[lo:hi], mask).max())

    def raised(k, mask, deg):
        m, d = mask.copy(), deg.copy()
        return m, d, peeler.cascade(k, m, d)

    def min_degree(layer, mask, deg):
        return int(deg[layer][mask].min())

    def descend(k, j, mask, deg, size):
        if j == last:
            settle(k, mask, deg, size)
            return
        bound = layer_bound(j, mask)
        chain = [(mask, deg, size)]
        for c in range(1, bound + 1):
            if min_degree(j, *chain[-1][:2]) < c:
                k[j] = c
                step = raised(k, *chain[-1][:2])
                if step[2] == 0:
                    break
                chain.append(step)
            else:
                chain.append(chain[-1])
        for c in range(len(chain) - 1, -1, -1):
            k[j] = c
            descend(k, j + 1, *chain[c])
        k[j] = 0

    def settle(k, mask, deg, size):
        prefix = tuple(k[:last].tolist())
        lb = -1
        for l in range(last):
            nb = prefix[:l] + (prefix[l] + 1,) + prefix[l + 1:]
            lb = max(lb, reach.get(nb, -1))
        k[last] = lb + 1
        mask, deg, size = raised(k, mask, deg)
        if size == 0:
            reach[prefix] = lb
            k[last] = 0
            return
        while True:
            c = min_degree(last, mask, deg) + 1
            k[last] = c
            step = raised(k, mask, deg)
            if step[2] == 0:
                break
            mask, deg, size = step
        k[last] = c - 1
        reach[prefix] = c - 1
        found.append(MultilayerCore.from_mask(k, mask, size))
        _check_cap(len(found), max_cores)
        k[last] = 0

    mask = np.ones(n, dtype=np.bool_)
    descend(np.zeros(L, dtype=np.int64), 0, mask, peeler.degrees(mask), n)
    found.sort(key=MultilayerCore.sort_key)
    return found


def filter_maximal(cores: Sequence[MultilayerCore]) -> list[MultilayerCore]:
    """Keep the cores with no dominating vector in ``cores``.

    ``cores`` must be a complete decomposition: then a vector is dominated
    iff one of its children is present, which is what gets checked.
    """
    present = {c.vector for c in cores}
    return [c for c in cores
            if not any(ch in present for ch in LatticeNode(c.vector).children)]


def collapse_distinct_sets(cores: Sequence[MultilayerCore]) -> list[MultilayerCore]:
    """One record per vertex set, keeping only its maximal generating vectors."""
    # Vectors sharing a vertex set form a convex region of the lattice, so a
    # vector is maximal in its group iff no child belongs to the same group.
    owner = {c.vector: c.mask.tobytes() for c in cores}
    return [c for c in cores
            if not any(owner.get(ch) == owner[c.vector] for ch in LatticeNode(c.vector).children)]
