"""Compiled inner loops shared by the peeling algorithms.

Adjacency is stored CSR-style. Multilayer kernels take a 2-D ``indptr`` of
shape ``(L, n + 1)`` whose offsets index into one flat ``indices`` array, so a
single-layer graph is just the ``L == 1`` case.

Degree arrays have shape ``(L, n)`` and are only meaningful for vertices whose
``alive`` flag is set.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def csr_from_codes(codes, n):
    # codes are sorted u * n + v with u < v; rows come out sorted because all
    # lower neighbours of x are emitted before any code with first endpoint x.
    indptr = np.zeros(n + 1, dtype=np.int64)
    for c in codes:
        indptr[c // n + 1] += 1
        indptr[c % n + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    fill = indptr[:-1].copy()
    indices = np.empty(indptr[n], dtype=np.int64)
    for c in codes:
        u = c // n
        v = c % n
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    return indptr, indices


@njit(cache=True, nogil=True)
def core_numbers(indptr, indices, alive):
    """Bucket-queue core decomposition restricted to ``alive`` vertices.

    ``indptr`` is 1-D and may carry a constant offset (a slice of a stacked
    multilayer array). Dead vertices get core number 0.
    """
    n = alive.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    md = 0
    for u in range(n):
        if alive[u]:
            c = 0
            for j in range(indptr[u], indptr[u + 1]):
                if alive[indices[j]]:
                    c += 1
            deg[u] = c
            if c > md:
                md = c
    bins = np.zeros(md + 1, dtype=np.int64)
    for u in range(n):
        bins[deg[u]] += 1
    start = 0
    for d in range(md + 1):
        num = bins[d]
        bins[d] = start
        start += num
    pos = np.empty(n, dtype=np.int64)
    vert = np.empty(n, dtype=np.int64)
    for u in range(n):
        pos[u] = bins[deg[u]]
        vert[pos[u]] = u
        bins[deg[u]] += 1
    for d in range(md, 0, -1):
        bins[d] = bins[d - 1]
    if md >= 0:
        bins[0] = 0
    for i in range(n):
        v = vert[i]
        if not alive[v]:
            continue
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if alive[u] and deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bins[du] += 1
                deg[u] -= 1
    return deg


@njit(cache=True, nogil=True)
def induced_degrees(indptr, indices, alive, deg):
    """Fill ``deg`` with per-layer degrees inside ``alive`` (from scratch)."""
    L = indptr.shape[0]
    n = alive.shape[0]
    for l in range(L):
        for u in range(n):
            c = 0
            if alive[u]:
                for j in range(indptr[l, u], indptr[l, u + 1]):
                    if alive[indices[j]]:
                        c += 1
            deg[l, u] = c


@njit(cache=True, nogil=True)
def shrink(indptr, indices, alive, start, deg):
    """Update ``deg`` (valid for ``alive``) so it is valid for ``start``.

    ``start`` must be a subset of ``alive``. Cost is proportional to the
    adjacency of the dropped vertices only.
    """
    L = indptr.shape[0]
    n = alive.shape[0]
    for u in range(n):
        if alive[u] and not start[u]:
            for l in range(L):
                for j in range(indptr[l, u], indptr[l, u + 1]):
                    deg[l, indices[j]] -= 1


@njit(cache=True, nogil=True)
def cascade(indptr, indices, k, alive, deg):
    """Delete every vertex violating some layer threshold, cascading.

    Mutates ``alive`` and ``deg`` in place and returns the surviving count.
    The result is the unique maximal subset of ``alive`` meeting ``k``.
    """
    L = indptr.shape[0]
    n = alive.shape[0]
    stack = np.empty(n, dtype=np.int64)
    top = 0
    size = 0
    for u in range(n):
        if alive[u]:
            size += 1
            for l in range(L):
                if deg[l, u] < k[l]:
                    alive[u] = False
                    stack[top] = u
                    top += 1
                    break
    size -= top
    while top > 0:
        top -= 1
        u = stack[top]
        for l in range(L):
            for j in range(indptr[l, u], indptr[l, u + 1]):
                v = indices[j]
                deg[l, v] -= 1
                if alive[v] and deg[l, v] < k[l]:
                    alive[v] = False
                    stack[top] = v
                    top += 1
                    size -= 1
    return size


@njit(cache=True, nogil=True)
def layer_edge_counts(indptr, indices, alive):
    L = indptr.shape[0]
    n = alive.shape[0]
    out = np.zeros(L, dtype=np.int64)
    for l in range(L):
        c = 0
        for u in range(n):
            if alive[u]:
                for j in range(indptr[l, u], indptr[l, u + 1]):
                    v = indices[j]
                    if v > u and alive[v]:
                        c += 1
        out[l] = c
    return out


@njit(cache=True, nogil=True)
def expand_level(indptr, indices, vecs, prow, base, fmask, fdeg, required,
                 out_mask, out_deg, out_size, lo, hi):
    """Peel candidates ``lo..hi`` of one lattice level.

    Candidate ``i`` has vector ``vecs[i]`` and parent rows ``prow[i]`` into the
    frontier arrays (``-1`` where the component is 0). Its core is peeled
    from the intersection of its parents' masks, starting from the degree
    counters of parent ``base[i]``. Sizes of cores missing a ``required``
    vertex are reported as 0.
    """
    L = indptr.shape[0]
    n = fmask.shape[1]
    for i in range(lo, hi):
        b = base[i]
        mask = out_mask[i]
        deg = out_deg[i]
        for u in range(n):
            ok = fmask[b, u]
            if ok:
                for j in range(L):
                    r = prow[i, j]
                    if r >= 0 and not fmask[r, u]:
                        ok = False
                        break
            mask[u] = ok
        missing = False
        for u in range(n):
            if required[u] and not mask[u]:
                missing = True
                break
        if missing:
            out_size[i] = 0
            continue
        for l in range(L):
            for u in range(n):
                deg[l, u] = fdeg[b, l, u]
        for u in range(n):
            if fmask[b, u] and not mask[u]:
                for l in range(L):
                    for j in range(indptr[l, u], indptr[l, u + 1]):
                        deg[l, indices[j]] -= 1
        size = cascade(indptr, indices, vecs[i], mask, deg)
        for u in range(n):
            if required[u] and not mask[u]:
                size = 0
                break
        out_size[i] = size


@njit(cache=True, nogil=True)
def union_component(indptr, indices, alive, seed):
    """Vertices of ``alive`` reachable from ``seed`` through edges of any layer."""
    L = indptr.shape[0]
    n = alive.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[seed] = True
    stack[0] = seed
    top = 1
    while top > 0:
        top -= 1
        u = stack[top]
        for l in range(L):
            for j in range(indptr[l, u], indptr[l, u + 1]):
                v = indices[j]
                if alive[v] and not seen[v]:
                    seen[v] = True
                    stack[top] = v
                    top += 1
    return seen


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True, nogil=True)
def quasi_clique_scan(adj, min_size, support, thresholds):
    """Bitmask subsets of ``c`` candidates that are frequent quasi-cliques.

    ``adj[l, i]`` is the neighbour bitmask of candidate ``i`` in layer ``l``;
    ``thresholds[s]`` is the degree each member needs in a set of size ``s``.
    A subset qualifies when at least ``support`` layers give every member
    that degree.
    """
    L, c = adj.shape
    out = []
    for S in range(1, 1 << c):
        s = _popcount(S)
        if s < min_size:
            continue
        need = thresholds[s]
        good = 0
        for l in range(L):
            ok = True
            for i in range(c):
                if (S >> i) & 1 and _popcount(adj[l, i] & S) < need:
                    ok = False
                    break
            if ok:
                good += 1
                if good >= support:
                    break
        if good >= support:
            out.append(S)
    return out
