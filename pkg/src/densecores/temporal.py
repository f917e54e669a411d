"""Span-cores of temporal graphs.

The ``(k, [ts, te])`` span-core is the ``k``-core of the graph whose edges
are present at *every* timestamp of ``[ts, te]``. Intersection semantics
make the family monotone: shrinking the span or lowering ``k`` can only
grow the core. Records with ``k = 0`` (the whole vertex set) are never
emitted.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from ._parallel import Pool
from .errors import ResourceLimitError
from .graphs import TemporalGraph

__all__ = [
    "DEFAULT_MAX_RECORDS",
    "SpanCore",
    "SpanStats",
    "span_cores_all",
    "span_cores_naive",
    "maximal_span_cores",
    "filter_maximal_spans",
    "span_statistics",
]

DEFAULT_MAX_RECORDS = 10_000_000


@dataclass(frozen=True, eq=False)
class SpanCore:
    k: int
    ts: int
    te: int
    mask: np.ndarray
    size: int

    @property
    def span(self) -> tuple[int, int]:
        return self.ts, self.te

    @property
    def length(self) -> int:
        return self.te - self.ts + 1

    @property
    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def sort_key(self):
        return (self.ts, self.te, self.k)

    def __repr__(self):
        return f"SpanCore(k={self.k}, span=[{self.ts}, {self.te}], size={self.size})"


@dataclass(frozen=True)
class SpanStats:
    """Span-length histogram of a set of span-cores, plus the longest span per order."""

    histogram: dict
    max_span_by_k: dict

    @property
    def total(self) -> int:
        return sum(self.histogram.values())


def _core(k, ts, te, mask):
    mask.setflags(write=False)
    return SpanCore(int(k), int(ts), int(te), mask, int(np.count_nonzero(mask)))


def _all_orders(ts, te, cores):
    return [_core(k, ts, te, cores >= k) for k in range(1, int(cores.max()) + 1)]


def _check_cap(count, cap):
    if count > cap:
        raise ResourceLimitError(f"more than {cap} span-cores; raise the cap to continue")


def span_cores_all(G: TemporalGraph, max_records: int = DEFAULT_MAX_RECORDS,
                   threads=None) -> list[SpanCore]:
    """Every non-empty span-core with ``k >= 1``, sorted by ``(ts, te, k)``.

    One sweep per start ``ts`` extends ``te`` while intersecting one more
    snapshot into the running edge set, and stops at the first empty
    intersection since every longer span is empty too. Each interval gets a
    single bucket-queue decomposition, restricted to the vertices of the
    previous interval's 1-core (its order-``k`` cores contain this
    interval's), so all orders come out of one linear pass.
    """
    n = G.n

    def sweep(ts):
        out = []
        codes = G.codes_at(ts)
        alive = np.ones(n, dtype=np.bool_)
        for te in range(ts, G.t_max + 1):
            if te > ts:
                codes = np.intersect1d(codes, G.codes_at(te), assume_unique=True)
            if codes.size == 0:
                break
            indptr, indices = _kernels.csr_from_codes(codes, n)
            c = _kernels.core_numbers(indptr, indices, alive)
            out.extend(_all_orders(ts, te, c))
            alive = c >= 1
        return out

    records = []
    with Pool(threads) as pool:
        for part in pool.map(sweep, G.timestamps):
            records.extend(part)
            _check_cap(len(records), max_records)
    return records


def span_cores_naive(G: TemporalGraph, max_records: int = DEFAULT_MAX_RECORDS,
                     threads=None) -> list[SpanCore]:
    """Reference: each of the ``|T|(|T|+1)/2`` intervals decomposed from scratch."""
    n = G.n
    every = np.ones(n, dtype=np.bool_)

    def interval(span):
        ts, te = span
        indptr, indices = _kernels.csr_from_codes(G.interval_codes(ts, te), n)
        c = _kernels.core_numbers(indptr, indices, every)
        return _all_orders(ts, te, c) if c.size else []

    spans = [(ts, te) for ts in G.timestamps for te in range(ts, G.t_max + 1)]
    records = []
    with Pool(threads) as pool:
        for part in pool.map(interval, spans):
            records.extend(part)
            _check_cap(len(records), max_records)
    return records


def maximal_span_cores(G: TemporalGraph) -> list[SpanCore]:
    """Span-cores not dominated by another with ``k' >= k`` and a span containing theirs.

    For each interval only the top order ``K(ts, te)`` matters: ``(k, Δ)`` is
    maximal iff ``k = K(Δ)`` and both one-step extensions of ``Δ`` have a
    smaller top order. Starts are swept in descending order, so the row of
    the next later start is at hand and bounds this row from above
    (``K(ts, te) <= K(ts + 1, te)``), as does the previous ``te``. A single
    peel at that bound usually settles ``K``; a full decomposition is only
    run when the bound fails. Left-extension checks of a row's candidates
    are resolved while sweeping the following (earlier) start.
    """
    n = G.n
    every = np.ones(n, dtype=np.bool_)
    later = {}
    pending = []
    found = []

    for ts in range(G.t_max, G.t_min - 1, -1):
        row = {}
        candidates = []
        codes = G.codes_at(ts)
        prev = None
        for te in range(ts, G.t_max + 1):
            if te > ts:
                codes = np.intersect1d(codes, G.codes_at(te), assume_unique=True)
            if codes.size == 0:
                break
            indptr, indices = _kernels.csr_from_codes(codes, n)
            top, mask = None, None
            if prev is not None:
                bound = min(prev[0], later.get(te, 0))
                if bound > 0:
                    # the previous top core contains C_{bound,[ts,te]} when bound equals its order
                    start = prev[2].copy() if bound == prev[0] else every.copy()
                    deg = np.empty((1, n), dtype=np.int32)
                    _kernels.induced_degrees(indptr[None], indices, start, deg)
                    if _kernels.cascade(indptr[None], indices, np.array([bound]), start, deg):
                        top, mask = bound, start
            if top is None:
                c = _kernels.core_numbers(indptr, indices, every)
                top = int(c.max())
                mask = c >= top
            if prev is not None and top < prev[0]:
                candidates.append(prev)
            row[te] = top
            prev = (top, te, mask)
        if prev is not None:
            candidates.append(prev)
        for k, te, mask in pending:
            if row.get(te, 0) < k:
                found.append(_core(k, ts + 1, te, mask))
        pending = candidates
        later = row
    for k, te, mask in pending:
        found.append(_core(k, G.t_min, te, mask))
    found.sort(key=SpanCore.sort_key)
    return found


def filter_maximal_spans(cores: Sequence[SpanCore]) -> list[SpanCore]:
    """Dominance filter over a complete span-core decomposition.

    In a complete decomposition ``(k, [ts, te])`` is dominated iff one of
    ``(k + 1, [ts, te])``, ``(k, [ts - 1, te])``, ``(k, [ts, te + 1])`` is
    present.
    """
    present = {(c.k, c.ts, c.te) for c in cores}
    return [c for c in cores
            if (c.k + 1, c.ts, c.te) not in present
            and (c.k, c.ts - 1, c.te) not in present
            and (c.k, c.ts, c.te + 1) not in present]


def span_statistics(maximal: Sequence[SpanCore]) -> SpanStats:
    hist = Counter(c.length for c in maximal)
    longest = {}
    for c in maximal:
        longest[c.k] = max(longest.get(c.k, 0), c.length)
    return SpanStats(dict(sorted(hist.items())), dict(sorted(longest.items())))
