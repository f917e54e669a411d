"""Single-layer core decomposition and constrained peeling.

Everything else in the package is built from two moves: the bucket-queue
core decomposition of one graph view, and the cascade that deletes any
vertex violating a per-layer degree threshold until none is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ContractViolation
from .graphs import GraphView, MultilayerGraph, TemporalGraph, as_mask

__all__ = [
    "CoreIndexing",
    "core_decomposition",
    "peel_to_vector",
    "peel_interval",
    "Peeler",
]


@dataclass(frozen=True, eq=False)
class CoreIndexing:
    """Core number of every vertex and the maximum order ``k_star``."""

    core_number: np.ndarray
    k_star: int

    def core(self, k: int) -> np.ndarray:
        """Sorted ids of the ``k``-core."""
        return np.flatnonzero(self.core_number >= k)

    def chain(self) -> list[np.ndarray]:
        """The nested cores ``C_0 ⊇ C_1 ⊇ ... ⊇ C_{k_star}``."""
        return [self.core(k) for k in range(self.k_star + 1)]


def core_decomposition(view: GraphView, within=None) -> CoreIndexing:
    """Core numbers of ``view`` in O(n + m).

    ``within`` optionally restricts the decomposition to a vertex subset;
    vertices outside it get core number 0.
    """
    alive = as_mask(view.n, within)
    c = _kernels.core_numbers(view.indptr, view.indices, alive)
    c.setflags(write=False)
    return CoreIndexing(c, int(c.max()) if c.size else 0)


class Peeler:
    """Cascading deletion over a stack of layers sharing one vertex set.

    Holds the CSR arrays and exposes the three kernel moves on boolean masks
    and ``(L, n)`` degree arrays. Stateless apart from the graph, so one
    instance can be shared between threads.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray):
        self.indptr = np.atleast_2d(indptr)
        self.indices = indices
        self.L = self.indptr.shape[0]
        self.n = self.indptr.shape[1] - 1

    @classmethod
    def for_multilayer(cls, G: MultilayerGraph) -> "Peeler":
        return cls(G.indptr, G.indices)

    @classmethod
    def for_view(cls, view: GraphView) -> "Peeler":
        return cls(view.indptr[None, :], view.indices)

    def degrees(self, mask: np.ndarray) -> np.ndarray:
        deg = np.empty((self.L, self.n), dtype=np.int32)
        _kernels.induced_degrees(self.indptr, self.indices, mask, deg)
        return deg

    def shrink(self, mask: np.ndarray, start: np.ndarray, deg: np.ndarray) -> None:
        _kernels.shrink(self.indptr, self.indices, mask, start, deg)

    def cascade(self, k: np.ndarray, mask: np.ndarray, deg: np.ndarray) -> int:
        return _kernels.cascade(self.indptr, self.indices, k, mask, deg)

    def peel(self, k, start=None) -> tuple[np.ndarray, np.ndarray, int]:
        """Peel from ``start`` (all vertices if None); returns mask, degrees, size."""
        mask = as_mask(self.n, start)
        deg = self.degrees(mask)
        size = self.cascade(np.asarray(k, dtype=np.int64), mask, deg)
        return mask, deg, size

    def edge_counts(self, mask: np.ndarray) -> np.ndarray:
        return _kernels.layer_edge_counts(self.indptr, self.indices, mask)


def _check_vector(k, L) -> np.ndarray:
    k = np.asarray(k, dtype=np.int64).ravel()
    if k.shape != (L,):
        raise ContractViolation(f"coreness vector has length {k.size}, graph has {L} layers")
    if (k < 0).any():
        raise ContractViolation("coreness vector entries must be non-negative")
    return k


def peel_to_vector(G: MultilayerGraph, k: Sequence[int], start=None) -> np.ndarray:
    """Largest subset of ``start`` where every vertex has degree ``>= k[l]`` in each layer ``l``.

    ``start`` must contain the ``k``-core (the whole vertex set always does).
    The answer does not depend on deletion order; an empty array is a
    normal result.
    """
    k = _check_vector(k, G.num_layers)
    mask, _, _ = Peeler.for_multilayer(G).peel(k, start)
    return np.flatnonzero(mask)


def peel_interval(G: TemporalGraph, k: int, span: tuple[int, int], start=None) -> np.ndarray:
    """Largest subset of ``start`` with degree ``>= k`` in the intersection graph of ``span``."""
    if k < 0:
        raise ContractViolation("order must be non-negative")
    ts, te = span
    view = G.interval_view(ts, te)
    mask, _, _ = Peeler.for_view(view).peel([k], start)
    return np.flatnonzero(mask)
