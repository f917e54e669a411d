"""Seeded Erdős–Rényi generators for the three graph kinds."""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation
from .graphs import MultilayerGraph, SignedGraph, TemporalGraph

__all__ = ["KINDS", "random_pairs", "gen_random"]

KINDS = ("multilayer", "temporal", "signed")


def random_pairs(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    """Each of the ``n(n-1)/2`` pairs independently with probability ``p``; shape ``(k, 2)``."""
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(iu.size) < p
    return np.column_stack([iu[keep], ju[keep]])


def gen_random(kind: str, n: int, size: int = 1, p: float = 0.1, seed: int = 0):
    """G(n, p) per layer, per snapshot, or once with fair random signs.

    ``size`` is the number of layers (multilayer) or timestamps (temporal,
    ``0..size-1``); it is ignored for signed graphs. Vertices are labelled
    ``0..n-1`` and layers ``0..size-1``.
    """
    if kind not in KINDS:
        raise ContractViolation(f"kind must be one of {', '.join(KINDS)}")
    if n < 0 or size < 1:
        raise ContractViolation("need n >= 0 and size >= 1")
    if not 0 <= p <= 1:
        raise ContractViolation("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    vertices = range(n)
    if kind == "signed":
        pairs = random_pairs(rng, n, p)
        signs = np.where(rng.random(len(pairs)) < 0.5, 1, -1)
        return SignedGraph.from_edges(
            [(int(u), int(v), int(s)) for (u, v), s in zip(pairs, signs)], vertices=vertices)
    edges = [(int(u), int(v), t) for t in range(size) for u, v in random_pairs(rng, n, p)]
    if kind == "multilayer":
        return MultilayerGraph.from_edges(edges, vertices=vertices, layers=range(size))
    return TemporalGraph.from_edges(edges, vertices=vertices, domain=(0, size - 1))
