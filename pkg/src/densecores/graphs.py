"""In-memory graph types and their edge-list formats.

Three line-oriented formats are supported, all UTF-8 with ``#`` comments and
blank lines ignored, tokens separated by runs of spaces or tabs:

* multilayer: ``u v layer``
* temporal:   ``u v t`` with ``t`` a non-negative integer
* signed:     ``u v sign`` with ``sign`` one of ``+1 -1 + -``

Vertex labels are kept as strings and mapped to dense integer ids in order of
first appearance. Graphs are immutable once built: their arrays are flagged
read-only and every algorithm in the package only reads them.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from . import _kernels
from .errors import ContractViolation, ParseError, SignConflictError, UnknownVertexError

__all__ = [
    "GraphView",
    "MultilayerGraph",
    "TemporalGraph",
    "SignedGraph",
    "parse_multilayer",
    "parse_temporal",
    "parse_signed",
    "read_multilayer",
    "read_temporal",
    "read_signed",
    "write_multilayer",
    "write_temporal",
    "write_signed",
    "induced_degree",
    "as_mask",
]

SIGN_TOKENS = {"+1": 1, "+": 1, "-1": -1, "-": -1}


def _frozen(a, dtype=np.int64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


def _edge_codes(pairs, n):
    """Sorted unique ``u * n + v`` codes (``u < v``) for an iterable of pairs."""
    if not pairs:
        return _frozen(np.empty(0, dtype=np.int64))
    a = np.asarray(sorted(pairs), dtype=np.int64)
    lo = np.minimum(a[:, 0], a[:, 1])
    hi = np.maximum(a[:, 0], a[:, 1])
    return _frozen(np.unique(lo * n + hi))


def as_mask(n: int, vertices) -> np.ndarray:
    """Boolean membership mask for a vertex collection (ids or a mask)."""
    if vertices is None:
        return np.ones(n, dtype=np.bool_)
    arr = np.asarray(vertices)
    if arr.dtype == np.bool_:
        if arr.shape != (n,):
            raise ContractViolation(f"mask has shape {arr.shape}, expected ({n},)")
        return arr.copy()
    if isinstance(vertices, (set, frozenset)):
        arr = np.fromiter(vertices, dtype=np.int64, count=len(vertices))
    arr = arr.astype(np.int64, copy=False).ravel()
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ContractViolation("vertex id out of range")
    mask = np.zeros(n, dtype=np.bool_)
    mask[arr] = True
    return mask


@dataclass(frozen=True, eq=False)
class GraphView:
    """A simple undirected graph in CSR form over ``n`` vertices.

    Used for one layer of a multilayer graph, one snapshot of a temporal
    graph, or the intersection graph of a run of snapshots.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_codes(cls, codes, n):
        indptr, indices = _kernels.csr_from_codes(np.asarray(codes, dtype=np.int64), n)
        return cls(n, _frozen(indptr), _frozen(indices))

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)


def induced_degree(view: GraphView, S, u: int) -> int:
    """Number of neighbours of ``u`` inside ``S`` in the given view."""
    mask = as_mask(view.n, S)
    if not 0 <= u < view.n or not mask[u]:
        raise ContractViolation(f"vertex {u} is not in the induced set")
    return int(mask[view.neighbors(u)].sum())


class _Labels:
    """Mixin giving label <-> id lookups to the graph classes."""

    labels: tuple

    @cached_property
    def index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def vertex_id(self, label) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise UnknownVertexError(label) from None

    def vertex_ids(self, labels: Iterable) -> np.ndarray:
        return np.array(sorted({self.vertex_id(x) for x in labels}), dtype=np.int64)

    def labels_of(self, ids) -> list:
        return [self.labels[int(i)] for i in ids]


@dataclass(frozen=True, eq=False)
class MultilayerGraph(_Labels):
    """Vertex set shared by ``L`` layers, each an independent simple graph.

    ``indptr`` has shape ``(L, n + 1)`` with offsets into the flat
    ``indices`` array; neighbour lists are sorted.
    """

    labels: tuple
    layers: tuple
    indptr: np.ndarray
    indices: np.ndarray
    m_per_layer: tuple = field(default=())

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Sequence | None = None,
                   layers: Sequence | None = None) -> "MultilayerGraph":
        """Build from ``(u, v, layer)`` label triples.

        Explicit ``vertices`` / ``layers`` fix the id and layer order and allow
        isolated vertices or empty layers; anything else is added in order of
        first appearance.
        """
        index = {}
        labels = []
        layer_index = {}
        layer_list = []
        for x in vertices or ():
            if str(x) not in index:
                index[str(x)] = len(labels)
                labels.append(str(x))
        for x in layers or ():
            if str(x) not in layer_index:
                layer_index[str(x)] = len(layer_list)
                layer_list.append(str(x))
        per_layer = [set() for _ in layer_list]
        for u, v, layer in edges:
            u, v, layer = str(u), str(v), str(layer)
            if u == v:
                raise ContractViolation(f"self-loop on vertex {u!r}")
            for x in (u, v):
                if x not in index:
                    index[x] = len(labels)
                    labels.append(x)
            if layer not in layer_index:
                layer_index[layer] = len(layer_list)
                layer_list.append(layer)
                per_layer.append(set())
            a, b = index[u], index[v]
            per_layer[layer_index[layer]].add((a, b) if a < b else (b, a))
        return cls._build(tuple(labels), tuple(layer_list), per_layer)

    @classmethod
    def _build(cls, labels, layers, per_layer):
        n = len(labels)
        if not layers:
            raise ContractViolation("a multilayer graph needs at least one layer")
        ptrs, idx = [], []
        offset = 0
        for pairs in per_layer:
            ip, ix = _kernels.csr_from_codes(_edge_codes(pairs, n), n)
            ptrs.append(ip + offset)
            idx.append(ix)
            offset += len(ix)
        indptr = np.vstack(ptrs) if ptrs else np.zeros((0, n + 1), dtype=np.int64)
        return cls(labels, layers, _frozen(indptr), _frozen(np.concatenate(idx)),
                   tuple(len(p) for p in per_layer))

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    def layer_view(self, layer: int) -> GraphView:
        lo, hi = self.indptr[layer, 0], self.indptr[layer, -1]
        return GraphView(self.n, _frozen(self.indptr[layer] - lo), self.indices[lo:hi])

    def neighbors(self, layer: int, u: int) -> np.ndarray:
        return self.indices[self.indptr[layer, u]:self.indptr[layer, u + 1]]

    def edges(self, layer: int) -> Iterator[tuple[int, int]]:
        return self.layer_view(layer).edges()

    def layer_index(self, layer) -> int:
        try:
            return self.layers.index(str(layer))
        except ValueError:
            raise UnknownVertexError(f"layer {layer}") from None


@dataclass(frozen=True, eq=False)
class TemporalGraph(_Labels):
    """Snapshots over the contiguous integer domain ``[t_min, t_max]``.

    Each snapshot is stored as a sorted array of edge codes ``u * n + v``
    with ``u < v``; timestamps without edges hold empty arrays. An empty
    graph has ``t_max < t_min``.
    """

    labels: tuple
    t_min: int
    t_max: int
    snapshots: tuple

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Sequence | None = None,
                   domain: tuple[int, int] | None = None) -> "TemporalGraph":
        index = {}
        labels = []
        for x in vertices or ():
            if str(x) not in index:
                index[str(x)] = len(labels)
                labels.append(str(x))
        by_t = {}
        for u, v, t in edges:
            u, v, t = str(u), str(v), int(t)
            if u == v:
                raise ContractViolation(f"self-loop on vertex {u!r}")
            if t < 0:
                raise ContractViolation(f"negative timestamp {t}")
            for x in (u, v):
                if x not in index:
                    index[x] = len(labels)
                    labels.append(x)
            by_t.setdefault(t, set()).add((index[u], index[v]))
        if domain is not None:
            t_min, t_max = domain
            if by_t and (min(by_t) < t_min or max(by_t) > t_max):
                raise ContractViolation("edge timestamp outside the declared domain")
        elif by_t:
            t_min, t_max = min(by_t), max(by_t)
        else:
            t_min, t_max = 0, -1
        n = len(labels)
        snaps = tuple(_edge_codes(by_t.get(t, ()), n) for t in range(t_min, t_max + 1))
        return cls(tuple(labels), t_min, t_max, snaps)

    @property
    def timestamps(self) -> range:
        return range(self.t_min, self.t_max + 1)

    @property
    def num_timestamps(self) -> int:
        return len(self.snapshots)

    def codes_at(self, t: int) -> np.ndarray:
        self._check_t(t)
        return self.snapshots[t - self.t_min]

    def _check_t(self, t):
        if not self.t_min <= t <= self.t_max:
            raise ContractViolation(f"timestamp {t} outside [{self.t_min}, {self.t_max}]")

    def snapshot_view(self, t: int) -> GraphView:
        return GraphView.from_codes(self.codes_at(t), self.n)

    def interval_codes(self, ts: int, te: int) -> np.ndarray:
        """Edges present at every timestamp of ``[ts, te]``."""
        if ts > te:
            raise ContractViolation(f"empty interval [{ts}, {te}]")
        codes = self.codes_at(ts)
        for t in range(ts + 1, te + 1):
            codes = np.intersect1d(codes, self.codes_at(t), assume_unique=True)
        return codes

    def interval_view(self, ts: int, te: int) -> GraphView:
        return GraphView.from_codes(self.interval_codes(ts, te), self.n)

    def edges_at(self, t: int) -> Iterator[tuple[int, int]]:
        n = self.n
        for c in self.codes_at(t):
            yield int(c // n), int(c % n)


@dataclass(frozen=True, eq=False)
class SignedGraph(_Labels):
    """Undirected graph whose edges carry a sign in ``{+1, -1}``.

    ``src``/``dst``/``sign`` list each edge once with ``src < dst``, sorted.
    """

    labels: tuple
    src: np.ndarray
    dst: np.ndarray
    sign: np.ndarray

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Sequence | None = None) -> "SignedGraph":
        """Build from ``(u, v, sign)`` triples; a pair given both signs is an error."""
        index = {}
        labels = []
        for x in vertices or ():
            if str(x) not in index:
                index[str(x)] = len(labels)
                labels.append(str(x))
        signs = {}
        for u, v, s in edges:
            u, v = str(u), str(v)
            s = int(s)
            if s not in (1, -1):
                raise ContractViolation(f"sign must be +1 or -1, got {s}")
            if u == v:
                raise ContractViolation(f"self-loop on vertex {u!r}")
            for x in (u, v):
                if x not in index:
                    index[x] = len(labels)
                    labels.append(x)
            a, b = sorted((index[u], index[v]))
            if signs.setdefault((a, b), s) != s:
                raise SignConflictError(f"conflicting signs for pair ({u}, {v})")
        return cls._build(tuple(labels), signs)

    @classmethod
    def _build(cls, labels, signs):
        keys = sorted(signs)
        src = np.array([a for a, _ in keys], dtype=np.int64)
        dst = np.array([b for _, b in keys], dtype=np.int64)
        sign = np.array([signs[k] for k in keys], dtype=np.int64)
        return cls(labels, _frozen(src), _frozen(dst), _frozen(sign))

    @property
    def m(self) -> int:
        return len(self.src)

    @property
    def num_positive(self) -> int:
        return int((self.sign > 0).sum())

    @property
    def num_negative(self) -> int:
        return int((self.sign < 0).sum())

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for a, b, s in zip(self.src.tolist(), self.dst.tolist(), self.sign.tolist()):
            yield a, b, s

    @cached_property
    def _adjacency(self):
        n = self.n
        A = sp.coo_matrix(
            (np.concatenate([self.sign, self.sign]).astype(float),
             (np.concatenate([self.src, self.dst]), np.concatenate([self.dst, self.src]))),
            shape=(n, n),
        ).tocsr()
        A.sort_indices()
        return A

    def adjacency_matrix(self) -> sp.csr_matrix:
        """Signed adjacency ``A`` with ``A[u, v]`` the edge sign, 0 if absent."""
        return self._adjacency.copy()

    def neighbors(self, u: int) -> list[tuple[int, int]]:
        A = self._adjacency
        lo, hi = A.indptr[u], A.indptr[u + 1]
        return [(int(v), int(s)) for v, s in zip(A.indices[lo:hi], A.data[lo:hi])]


# -- parsing ---------------------------------------------------------------

def _lines(source) -> Iterator[tuple[int, list[str]]]:
    if isinstance(source, str):
        source = io.StringIO(source)
    for lineno, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _triples(source):
    for lineno, tok in _lines(source):
        if len(tok) != 3:
            raise ParseError(f"expected 3 tokens, got {len(tok)}", lineno)
        if tok[0] == tok[1]:
            raise ParseError(f"self-loop on vertex {tok[0]!r}", lineno)
        yield lineno, tok


def parse_multilayer(source: TextIO | str) -> MultilayerGraph:
    """Parse ``u v layer`` lines. Strings are treated as file content."""
    edges = [tuple(tok) for _, tok in _triples(source)]
    if not edges:
        raise ParseError("no edges: a multilayer graph needs at least one layer")
    return MultilayerGraph.from_edges(edges)


def parse_temporal(source: TextIO | str) -> TemporalGraph:
    edges = []
    for lineno, (u, v, t) in _triples(source):
        if not t.isdigit():
            raise ParseError(f"bad timestamp {t!r}", lineno)
        edges.append((u, v, int(t)))
    return TemporalGraph.from_edges(edges)


def parse_signed(source: TextIO | str) -> SignedGraph:
    index = {}
    signs = {}
    for lineno, (u, v, s) in _triples(source):
        if s not in SIGN_TOKENS:
            raise ParseError(f"bad sign {s!r}", lineno)
        for x in (u, v):
            index.setdefault(x, len(index))
        a, b = sorted((index[u], index[v]))
        if signs.setdefault((a, b), SIGN_TOKENS[s]) != SIGN_TOKENS[s]:
            raise SignConflictError(f"conflicting signs for pair ({u}, {v})", lineno)
    return SignedGraph._build(tuple(index), signs)


def _read(path, parser):
    with open(path, encoding="utf-8", newline=None) as fp:
        return parser(fp)


def read_multilayer(path) -> MultilayerGraph:
    return _read(path, parse_multilayer)


def read_temporal(path) -> TemporalGraph:
    return _read(path, parse_temporal)


def read_signed(path) -> SignedGraph:
    return _read(path, parse_signed)


# -- writing ---------------------------------------------------------------

def write_multilayer(G: MultilayerGraph, fp: TextIO) -> None:
    lab = G.labels
    for layer, name in enumerate(G.layers):
        for u, v in G.edges(layer):
            fp.write(f"{lab[u]} {lab[v]} {name}\n")


def write_temporal(G: TemporalGraph, fp: TextIO) -> None:
    lab = G.labels
    for t in G.timestamps:
        for u, v in G.edges_at(t):
            fp.write(f"{lab[u]} {lab[v]} {t}\n")


def write_signed(G: SignedGraph, fp: TextIO) -> None:
    lab = G.labels
    for u, v, s in G.edges():
        fp.write(f"{lab[u]} {lab[v]} {'+1' if s > 0 else '-1'}\n")
