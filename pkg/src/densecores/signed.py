"""Two-community polarization in signed graphs.

An assignment ``x ∈ {-1, 0, +1}^n`` names two opposed communities (the
``+1`` and ``-1`` entries) inside a neutral rest. Its polarity
``xᵀAx / xᵀx`` counts agreeing minus disagreeing edge endpoints per
involved vertex. Maximizing it is NP-hard; the leading eigenvector of ``A``
relaxes it, and two rounding schemes turn that vector back into an
assignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import ContractViolation, ConvergenceError, NoSolutionError, ResourceLimitError
from .graphs import SignedGraph

__all__ = [
    "SpectralResult",
    "PolarizedPartition",
    "PlantedInstance",
    "polarity",
    "leading_eigenvector",
    "round_deterministic",
    "round_randomized",
    "brute_force_polarity",
    "generate_planted",
    "canonical_sign",
    "BRUTE_FORCE_LIMIT",
]

BRUTE_FORCE_LIMIT = 12
_DENSE_FALLBACK = 400


@dataclass(frozen=True, eq=False)
class SpectralResult:
    lambda1: float
    v: np.ndarray
    iterations: int
    residual: float
    degenerate: bool = False
    method: str = "power"


@dataclass(frozen=True, eq=False)
class PolarizedPartition:
    assignment: np.ndarray  # int8 entries in {-1, 0, +1}
    polarity: float
    algorithm: str
    guarantee: float
    lambda1: float | None = None
    seed: int | None = None

    @property
    def positive(self) -> np.ndarray:
        return np.flatnonzero(self.assignment > 0)

    @property
    def negative(self) -> np.ndarray:
        return np.flatnonzero(self.assignment < 0)

    @property
    def neutral_count(self) -> int:
        return int((self.assignment == 0).sum())


def canonical_sign(x: np.ndarray) -> np.ndarray:
    """Flip ``x`` so its first nonzero entry is positive."""
    nz = np.flatnonzero(x)
    if nz.size and x[nz[0]] < 0:
        return -x
    return x


def polarity(G: SignedGraph, x) -> float:
    x = np.asarray(x, dtype=float).ravel()
    if x.shape != (G.n,):
        raise ContractViolation(f"assignment has length {x.size}, graph has {G.n} vertices")
    if not np.isin(x, (-1.0, 0.0, 1.0)).all():
        raise ContractViolation("assignment entries must be -1, 0 or +1")
    size = np.count_nonzero(x)
    if size == 0:
        raise ContractViolation("assignment has no nonzero entry")
    return float(x @ (G._adjacency @ x)) / size


# -- spectral relaxation ---------------------------------------------------

def _start_vector(n):
    # All-ones is orthogonal to the leading eigenvector of many symmetric
    # graphs (a single negative edge, say), so every entry gets a small
    # fixed perturbation.
    v = np.ones(n) + 1e-3 * np.random.default_rng(0x5EED).standard_normal(n)
    return v / np.linalg.norm(v)


def _power(A, shift, tol, max_iter):
    v = _start_vector(A.shape[0])
    lam, res = 0.0, math.inf
    for it in range(1, max_iter + 1):
        Av = A @ v
        lam = float(v @ Av)
        res = float(np.linalg.norm(Av - lam * v))
        if res <= tol:
            return lam, v, it, res
        w = Av + shift * v
        v = w / np.linalg.norm(w)
    return lam, v, max_iter, res


def _direct(A):
    n = A.shape[0]
    if n <= _DENSE_FALLBACK:
        w, V = scipy.linalg.eigh(A.toarray())
        return float(w[-1]), V[:, -1], "dense"
    w, V = scipy.sparse.linalg.eigsh(A.astype(float), k=1, which="LA",
                                     v0=_start_vector(n), tol=0)
    return float(w[0]), V[:, 0], "lanczos"


def leading_eigenvector(G: SignedGraph, tol: float = 1e-9, max_iter: int | None = None,
                        magnitude: bool = False, fallback: bool = False) -> SpectralResult:
    """Largest-algebraic eigenpair of the signed adjacency by shifted power iteration.

    The shift ``s`` (largest absolute row sum) bounds the spectral radius,
    so ``A + sI`` is positive semidefinite and its dominant eigenvector is
    that of the largest eigenvalue of ``A``. With ``magnitude`` both ``A``
    and ``-A`` are solved and the eigenpair of larger ``|λ|`` is returned.

    Near-degenerate leading eigenvalues can need many iterations. Running
    out of ``max_iter`` (default ``10 n + 1000``) raises
    :class:`ConvergenceError`, unless ``fallback`` is set, in which case a
    direct eigensolver finishes the job and ``method`` records which.
    """
    n = G.n
    if n < 1:
        raise ContractViolation("graph has no vertices")
    if max_iter is None:
        max_iter = 10 * n + 1000
    if G.m == 0:
        return SpectralResult(0.0, np.full(n, 1 / math.sqrt(n)), 0, 0.0, degenerate=True)
    A = G._adjacency
    shift = float(abs(A).sum(axis=1).max())

    def solve(M):
        lam, v, it, res = _power(M, shift, tol, max_iter)
        method = "power"
        if res > tol:
            if not fallback:
                raise ConvergenceError(
                    f"power iteration did not reach tolerance {tol} in {max_iter} steps",
                    res, it)
            lam, v, method = _direct(M)
            v = v / np.linalg.norm(v)
            res = float(np.linalg.norm(M @ v - lam * v))
        return lam, v, it, res, method

    lam, v, it, res, method = solve(A)
    if magnitude:
        neg = solve(-A)
        if abs(neg[0]) > abs(lam):
            lam, v, it, res, method = -neg[0], neg[1], neg[2], neg[3], neg[4]
    v = canonical_sign(np.where(np.abs(v) > 1e-12 * np.abs(v).max(), v, 0.0)) + 0.0
    v = v / np.linalg.norm(v)
    return SpectralResult(lam, v, it, res, degenerate=lam == 0.0, method=method)


# -- rounding --------------------------------------------------------------

def _require_edges(G, spec):
    if spec.degenerate or G.m == 0:
        # A nonzero symmetric matrix with zero diagonal has a positive
        # eigenvalue, so a zero leading eigenvalue means there are no edges.
        raise NoSolutionError("no polarized communities: the graph has no edges")


def round_deterministic(G: SignedGraph, spec: SpectralResult) -> PolarizedPartition:
    """Best prefix of the vertices sorted by ``|v_u|``, each given ``sign(v_u)``.

    Prefix polarities are updated incrementally in ``O(n log n + m)``;
    equal polarities keep the shorter prefix.
    """
    _require_edges(G, spec)
    A = G._adjacency
    v = spec.v
    order = np.argsort(-np.abs(v), kind="stable")
    sgn = np.sign(v)
    x = np.zeros(G.n)
    num, size = 0.0, 0
    best, best_p = None, 0
    for p, u in enumerate(order, 1):
        s = sgn[u]
        if s == 0:
            continue
        lo, hi = A.indptr[u], A.indptr[u + 1]
        num += 2 * s * float(A.data[lo:hi] @ x[A.indices[lo:hi]])
        x[u] = s
        size += 1
        if best is None or num / size > best + 1e-12 * max(1.0, abs(best)):
            best, best_p = num / size, p
    out = np.zeros(G.n, dtype=np.int8)
    head = order[:best_p]
    out[head] = sgn[head]
    return PolarizedPartition(canonical_sign(out), polarity(G, out), "deterministic",
                              float(G.n), spec.lambda1)


def round_randomized(G: SignedGraph, spec: SpectralResult, trials: int = 32,
                     seed: int = 0) -> PolarizedPartition:
    """Best of ``trials`` random roundings of ``v``.

    Vertex ``u`` joins community ``sign(v_u)`` with probability
    ``min(1, |v_u| √n / ‖v‖∞)``, independently; trial ``i`` draws from a
    generator seeded with ``seed + i``. The largest entry is always
    included, so no trial is empty. Ties go to the earliest trial.
    """
    if trials < 1:
        raise ContractViolation("trials must be at least 1")
    _require_edges(G, spec)
    v = spec.v
    n = G.n
    prob = np.minimum(1.0, np.abs(v) * math.sqrt(n) / np.abs(v).max())
    sgn = np.sign(v).astype(np.int8)
    best = None
    for t in range(trials):
        rng = np.random.default_rng(seed + t)
        x = np.where(rng.random(n) < prob, sgn, 0).astype(np.int8)
        if not x.any():
            continue
        p = polarity(G, x)
        if best is None or p > best[0]:
            best = (p, x)
    return PolarizedPartition(canonical_sign(best[1]), best[0], "randomized",
                              math.sqrt(n), spec.lambda1, seed)


def brute_force_polarity(G: SignedGraph) -> PolarizedPartition:
    """Exact optimum over all ``3^n`` assignments (``n <= 12``).

    Among optimal assignments the one with fewest nonzeros wins, then the
    first in enumeration order; the sign is canonical.
    """
    n = G.n
    if n > BRUTE_FORCE_LIMIT:
        raise ResourceLimitError(f"brute force needs n <= {BRUTE_FORCE_LIMIT}, got {n}")
    _require_edges(G, SpectralResult(0.0, np.zeros(n), 0, 0.0, degenerate=G.m == 0))
    X = np.array(list(product((0, 1, -1), repeat=n)), dtype=float)
    X = X[1:]  # drop the all-zero row
    size = np.count_nonzero(X, axis=1)
    A = G._adjacency.toarray()
    val = np.einsum("ij,ij->i", X @ A, X) / size
    top = val.max()
    tied = np.flatnonzero(val >= top - 1e-12 * max(1.0, abs(top)))
    pick = tied[np.argmin(size[tied])]  # first minimum
    x = canonical_sign(X[pick].astype(np.int8))
    return PolarizedPartition(x, polarity(G, x), "brute-force", 1.0)


# -- planted model ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PlantedInstance:
    graph: SignedGraph
    truth: np.ndarray  # int8 assignment
    valid: bool

    def __iter__(self):
        return iter((self.graph, self.truth))


def generate_planted(n: int, size1: int, size2: int, p_in: float, p_out: float,
                     noise: float, seed: int = 0) -> PlantedInstance:
    """Two hidden opposed communities in a neutral background.

    Pairs inside one community are positive edges with probability
    ``p_in``, pairs across the two are negative with probability ``p_out``,
    and any pair touching a neutral vertex is an edge of random sign with
    probability ``noise``. Community membership is a random permutation of
    the vertices. With no planted vertex the truth is flagged invalid.
    """
    if min(n, size1, size2) < 0 or size1 + size2 > n:
        raise ContractViolation("need 0 <= size1, size2 and size1 + size2 <= n")
    for name, p in (("p_in", p_in), ("p_out", p_out), ("noise", noise)):
        if not 0 <= p <= 1:
            raise ContractViolation(f"{name} must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    group = np.zeros(n, dtype=np.int8)
    perm = rng.permutation(n)
    group[perm[:size1]] = 1
    group[perm[size1:size1 + size2]] = -1
    iu, ju = np.triu_indices(n, 1)
    gi, gj = group[iu], group[ju]
    draw = rng.random(iu.size)
    coin = np.where(rng.random(iu.size) < 0.5, 1, -1)
    inside = (gi != 0) & (gi == gj)
    across = (gi != 0) & (gj != 0) & (gi != gj)
    loose = ~inside & ~across
    sign = np.zeros(iu.size, dtype=np.int64)
    sign[inside & (draw < p_in)] = 1
    sign[across & (draw < p_out)] = -1
    hit = loose & (draw < noise)
    sign[hit] = coin[hit]
    keep = np.flatnonzero(sign)
    signs = {(int(a), int(b)): int(s) for a, b, s in zip(iu[keep], ju[keep], sign[keep])}
    graph = SignedGraph._build(tuple(str(i) for i in range(n)), signs)
    return PlantedInstance(graph, group, bool(size1 + size2))
