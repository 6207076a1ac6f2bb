"""Weighted undirected graphs: incidence matrices, Laplacians, spectra.

Edge orientation convention used throughout: an edge between i and j with
i < j points from i to j, so the incidence column carries -1 at row i and
+1 at row j. With that convention (B^T theta)_e = theta_j - theta_i, and
L = B diag(w) B^T equals the familiar degree-minus-adjacency Laplacian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a connected graph and the input is not."""


def _zero_tol(lambda_max: float) -> float:
    # Scale-aware cutoff: eigenvalues below this count as zero.
    return 1e-8 * max(1.0, abs(lambda_max))


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph on nodes 0..n-1 with strictly positive edge weights.

    Each unordered pair appears at most once; self-loops are rejected.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"node count must be >= 1, got {self.n}")
        canonical = []
        seen = set()
        for i, j, w in self.edges:
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n = {self.n}")
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not w > 0:
                raise ValueError(f"edge ({i}, {j}) has non-positive weight {w}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            canonical.append((i, j, w))
        object.__setattr__(self, "edges", tuple(canonical))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        for i, j, w in self.edges:
            A[i, j] = w
            A[j, i] = w
        return A

    def degree(self) -> np.ndarray:
        d = np.zeros(self.n)
        for i, j, w in self.edges:
            d[i] += w
            d[j] += w
        return d

    def connected_components(self) -> int:
        """Component count via union-find (no linear algebra involved)."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
        return len({find(k) for k in range(self.n)})

    def is_connected(self) -> bool:
        return self.connected_components() == 1


@dataclass(frozen=True)
class OrientedIncidence:
    """Node-by-edge incidence matrix with the low-to-high orientation.

    Columns follow the graph's edge order; column e has exactly one -1
    (tail, smaller index) and one +1 (head, larger index).
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        B = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", B)
        if B.ndim != 2:
            raise ValueError("incidence matrix must be 2-D")
        for e in range(B.shape[1]):
            col = B[:, e]
            if not (np.sum(col == -1.0) == 1 and np.sum(col == 1.0) == 1 and np.sum(col != 0.0) == 2):
                raise ValueError(f"column {e} is not a signed edge indicator")
            if np.argmin(col) > np.argmax(col):
                raise ValueError(f"column {e} violates the low-to-high orientation")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def edge_count(self) -> int:
        return self.matrix.shape[1]


def build_incidence(graph: WeightedGraph) -> OrientedIncidence:
    B = np.zeros((graph.n, graph.edge_count))
    for e, (i, j, _) in enumerate(graph.edges):
        lo, hi = (i, j) if i < j else (j, i)
        B[lo, e] = -1.0
        B[hi, e] = 1.0
    return OrientedIncidence(B)


def laplacian(graph: WeightedGraph) -> np.ndarray:
    """Weighted Laplacian L = B diag(w) B^T (= degree - adjacency)."""
    B = build_incidence(graph).matrix
    return (B * graph.weights()) @ B.T


@dataclass(frozen=True)
class LaplacianSpectrum:
    eigenvalues: np.ndarray  # ascending
    zero_multiplicity: int
    tol: float

    @property
    def lambda2(self) -> float:
        if len(self.eigenvalues) < 2:
            return 0.0
        return float(self.eigenvalues[1])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    @property
    def is_connected(self) -> bool:
        return self.zero_multiplicity == 1


def spectrum(L: np.ndarray, tol: float | None = None) -> LaplacianSpectrum:
    """Eigenvalues of a symmetric Laplacian, ascending, with zero count.

    tol is the zero cutoff; None picks 1e-8 * max(1, lambda_max).
    """
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {L.shape}")
    scale = max(1.0, float(np.max(np.abs(L))) if L.size else 1.0)
    if float(np.max(np.abs(L - L.T))) > 1e-10 * scale:
        raise ValueError("matrix is not symmetric")
    eigs = np.linalg.eigvalsh(L)
    if tol is None:
        tol = _zero_tol(float(eigs[-1]))
    zero_mult = int(np.sum(np.abs(eigs) < tol))
    return LaplacianSpectrum(eigenvalues=eigs, zero_multiplicity=zero_mult, tol=float(tol))


def pseudoinverse(L: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a connected graph's Laplacian.

    Inverts eigenvalues above the zero cutoff and zeroes the rest. More
    than one (near-)zero eigenvalue means the graph is disconnected and
    the quantities built on L^# (e.g. coupling bounds) are meaningless,
    so that raises instead of silently proceeding.
    """
    L = np.asarray(L, dtype=float)
    if L.shape == (1, 1):
        return np.zeros((1, 1))
    eigs, vecs = np.linalg.eigh((L + L.T) / 2.0)
    tol = _zero_tol(float(eigs[-1]))
    n_zero = int(np.sum(np.abs(eigs) < tol))
    if n_zero != 1:
        raise DisconnectedGraphError(
            f"Laplacian has {n_zero} (near-)zero eigenvalues; need exactly 1 (connected graph)"
        )
    inv = np.zeros_like(eigs)
    keep = np.abs(eigs) >= tol
    inv[keep] = 1.0 / eigs[keep]
    return (vecs * inv) @ vecs.T


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    edges = tuple((i, j, weight) for i in range(n) for j in range(i + 1, n))
    return WeightedGraph(n=n, edges=edges)


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    edges = tuple((i, (i + 1) % n, weight) for i in range(n))
    return WeightedGraph(n=n, edges=edges)


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 2:
        raise ValueError(f"path needs n >= 2, got {n}")
    edges = tuple((i, i + 1, weight) for i in range(n - 1))
    return WeightedGraph(n=n, edges=edges)


def from_adjacency(A: np.ndarray, tol: float = 1e-12) -> WeightedGraph:
    """Graph from a symmetric nonnegative matrix; entries <= tol are absent."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {A.shape}")
    if float(np.max(np.abs(A - A.T))) > tol * max(1.0, float(np.max(np.abs(A))) if A.size else 1.0):
        raise ValueError("adjacency must be symmetric")
    if np.any(np.diag(A) > tol):
        raise ValueError("adjacency diagonal must be zero (no self-loops)")
    if np.any(A < -tol):
        raise ValueError("adjacency entries must be nonnegative")
    n = A.shape[0]
    edges = tuple((i, j, float(A[i, j])) for i in range(n) for j in range(i + 1, n) if A[i, j] > tol)
    return WeightedGraph(n=n, edges=edges)


def load_adjacency(path) -> WeightedGraph:
    """Read the plain-text adjacency format: first line n, then n rows of n reals."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError(f"{path}: empty adjacency file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"{path}: first line must be the node count, got {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise ValueError(f"{path}: expected {n} matrix rows after the count, found {len(lines) - 1}")
    rows = []
    for k, ln in enumerate(lines[1:]):
        vals = ln.split()
        if len(vals) != n:
            raise ValueError(f"{path}: row {k} has {len(vals)} entries, expected {n}")
        rows.append([float(v) for v in vals])
    return from_adjacency(np.array(rows))
