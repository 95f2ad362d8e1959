"""Shared data model: edge indexing, degree operator, distances, objective.

A weighted undirected graph on p nodes with no self-loops is stored as a
vector w of length m = p(p-1)/2 holding the strict upper triangle of the
adjacency matrix W in row-major order. All solvers operate on this
vectorized form; the adjacency matrix is only materialized on demand.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial.distance import pdist


def num_edges(p):
    """Number of potential edges m = p(p-1)/2 for p nodes."""
    return p * (p - 1) // 2


def edge_index(i, j, p):
    """Linear index of edge (i, j) in the row-major strict upper triangle.

    The ordering is (0,1), (0,2), ..., (0,p-1), (1,2), ... so that
    idx(i, j) = i*p - i*(i+1)/2 + (j - i - 1).

    Raises
    ------
    ValueError
        If not 0 <= i < j < p.
    """
    if not (0 <= i < j < p):
        raise ValueError(f"invalid edge ({i}, {j}) for p={p}: need 0 <= i < j < p")
    return i * p - i * (i + 1) // 2 + (j - i - 1)


def edge_endpoints(k, p):
    """Inverse of edge_index: endpoints (i, j) of the edge with linear index k."""
    m = num_edges(p)
    if not (0 <= k < m):
        raise ValueError(f"edge index {k} out of range for p={p} (m={m})")
    # Solve for the row: largest i with i*p - i*(i+1)/2 <= k, then correct
    # the float estimate by at most one step.
    i = int(p - 0.5 - np.sqrt((p - 0.5) ** 2 - 2.0 * k))
    while i * p - i * (i + 1) // 2 > k:
        i -= 1
    while (i + 1) * p - (i + 1) * (i + 2) // 2 <= k:
        i += 1
    j = k - (i * p - i * (i + 1) // 2) + i + 1
    return i, j


@lru_cache(maxsize=64)
def edge_pairs(p):
    """Endpoint arrays (I, J) for all m edges in canonical order (read-only)."""
    if p < 2:
        raise ValueError(f"need p >= 2, got p={p}")
    I, J = np.triu_indices(p, k=1)
    I.setflags(write=False)
    J.setflags(write=False)
    return I, J


@dataclass(frozen=True)
class EdgeIndexMap:
    """Bijection between node pairs (i, j), i < j, and linear edge indices."""

    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"need p >= 2, got p={self.p}")

    @property
    def m(self):
        return num_edges(self.p)

    def index(self, i, j):
        return edge_index(i, j, self.p)

    def endpoints(self, k):
        return edge_endpoints(k, self.p)

    def pairs(self):
        return edge_pairs(self.p)


class DegreeOperator:
    """The implicit binary map S with S w = W 1 (node degree vector).

    S is never materialized: each edge contributes its weight to the degree
    of both endpoints. Accumulation runs in ascending edge order, so results
    are reproducible run to run on one platform.
    """

    def __init__(self, p):
        if p < 2:
            raise ValueError(f"need p >= 2, got p={p}")
        self.p = p
        self.m = num_edges(p)

    def apply(self, w):
        w = np.asarray(w, dtype=float)
        if w.shape != (self.m,):
            raise ValueError(f"weight vector has length {w.shape}, expected ({self.m},)")
        I, J = edge_pairs(self.p)
        return (np.bincount(I, weights=w, minlength=self.p)
                + np.bincount(J, weights=w, minlength=self.p))


def degrees(w, p):
    """Node degree vector S w for edge weights w; cost O(p^2)."""
    return DegreeOperator(p).apply(w)


def weights_to_matrix(w, p):
    """Symmetric adjacency matrix W with zero diagonal from edge weights w."""
    w = np.asarray(w, dtype=float)
    if w.shape != (num_edges(p),):
        raise ValueError(f"weight vector has length {w.shape}, expected ({num_edges(p)},)")
    W = np.zeros((p, p))
    I, J = edge_pairs(p)
    W[I, J] = w
    W += W.T
    return W


def matrix_to_weights(W):
    """Strict upper triangle of a symmetric matrix W as an edge weight vector."""
    W = np.asarray(W, dtype=float)
    p = W.shape[0]
    if W.shape != (p, p) or p < 2:
        raise ValueError(f"expected a square matrix with p >= 2, got shape {W.shape}")
    I, J = edge_pairs(p)
    return W[I, J].copy()


def pairwise_distances(X):
    """Squared Euclidean distances between node signal rows, in edge order.

    Parameters
    ----------
    X : array (p, n)
        Row i holds the n signal samples observed at node i.

    Returns
    -------
    d : array (m,)
        d[edge_index(i, j, p)] = ||X[i] - X[j]||_2^2.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2 or X.shape[1] < 1:
        raise ValueError(f"expected a p x n data matrix with p >= 2, n >= 1, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("data matrix contains non-finite entries")
    # pdist's condensed ordering is exactly the row-major upper triangle.
    return pdist(X, metric="sqeuclidean")


@dataclass
class ProblemInstance:
    """Everything that defines the graph learning objective f(w).

    f(w) = 2 w.d - alpha * sum_i log((S w)_i) + beta * ||w||_2^2

    with w >= 0 elementwise. The log-barrier keeps every node degree
    strictly positive at any finite-objective point.
    """

    p: int
    d: np.ndarray
    alpha: float
    beta: float

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"need p >= 2, got p={self.p}")
        if not (self.alpha > 0 and self.beta > 0):
            raise ValueError(f"need alpha > 0 and beta > 0, got alpha={self.alpha}, beta={self.beta}")
        d = np.array(self.d, dtype=float)
        if d.shape != (num_edges(self.p),):
            raise ValueError(f"distance vector has length {d.shape}, expected ({num_edges(self.p)},)")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValueError("distance vector must be finite and nonnegative")
        d.setflags(write=False)
        self.d = d

    @property
    def m(self):
        return num_edges(self.p)


def objective(w, prob):
    """Objective value f(w); +inf when any node degree is zero (log-barrier).

    Raises
    ------
    ValueError
        On a negative weight (distinct from the +inf barrier return).
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (prob.m,):
        raise ValueError(f"weight vector has length {w.shape}, expected ({prob.m},)")
    if np.any(w < 0):
        raise ValueError("weights must be nonnegative")
    deg = degrees(w, prob.p)
    if np.any(deg <= 0):
        return np.inf
    return 2.0 * w @ prob.d - prob.alpha * np.sum(np.log(deg)) + prob.beta * (w @ w)


def objective_gradient(w, prob):
    """Gradient of f at an interior point: 2 d_j + 2 beta w_j - alpha (1/deg_a + 1/deg_b).

    Requires every node degree strictly positive.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (prob.m,):
        raise ValueError(f"weight vector has length {w.shape}, expected ({prob.m},)")
    deg = degrees(w, prob.p)
    if np.any(deg <= 0):
        raise ValueError("gradient undefined: some node degree is zero")
    inv = 1.0 / deg
    I, J = edge_pairs(prob.p)
    return 2.0 * prob.d + 2.0 * prob.beta * w - prob.alpha * (inv[I] + inv[J])


def load_signals_csv(path, skip_header=False):
    """Load a data matrix from CSV: one node per row, n sample columns.

    Raises ValueError with path and line number on malformed content.
    """
    rows = []
    ncols = None
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            if lineno == 1 and skip_header:
                continue
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if ncols is None:
                ncols = len(cells)
            elif len(cells) != ncols:
                raise ValueError(f"{path}:{lineno}: expected {ncols} columns, found {len(cells)}")
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric entry") from None
    if len(rows) < 2:
        raise ValueError(f"{path}: need at least 2 node rows, found {len(rows)}")
    X = np.array(rows, dtype=float)
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{path}: data matrix contains non-finite entries")
    return X


def save_edges_csv(w, p, path):
    """Write strictly positive edge weights as CSV rows `i,j,weight` (i < j)."""
    w = np.asarray(w, dtype=float)
    I, J = edge_pairs(p)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("i,j,weight\n")
        for k in np.flatnonzero(w > 0):
            fh.write(f"{I[k]},{J[k]},{float(w[k])!r}\n")


def load_edges_csv(path, p=None):
    """Read an edge-list CSV `i,j,weight` back into (w, p).

    A header row is skipped if present. p defaults to 1 + the largest node
    id seen; pass it explicitly when trailing nodes are isolated.
    """
    entries = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cells = line.split(",")
            if lineno == 1 and cells[0].strip().lower() == "i":
                continue
            if len(cells) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns i,j,weight")
            try:
                i, j, wt = int(cells[0]), int(cells[1]), float(cells[2])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: malformed edge row") from None
            if not (0 <= i < j) or not (np.isfinite(wt) and wt >= 0):
                raise ValueError(f"{path}:{lineno}: invalid edge ({i},{j}) weight {wt}")
            entries.append((i, j, wt, lineno))
    if not entries:
        raise ValueError(f"{path}: no edges found")
    max_node = max(j for _, j, _, _ in entries)
    if p is None:
        p = max_node + 1
    elif max_node >= p:
        raise ValueError(f"{path}: node id {max_node} out of range for p={p}")
    w = np.zeros(num_edges(p))
    seen = set()
    for i, j, wt, lineno in entries:
        k = edge_index(i, j, p)
        if k in seen:
            raise ValueError(f"{path}:{lineno}: duplicate edge ({i},{j})")
        seen.add(k)
        w[k] = wt
    return w, p
