"""Manifold projection of a distance matrix: k-NN graph, geodesics, classical MDS."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .similarity import DistanceMatrix

__all__ = [
    "NeighborGraph",
    "GeodesicMatrix",
    "Embedding",
    "build_neighbor_graph",
    "geodesic_distances",
    "classical_mds",
    "isomap",
    "residual_variances",
]


@dataclass(frozen=True)
class NeighborGraph:
    """Weighted undirected k-NN graph, repaired to be connected.

    ``edges`` holds ``(u, v, weight)`` with ``u < v``; ``neighborhood_size``
    is the k used for candidate selection (edges added by the connectivity
    repair are included).
    """

    node_count: int
    edges: tuple
    neighborhood_size: int

    @cached_property
    def adjacency(self):
        adj = [[] for _ in range(self.node_count)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def to_sparse(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.node_count, self.node_count))
        us, vs, ws = zip(*self.edges)
        row = np.concatenate([us, vs])
        col = np.concatenate([vs, us])
        dat = np.concatenate([ws, ws]).astype(float)
        return csr_matrix((dat, (row, col)), shape=(self.node_count, self.node_count))


@dataclass(frozen=True)
class GeodesicMatrix:
    """All-pairs shortest-path distances over a neighbor graph; all finite."""

    values: np.ndarray


@dataclass(frozen=True)
class Embedding:
    """Low-dimensional coordinates from classical MDS.

    ``coordinates`` is n x p with columns scaled by sqrt(eigenvalue) and
    ordered by non-increasing eigenvalue. ``truncated`` flags the case where
    fewer positive eigenvalues than requested dimensions were available.
    """

    coordinates: np.ndarray
    eigenvalues: np.ndarray
    requested_dim: int

    @property
    def dim(self) -> int:
        return self.coordinates.shape[1]

    @property
    def truncated(self) -> bool:
        return self.dim < self.requested_dim


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def build_neighbor_graph(d, neighborhood_size: int) -> NeighborGraph:
    """Symmetric k-NN graph over finite distances, repaired to one component.

    Edge (i, j) is kept when j is among the ``neighborhood_size`` closest
    finite-distance partners of i, or vice versa; distance ties are broken
    toward the smaller node index. If the k-NN graph is disconnected, the
    globally smallest finite-distance edge joining two components is added
    repeatedly until it is connected.
    """
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    n = values.shape[0]
    k = int(neighborhood_size)
    if not 1 <= k <= n - 1:
        raise ValueError(f"neighborhood size must be in 1..{n - 1}, got {k}")

    edges = {}
    for i in range(n):
        row = values[i]
        candidates = np.flatnonzero(np.isfinite(row))
        candidates = candidates[candidates != i]
        if candidates.size == 0:
            raise ValueError(f"node {i} has no finite-distance partner")
        order = np.lexsort((candidates, row[candidates]))[:k]
        for j in candidates[order]:
            key = (i, j) if i < j else (j, i)
            edges.setdefault(key, float(row[j]))

    uf = _UnionFind(n)
    components = n
    for u, v in edges:
        if uf.union(u, v):
            components -= 1

    if components > 1:
        iu, iv = np.triu_indices(n, k=1)
        finite = np.isfinite(values[iu, iv])
        iu, iv, w = iu[finite], iv[finite], values[iu, iv][finite]
        for idx in np.lexsort((iv, iu, w)):
            u, v = int(iu[idx]), int(iv[idx])
            if uf.union(u, v):
                edges.setdefault((u, v), float(w[idx]))
                components -= 1
                if components == 1:
                    break
        if components > 1:
            raise ValueError(
                "distance matrix splits into groups with no finite distance between them"
            )

    edge_tuple = tuple((u, v, w) for (u, v), w in sorted(edges.items()))
    return NeighborGraph(n, edge_tuple, k)


def geodesic_distances(ng: NeighborGraph) -> GeodesicMatrix:
    """Exact all-pairs shortest paths over the neighbor graph (Dijkstra per source)."""
    dist = _csgraph_dijkstra(ng.to_sparse(), directed=False)
    if np.isinf(dist).any():
        raise ValueError("neighbor graph is disconnected")
    dist = np.minimum(dist, dist.T)  # enforce exact symmetry
    np.fill_diagonal(dist, 0.0)
    return GeodesicMatrix(dist)


def _positive_spectrum(d: np.ndarray):
    """Eigendecomposition of the double-centered squared-distance matrix.

    Returns eigenvalues (descending) and matching eigenvectors of
    ``-1/2 * X (D o D) X`` where ``X = I - (1/n) 11^T``; only this function
    materializes the centering matrix.
    """
    n = d.shape[0]
    center = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * center @ (d * d) @ center
    b = (b + b.T) / 2.0
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1]
    return eigvals[order], eigvecs[:, order]


def classical_mds(gd, dim: int) -> Embedding:
    """Project a symmetric distance matrix to ``dim`` coordinates.

    Keeps the top ``dim`` eigenpairs with eigenvalue above a relative positive
    threshold; when fewer are available the embedding carries fewer columns
    (flagged via ``truncated``), except that a fully degenerate input yields a
    single all-zero column. Each column's largest-magnitude entry is made
    nonnegative so the output is sign-deterministic.
    """
    if dim < 1:
        raise ValueError("embedding dimension must be >= 1")
    d = gd.values if isinstance(gd, GeodesicMatrix) else np.asarray(gd, dtype=float)
    n = d.shape[0]
    eigvals, eigvecs = _positive_spectrum(d)
    tol = 1e-10 * max(eigvals[0], 0.0)
    positive = int(np.sum(eigvals > tol))
    keep = min(dim, positive)
    if keep == 0:
        return Embedding(np.zeros((n, 1)), np.zeros(1), dim)
    vals = eigvals[:keep].copy()
    vecs = eigvecs[:, :keep].copy()
    for j in range(keep):
        anchor = np.argmax(np.abs(vecs[:, j]))
        if vecs[anchor, j] < 0:
            vecs[:, j] = -vecs[:, j]
    coords = vecs * np.sqrt(vals)
    return Embedding(coords, vals, dim)


def isomap(d, neighborhood_size: int = 10, dim: int = 2) -> Embedding:
    """Full projection: neighbor graph, geodesic distances, classical MDS.

    Rejects graphs with fewer than 4 nodes; centering and the downstream
    density statistics are degenerate there.
    """
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    if values.shape[0] < 4:
        raise ValueError("pipeline requires at least 4 nodes")
    ng = build_neighbor_graph(values, neighborhood_size)
    gd = geodesic_distances(ng)
    return classical_mds(gd, dim)


def residual_variances(gd, max_dim: int) -> list:
    """(dim, residual) pairs: share of the positive spectrum left out at each dim."""
    d = gd.values if isinstance(gd, GeodesicMatrix) else np.asarray(gd, dtype=float)
    eigvals, _ = _positive_spectrum(d)
    tol = 1e-10 * max(eigvals[0], 0.0)
    positive = eigvals[eigvals > tol]
    total = positive.sum()
    out = []
    for p in range(1, max_dim + 1):
        kept = positive[:p].sum() if total > 0 else 0.0
        out.append((p, float(1.0 - kept / total) if total > 0 else 0.0))
    return out
