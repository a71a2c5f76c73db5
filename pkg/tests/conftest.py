"""Shared fixtures and independent reference implementations (oracles)."""

import numpy as np
import pytest

from isofdp import Graph


def floyd_warshall(weights: np.ndarray) -> np.ndarray:
    """Min-plus closure of a weight matrix; reference for shortest paths."""
    d = np.array(weights, dtype=float)
    np.fill_diagonal(d, 0.0)
    for k in range(d.shape[0]):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


def neighbor_graph_matrix(ng) -> np.ndarray:
    """Dense weight matrix of a neighbor graph, inf where no edge."""
    w = np.full((ng.node_count, ng.node_count), np.inf)
    for u, v, weight in ng.edges:
        w[u, v] = weight
        w[v, u] = weight
    np.fill_diagonal(w, 0.0)
    return w


def random_connected_graph(rng, n, extra_edges):
    """Connected undirected weighted graph: random spanning path + extras."""
    order = rng.permutation(n)
    edges = {}
    for a, b in zip(order[:-1], order[1:]):
        u, v = (int(a), int(b)) if a < b else (int(b), int(a))
        edges[(u, v)] = float(rng.uniform(0.1, 5.0))
    while len(edges) < n - 1 + extra_edges:
        u, v = sorted(rng.choice(n, size=2, replace=False).tolist())
        edges.setdefault((int(u), int(v)), float(rng.uniform(0.1, 5.0)))
    return edges


def two_blobs(rng, size_a=20, size_b=20, gap=50.0, spread=1.0):
    """Two well-separated Gaussian clumps plus their planted labels."""
    a = rng.normal(0.0, spread, size=(size_a, 2))
    b = rng.normal(0.0, spread, size=(size_b, 2)) + np.array([gap, 0.0])
    points = np.vstack([a, b])
    labels = np.array([0] * size_a + [1] * size_b)
    return points, labels


def disjoint_cliques_graph(sizes):
    """Graph made of disjoint cliques; returns (graph, membership labels)."""
    edges = []
    labels = []
    start = 0
    for c, size in enumerate(sizes):
        for i in range(start, start + size):
            for j in range(i + 1, start + size):
                edges.append((i, j))
        labels.extend([c] * size)
        start += size
    return Graph.from_edges(start, edges), np.array(labels)


@pytest.fixture(scope="session")
def lesmis_graph():
    nx = pytest.importorskip("networkx")
    g = nx.les_miserables_graph()
    tokens = sorted(g.nodes())
    index = {t: i for i, t in enumerate(tokens)}
    pairs = [(index[u], index[v]) for u, v in g.edges()]
    return Graph.from_edges(len(tokens), pairs, tokens=tokens)
