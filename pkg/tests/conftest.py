import numpy as np
import pytest

import resdecomp as rd


def random_connected_graph(rng, max_n=12, weight_range=(0.1, 10.0)):
    """Random spanning tree plus extra distinct edges, uniform weights."""
    n = int(rng.integers(2, max_n + 1))
    edges = set()
    for v in range(1, n):
        edges.add((int(rng.integers(0, v)), v))
    non_tree = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    extra = int(rng.integers(0, len(non_tree) + 1))
    for idx in rng.permutation(len(non_tree))[:extra]:
        edges.add(non_tree[idx])
    ordered = sorted(edges)
    lo, hi = weight_range
    weights = rng.uniform(lo, hi, size=len(ordered))
    return rd.build_graph(n, [(u, v, float(w)) for (u, v), w in zip(ordered, weights)])


def two_triangles_bridge():
    """Two unit triangles joined by one unit bridge edge; w(E) = 7."""
    edges = [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0),
             (3, 4, 1.0), (3, 5, 1.0), (4, 5, 1.0),
             (2, 3, 1.0)]
    return rd.build_graph(6, edges)


def path_graph(n, weight=1.0):
    return rd.build_graph(n, [(i, i + 1, weight) for i in range(n - 1)])


@pytest.fixture(scope="session")
def corpus():
    """50 seeded random connected graphs, n <= 12, weights in [0.1, 10]."""
    rng = np.random.default_rng(20240817)
    return [random_connected_graph(rng) for _ in range(50)]


@pytest.fixture(scope="session")
def corpus100():
    rng = np.random.default_rng(424242)
    return [random_connected_graph(rng) for _ in range(100)]
