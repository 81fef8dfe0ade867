"""Synthetic unit-weight graph families used for benchmarks and tests."""
from __future__ import annotations

import random

from .graph import WeightedGraph, build_graph


def hypercube(dim: int) -> WeightedGraph:
    """The ``dim``-dimensional hypercube: n = 2^dim, vertices adjacent iff
    their ids differ in exactly one bit."""
    if dim < 1:
        raise ValueError(f"hypercube dimension must be >= 1, got {dim}")
    n = 1 << dim
    edges = [(v, v ^ (1 << b), 1.0) for v in range(n) for b in range(dim) if v ^ (1 << b) > v]
    return build_graph(n, edges)


def grid2d(side: int) -> WeightedGraph:
    """The side x side 2-dimensional grid; vertex (i, j) has id i*side + j."""
    if side < 2:
        raise ValueError(f"grid side must be >= 2, got {side}")
    edges = []
    for i in range(side):
        for j in range(side):
            v = i * side + j
            if j + 1 < side:
                edges.append((v, v + 1, 1.0))
            if i + 1 < side:
                edges.append((v, v + side, 1.0))
    return build_graph(side * side, edges)


def complete(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return build_graph(n, [(i, j, 1.0) for i in range(n) for j in range(i + 1, n)])


def barbell(clique_size: int) -> WeightedGraph:
    """Two cliques of ``clique_size`` vertices joined by a single bridge edge."""
    if clique_size < 2:
        raise ValueError(f"clique size must be >= 2, got {clique_size}")
    c = clique_size
    edges = [(i, j, 1.0) for i in range(c) for j in range(i + 1, c)]
    edges += [(c + i, c + j, 1.0) for i in range(c) for j in range(i + 1, c)]
    edges.append((c - 1, c, 1.0))
    return build_graph(2 * c, edges)


def random_regular(n: int, degree: int, seed: int) -> WeightedGraph:
    """A uniform-ish random ``degree``-regular graph via the pairing model.

    Pairings producing self-loops or parallel edges are rejected and the
    offending stubs reshuffled, so the loop terminates quickly for the
    moderate degrees used here. Deterministic for a fixed seed.
    """
    if n < 1 or degree < 0 or degree >= n:
        raise ValueError(f"need 0 <= degree < n, got n={n}, degree={degree}")
    if (n * degree) % 2 != 0:
        raise ValueError(f"n * degree must be even, got n={n}, degree={degree}")
    rng = random.Random(seed)

    def attempt():
        edges = set()
        stubs = list(range(n)) * degree
        while stubs:
            retry = []
            rng.shuffle(stubs)
            it = iter(stubs)
            for a, b in zip(it, it):
                if a > b:
                    a, b = b, a
                if a != b and (a, b) not in edges:
                    edges.add((a, b))
                else:
                    retry.extend((a, b))
            if retry and len(retry) == len(stubs):
                return None  # no progress; restart from scratch
            stubs = retry
        return edges

    edges = attempt()
    while edges is None:
        edges = attempt()
    return build_graph(n, [(u, v, 1.0) for u, v in sorted(edges)])


_FAMILIES = {
    "hypercube": (hypercube, ("dim",)),
    "grid2d": (grid2d, ("side",)),
    "complete": (complete, ("n",)),
    "random_regular": (random_regular, ("n", "degree", "seed")),
    "barbell": (barbell, ("clique_size",)),
}


def generate(family: str, **params) -> WeightedGraph:
    """Dispatch to a named family: hypercube(dim), grid2d(side), complete(n),
    random_regular(n, degree, seed), barbell(clique_size)."""
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
    fn, names = _FAMILIES[family]
    missing = [p for p in names if p not in params]
    if missing:
        raise ValueError(f"family {family!r} requires parameters {list(names)}; missing {missing}")
    extra = [p for p in params if p not in names]
    if extra:
        raise ValueError(f"family {family!r} got unexpected parameters {extra}")
    return fn(**params)
