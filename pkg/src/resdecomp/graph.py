"""Weighted undirected graphs and cut/volume/conductance arithmetic.

Vertices are dense 0-based integers. Graphs are immutable after
construction; every operation here is a pure function of its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.csgraph as csgraph


class WeightedGraph:
    """Immutable undirected graph with positive edge weights.

    Stores a canonical edge list (u < v, sorted lexicographically) plus a
    CSR-style adjacency for O(deg) neighbor scans. Parallel input edges are
    merged by weight sum and self-loops dropped at build time, so instances
    always describe simple graphs. Use :func:`build_graph` to construct one.
    """

    __slots__ = ("n", "m", "edge_u", "edge_v", "edge_w",
                 "indptr", "indices", "weights", "degrees", "total_weight")

    def __init__(self, n: int, edge_u: np.ndarray, edge_v: np.ndarray, edge_w: np.ndarray):
        self.n = int(n)
        self.m = int(edge_u.shape[0])
        self.edge_u = edge_u
        self.edge_v = edge_v
        self.edge_w = edge_w

        # symmetric CSR adjacency, neighbor ids ascending per vertex
        src = np.concatenate([edge_u, edge_v])
        dst = np.concatenate([edge_v, edge_u])
        wgt = np.concatenate([edge_w, edge_w])
        order = np.lexsort((dst, src))
        src, dst, wgt = src[order], dst[order], wgt[order]
        self.indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.add.at(self.indptr, src + 1, 1)
        np.cumsum(self.indptr, out=self.indptr)
        self.indices = dst
        self.weights = wgt

        degrees = np.zeros(self.n)
        np.add.at(degrees, src, wgt)
        self.degrees = degrees
        self.total_weight = float(edge_w.sum())

        for arr in (self.edge_u, self.edge_v, self.edge_w,
                    self.indptr, self.indices, self.weights, self.degrees):
            arr.flags.writeable = False

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor ids and edge weights of ``v`` (ids ascending)."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def degree(self, v: int) -> float:
        return float(self.degrees[v])

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Canonical edge arrays ``(u, v, w)`` with u < v."""
        return self.edge_u, self.edge_v, self.edge_w

    def adjacency_matrix(self) -> sp.csr_matrix:
        """Weighted adjacency as a scipy CSR matrix."""
        return sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(self.n, self.n))

    def min_weight(self) -> float:
        if self.m == 0:
            raise ValueError("graph has no edges")
        return float(self.edge_w.min())

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m}, total_weight={self.total_weight:g})"


@dataclass(frozen=True)
class CutStats:
    """Boundary weight, volume and conductance of a vertex set.

    ``conductance`` is None when the set has zero volume (the quantity is
    undefined there, which is not an error).
    """
    subset: np.ndarray
    boundary_weight: float
    volume: float
    conductance: float | None


def build_graph(n: int, edges) -> WeightedGraph:
    """Build a graph from an iterable of ``(u, v, w)`` triples.

    Parallel entries for the same unordered pair are merged by summing
    weights; self-loops are dropped. Weights must be positive and finite;
    the index of the first offending edge is reported otherwise.
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    edges = list(edges)
    if not edges:
        empty = np.array([], dtype=np.int64)
        return WeightedGraph(n, empty, empty.copy(), np.array([], dtype=np.float64))

    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    ew = np.array([e[2] for e in edges], dtype=np.float64)

    bad = ~(np.isfinite(ew) & (ew > 0))
    if bad.any():
        i = int(np.argmax(bad))
        raise ValueError(f"edge {i} ({eu[i]}, {ev[i]}): weight must be positive and finite, got {ew[i]}")
    out = (eu < 0) | (eu >= n) | (ev < 0) | (ev >= n)
    if out.any():
        i = int(np.argmax(out))
        raise ValueError(f"edge {i}: vertex id out of range [0, {n}): ({eu[i]}, {ev[i]})")

    keep = eu != ev  # drop self-loops
    eu, ev, ew = eu[keep], ev[keep], ew[keep]
    lo = np.minimum(eu, ev)
    hi = np.maximum(eu, ev)

    pairs = np.stack([lo, hi], axis=1)
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    w = np.zeros(len(uniq))
    np.add.at(w, inverse.ravel(), ew)
    return WeightedGraph(n, uniq[:, 0].copy(), uniq[:, 1].copy(), w)


def _subset_mask(g: WeightedGraph, s) -> np.ndarray:
    ids = np.unique(np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.int64))
    if ids.size and (ids[0] < 0 or ids[-1] >= g.n):
        raise ValueError(f"vertex id out of range [0, {g.n})")
    mask = np.zeros(g.n, dtype=bool)
    mask[ids] = True
    return mask


def cut_stats(g: WeightedGraph, s) -> CutStats:
    """Boundary weight, volume and conductance of the vertex set ``s``."""
    mask = _subset_mask(g, s)
    eu, ev, ew = g.edges()
    crossing = mask[eu] != mask[ev]
    boundary = float(ew[crossing].sum())
    volume = float(g.degrees[mask].sum())
    conductance = boundary / volume if volume > 0 else None
    return CutStats(subset=np.flatnonzero(mask), boundary_weight=boundary,
                    volume=volume, conductance=conductance)


def induced_subgraph(g: WeightedGraph, s) -> tuple[WeightedGraph, np.ndarray]:
    """Subgraph induced by ``s`` plus the id mapping.

    Returns ``(h, vertices)`` where ``vertices[i]`` is the original id of
    the subgraph's vertex ``i`` (ascending); edges keep their weights.
    """
    mask = _subset_mask(g, s)
    vertices = np.flatnonzero(mask)
    renumber = np.full(g.n, -1, dtype=np.int64)
    renumber[vertices] = np.arange(vertices.size)
    eu, ev, ew = g.edges()
    keep = mask[eu] & mask[ev]
    h = WeightedGraph(vertices.size, renumber[eu[keep]], renumber[ev[keep]], ew[keep].copy())
    return h, vertices


def connected_components(g: WeightedGraph) -> list[np.ndarray]:
    """Vertex sets of the connected components, ordered by smallest member id."""
    if g.n == 0:
        return []
    ncomp, labels = csgraph.connected_components(g.adjacency_matrix(), directed=False)
    comps = [np.flatnonzero(labels == c) for c in range(ncomp)]
    comps.sort(key=lambda c: int(c[0]))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def scale_weights(g: WeightedGraph, alpha: float) -> WeightedGraph:
    """Graph with every edge weight multiplied by ``alpha`` (> 0)."""
    if not (alpha > 0 and np.isfinite(alpha)):
        raise ValueError(f"scale factor must be positive and finite, got {alpha}")
    return WeightedGraph(g.n, g.edge_u.copy(), g.edge_v.copy(), g.edge_w * alpha)
