"""Simple undirected graphs over integer labels, and their components."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph: vertex count plus an (m, 2) edge array."""

    vertex_count: int
    edges: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "edges", e)
        if len(e):
            if e.min() < 0 or e.max() >= self.vertex_count:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("self-loops are not allowed")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.vertex_count)

    def mean_degree(self) -> float:
        if self.vertex_count == 0:
            return 0.0
        return 2.0 * self.edge_count / self.vertex_count

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edges}

    def to_edge_list_text(self) -> str:
        """Edge list, one '<u> <v>' line per edge, 0-based labels."""
        return "\n".join(f"{u} {v}" for u, v in self.edges) + ("\n" if len(self.edges) else "")


def component_labels(graph: Graph) -> np.ndarray:
    """Label vertices by component via vectorized union-find.

    Hooking assigns each endpoint's root the smaller of the two roots, and
    pointer jumping compresses paths; iterate to a fixpoint.
    """
    n = graph.vertex_count
    parent = np.arange(n, dtype=np.int64)
    if graph.edge_count == 0:
        return parent
    u = graph.edges[:, 0]
    v = graph.edges[:, 1]
    while True:
        pu, pv = parent[u], parent[v]
        lo = np.minimum(pu, pv)
        hi = np.maximum(pu, pv)
        np.minimum.at(parent, hi, lo)
        while True:
            gp = parent[parent]
            if np.array_equal(gp, parent):
                break
            parent = gp
        if np.array_equal(parent[u], parent[v]):
            break
    return parent


@dataclass(frozen=True)
class ComponentSummary:
    """Component sizes in decreasing order plus largest/second fractions.

    Equal sizes are ordered by the smallest vertex label they contain.
    """

    sizes: list[int]
    c1_frac: float
    c2_frac: float
    min_labels: list[int] = field(default_factory=list, repr=False)

    def to_json_dict(self) -> dict:
        return {"sizes": self.sizes, "c1_frac": self.c1_frac, "c2_frac": self.c2_frac}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def components(graph: Graph) -> ComponentSummary:
    """Exact connected components of the graph, summarized."""
    labels = component_labels(graph)
    n = graph.vertex_count
    if n == 0:
        return ComponentSummary(sizes=[], c1_frac=0.0, c2_frac=0.0)
    roots, inverse, counts = np.unique(labels, return_inverse=True, return_counts=True)
    # the min vertex label of each component is its root, by construction
    order = np.lexsort((roots, -counts))
    sizes = counts[order]
    if int(sizes.sum()) != n:
        raise AssertionError("component sizes must sum to the vertex count")
    c1 = int(sizes[0]) / n
    c2 = int(sizes[1]) / n if len(sizes) > 1 else 0.0
    return ComponentSummary(
        sizes=[int(s) for s in sizes],
        c1_frac=c1,
        c2_frac=c2,
        min_labels=[int(r) for r in roots[order]],
    )
