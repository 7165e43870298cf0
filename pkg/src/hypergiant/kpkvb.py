"""Sampling and adjacency for the hyperbolic disk model and its Poisson variant.

A vertex set is n points with angle uniform on (-pi, pi] and radius drawn
from the cosh-law quantile map; two vertices are adjacent when their
hyperbolic distance is at most the disk radius R.  The Poissonized variant
draws the vertex count Z ~ Poisson(n) first and then reads the same i.i.d.
point stream, so for a fixed seed the two vertex sets agree on their common
prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from . import neighbors
from .errors import DomainError, EstimationError
from .geometry import (
    KpkvbParams,
    PolarPoint,
    angle_diff,
    sample_radius,
    threshold_angle,
)
from .graphs import ComponentSummary, Graph, component_labels, components

__all__ = [
    "KpkvbParams",
    "VertexSet",
    "sample_vertices",
    "sample_vertices_poissonized",
    "build_graph",
    "components",
    "ComponentSummary",
    "powerlaw_mle",
    "degree_tail_exponent",
]


@dataclass(frozen=True)
class VertexSet:
    """Labelled sample points of one disk-model instance."""

    r: np.ndarray
    theta: np.ndarray
    params: KpkvbParams
    seed: int | None
    poissonized: bool = False

    def __len__(self) -> int:
        return len(self.r)

    def __getitem__(self, i: int) -> PolarPoint:
        return PolarPoint(float(self.r[i]), float(self.theta[i]))

    @property
    def points(self) -> list[PolarPoint]:
        return [self[i] for i in range(len(self))]

    def to_csv(self) -> str:
        lines = ["r,theta"]
        lines += [f"{r:.9g},{t:.9g}" for r, t in zip(self.r, self.theta)]
        return "\n".join(lines) + "\n"


def _seed_streams(seed) -> tuple[np.random.Generator, np.random.Generator]:
    """Two generators per seed: one for the point stream, one for the count.

    The point stream is shared between the fixed-size and Poissonized
    samplers, which realizes the prefix coupling between them.
    """
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    pts, count = ss.spawn(2)
    return np.random.default_rng(pts), np.random.default_rng(count)


def _points_from_stream(rng: np.random.Generator, count: int, params: KpkvbParams):
    uv = rng.random((count, 2))
    theta = math.pi - 2.0 * math.pi * uv[:, 0]  # lands in (-pi, pi]
    r = sample_radius(params.alpha, params.R, uv[:, 1])
    return np.asarray(r, dtype=float), theta


def sample_vertices(params: KpkvbParams, seed) -> VertexSet:
    """n i.i.d. points of the disk law; deterministic per seed."""
    rng_pts, _ = _seed_streams(seed)
    r, theta = _points_from_stream(rng_pts, params.n, params)
    return VertexSet(r=r, theta=theta, params=params, seed=_seed_label(seed))


def sample_vertices_poissonized(params: KpkvbParams, seed) -> VertexSet:
    """Z ~ Poisson(n) points read from the same stream as sample_vertices."""
    rng_pts, rng_count = _seed_streams(seed)
    z = int(rng_count.poisson(params.n))
    r, theta = _points_from_stream(rng_pts, z, params)
    return VertexSet(r=r, theta=theta, params=params, seed=_seed_label(seed), poissonized=True)


def _seed_label(seed):
    return int(seed) if isinstance(seed, (int, np.integer)) else None


def build_graph(vertices: VertexSet) -> Graph:
    """Exact disk adjacency (distance <= R), via an angular-strip index.

    Vertices are bucketed by the boundary-depth coordinate y = R - r into
    bands of height ln 2; the angular search window for a band pair is the
    threshold angle evaluated at the band tops, which dominates the threshold
    of every pair inside.  Candidates are then checked exactly, so the result
    equals the quadratic-time scan.
    """
    R = vertices.params.R
    r = vertices.r
    theta = vertices.theta
    y = np.maximum(R - r, 0.0)

    def window(top_a: float, top_b: float) -> float:
        ra = max(R - top_a, 0.0)
        rb = max(R - top_b, 0.0)
        if ra == 0.0 or rb == 0.0:
            return math.pi
        return float(threshold_angle(ra, rb, R))

    def predicate(I: np.ndarray, J: np.ndarray) -> np.ndarray:
        return angle_diff(theta[I], theta[J]) <= threshold_angle(r[I], r[J], R)

    edges = neighbors.collect_edges(theta, y, window, predicate, wrap=2.0 * math.pi)
    return Graph(vertex_count=len(vertices), edges=edges)


def powerlaw_mle(values, xmin: int) -> float:
    """Discrete maximum-likelihood power-law exponent over values >= xmin.

    Maximizes the Hurwitz-zeta likelihood of P(k) proportional to k^(-a).
    Requires at least 100 tail observations.
    """
    if xmin < 1:
        raise DomainError(f"xmin must be a positive integer, got {xmin}")
    vals = np.asarray(values)
    tail = vals[vals >= xmin].astype(float)
    if len(tail) < 100:
        raise EstimationError(
            f"need at least 100 observations >= xmin={xmin}, found {len(tail)}"
        )
    mean_log = float(np.mean(np.log(tail)))

    def neg_loglik(a: float) -> float:
        return a * mean_log + math.log(zeta(a, xmin))

    res = minimize_scalar(neg_loglik, bounds=(1.05, 12.0), method="bounded")
    if not res.success:
        raise EstimationError("tail exponent fit failed to converge")
    return float(res.x)


def degree_tail_exponent(graph: Graph, xmin: int) -> float:
    """Maximum-likelihood tail exponent of the graph's degree sequence."""
    return powerlaw_mle(graph.degrees(), xmin)
