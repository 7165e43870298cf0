"""Transport between the disk model and the half-plane strip.

The map (r, theta) -> (theta e^{R/2} / 2, R - r) sends disk vertices to a
strip of circumference pi e^{R/2}; on the strip the wrap-around graph with
threshold e^{(y+y')/2} approximates exact disk adjacency, and the pushforward
of the radial law approaches the exponential intensity of the half-plane
process.  This module exposes the map, the intensity comparison, and pairwise
agreement counts between the two adjacency rules.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from . import neighbors
from .errors import DomainError
from .geometry import PolarPoint, angle_diff, threshold_angle
from .kpkvb import VertexSet

__all__ = [
    "StripPoint",
    "psi",
    "psi_inverse",
    "psi_arrays",
    "strip_circumference",
    "strip_intensity",
    "strip_intensity_discrepancy",
    "strip_points_csv",
    "EdgeAgreementReport",
    "edge_agreement",
]


@dataclass(frozen=True)
class StripPoint:
    """Image of a disk vertex on the strip: |x| <= (pi/2) e^{R/2}, 0 <= y <= R."""

    x: float
    y: float


def strip_circumference(R: float) -> float:
    return math.pi * math.exp(R / 2.0)


def psi_arrays(r, theta, R: float):
    x = np.asarray(theta, dtype=float) * math.exp(R / 2.0) / 2.0
    y = R - np.asarray(r, dtype=float)
    return x, y


def psi(p: PolarPoint, R: float) -> StripPoint:
    """Map a disk vertex to the strip."""
    if not 0.0 <= p.r <= R:
        raise DomainError("psi needs 0 <= r <= R")
    x, y = psi_arrays(p.r, p.theta, R)
    return StripPoint(x=float(x), y=float(y))


def psi_inverse(sp: StripPoint, R: float) -> PolarPoint:
    """Inverse map back to polar coordinates."""
    theta = 2.0 * sp.x * math.exp(-R / 2.0)
    return PolarPoint(r=R - sp.y, theta=theta)


def strip_points_csv(vertices: VertexSet) -> str:
    """Strip images of a vertex set as CSV with header 'x,y'."""
    x, y = psi_arrays(vertices.r, vertices.theta, vertices.params.R)
    lines = ["x,y"]
    lines += [f"{a:.9g},{b:.9g}" for a, b in zip(x, y)]
    return "\n".join(lines) + "\n"


class StripIntensity(NamedTuple):
    pushforward: float
    target: float
    ratio: float


def strip_intensity(alpha: float, nu: float, R: float, y: float) -> StripIntensity:
    """Pushforward density of the disk law on the strip versus its limit.

    pushforward(y) = (nu alpha / pi) sinh(alpha (R - y)) / (cosh(alpha R) - 1)
    target(y)      = (nu alpha / pi) exp(-alpha y)
    The ratio equals (1 - e^{2 alpha (y - R)}) / (1 - e^{-alpha R})^2: close to
    one near the boundary y = 0, vanishing at y = R.
    """
    if not 0.0 <= y <= R:
        raise DomainError("strip_intensity needs 0 <= y <= R")
    base = nu * alpha / math.pi
    target = base * math.exp(-alpha * y)
    ratio = ((1.0 - math.exp(2.0 * alpha * (y - R)))
             / (1.0 - math.exp(-alpha * R)) ** 2)
    return StripIntensity(pushforward=target * ratio, target=target, ratio=ratio)


def strip_intensity_discrepancy(alpha: float, nu: float, R: float) -> float:
    """Total-variation proxy: strip width times the integrated density gap."""

    def gap(y: float) -> float:
        si = strip_intensity(alpha, nu, R, y)
        return abs(si.pushforward - si.target)

    val, _ = quad(gap, 0.0, R, limit=200)
    return strip_circumference(R) * val


@dataclass(frozen=True)
class EdgeAgreementReport:
    """Pairwise agreement between exact disk adjacency and the strip rule.

    Counts are over candidate pairs (pairs close enough in angle to be
    adjacent in at least one of the two models).  g_only counts are split at
    r_i + r_j = 3R/2: the strip rule is expected to match exactly beyond it.
    """

    total_pairs: int
    agreements: int
    gamma_only: int
    g_only_outer: int
    g_only_inner: int
    vertex_count: int

    @property
    def gamma_only_rate(self) -> float:
        return self.gamma_only / self.total_pairs if self.total_pairs else 0.0

    def to_json_dict(self) -> dict:
        return {
            "total_pairs": self.total_pairs,
            "agreements": self.agreements,
            "gamma_only": self.gamma_only,
            "g_only_outer": self.g_only_outer,
            "g_only_inner": self.g_only_inner,
            "gamma_only_rate": self.gamma_only_rate,
            "vertex_count": self.vertex_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def edge_agreement(vertices: VertexSet) -> EdgeAgreementReport:
    """Compare disk adjacency with the wrapped strip rule on the same points.

    Candidate pairs are found with the banded angular index, windowed by the
    larger of the two thresholds, so every pair adjacent in either model is
    examined.
    """
    R = vertices.params.R
    r = vertices.r
    theta = vertices.theta
    y = np.maximum(R - r, 0.0)
    half_circ = math.pi  # angular half-circumference

    def window(top_a: float, top_b: float) -> float:
        ra, rb = max(R - top_a, 0.0), max(R - top_b, 0.0)
        if ra == 0.0 or rb == 0.0:
            return half_circ
        ang = float(threshold_angle(ra, rb, R))
        strip = 2.0 * math.exp((top_a + top_b) / 2.0 - R / 2.0)
        return min(max(ang, strip), half_circ)

    total = 0
    agree = 0
    gamma_only = 0
    g_only_outer = 0
    g_only_inner = 0
    for I, J in neighbors.candidate_pairs(theta, y, window, wrap=2.0 * math.pi):
        dtheta = angle_diff(theta[I], theta[J])
        disk_edge = dtheta <= threshold_angle(r[I], r[J], R)
        # the strip rule, rewritten in angle units through the map
        strip_edge = dtheta <= 2.0 * np.exp((y[I] + y[J]) / 2.0 - R / 2.0)
        either = disk_edge | strip_edge
        di, si = disk_edge[either], strip_edge[either]
        outer = (r[I] + r[J])[either] >= 1.5 * R
        total += int(np.count_nonzero(either))
        agree += int(np.count_nonzero(di & si))
        gamma_only += int(np.count_nonzero(si & ~di))
        g_only_outer += int(np.count_nonzero(di & ~si & outer))
        g_only_inner += int(np.count_nonzero(di & ~si & ~outer))
    return EdgeAgreementReport(
        total_pairs=total,
        agreements=agree,
        gamma_only=gamma_only,
        g_only_outer=g_only_outer,
        g_only_inner=g_only_inner,
        vertex_count=len(vertices),
    )
