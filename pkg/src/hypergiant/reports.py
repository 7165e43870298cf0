"""Figure rendering for the command-line report paths.

All figures are drawn with matplotlib on the Agg backend and written straight
to a file.  The disk layout uses a fixed 1000x1000 viewBox when saved as SVG
(figure size 1000/72 inches at 72 pt/inch); edges are straight chords, a
deliberate rendering simplification.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.collections import LineCollection  # noqa: E402

from .graphs import Graph  # noqa: E402
from .kpkvb import VertexSet  # noqa: E402

_DISK_SIDE_PT = 1000.0 / 72.0  # inches; 72 pt/in makes the SVG viewBox 1000x1000


def _save(fig, path: str, metadata: dict | None = None) -> None:
    kwargs = {}
    if path.endswith(".svg"):
        md = {"Date": None}
        if metadata:
            md["Description"] = str(metadata)
        kwargs["metadata"] = md
    fig.savefig(path, **kwargs)
    plt.close(fig)


def disk_figure(vertices: VertexSet, graph: Graph | None, path: str,
                metadata: dict | None = None) -> None:
    """Scatter the disk layout (radius scaled to the unit disk), with chords."""
    R = vertices.params.R
    rho = vertices.r / R
    xs = rho * np.cos(vertices.theta)
    ys = rho * np.sin(vertices.theta)
    fig, ax = plt.subplots(figsize=(_DISK_SIDE_PT, _DISK_SIDE_PT))
    if graph is not None and graph.edge_count:
        segs = np.stack(
            [np.column_stack([xs[graph.edges[:, 0]], ys[graph.edges[:, 0]]]),
             np.column_stack([xs[graph.edges[:, 1]], ys[graph.edges[:, 1]]])],
            axis=1,
        )
        ax.add_collection(LineCollection(segs, colors="steelblue",
                                         linewidths=0.4, alpha=0.5, zorder=1))
    ax.scatter(xs, ys, s=6, c="darkred", zorder=2)
    boundary = plt.Circle((0, 0), 1.0, fill=False, color="black", linewidth=0.8)
    ax.add_patch(boundary)
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.axis("off")
    _save(fig, path, metadata)


def lln_figure(rows: list[dict], path: str, metadata: dict | None = None) -> None:
    """Largest/second component fractions against the instance size."""
    ns = [row["N"] for row in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    for col, style, label in [
        ("mean_c1_g", "o-", "largest, fixed size"),
        ("mean_c1_gpo", "s--", "largest, Poissonized"),
        ("mean_c2_g", "^-", "second, fixed size"),
        ("mean_c2_gpo", "v--", "second, Poissonized"),
    ]:
        ax.errorbar(ns, [r[col] for r in rows],
                    yerr=[r[col.replace("mean", "sd")] for r in rows],
                    fmt=style, capsize=3, label=label)
    ax.set_xscale("log")
    ax.set_xlabel("vertices N")
    ax.set_ylabel("component fraction")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path, metadata)


def crossing_figure(crossing_probs: list[tuple[float, float]], lo: float, hi: float,
                    path: str, metadata: dict | None = None) -> None:
    """Crossing probability against intensity, with the returned bracket."""
    lams = [l for l, _ in crossing_probs]
    ps = [p for _, p in crossing_probs]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(lams, ps, "o-", color="steelblue")
    ax.axhline(0.5, color="gray", linestyle=":")
    ax.axvspan(lo, hi, color="orange", alpha=0.25, label=f"bracket [{lo:.3g}, {hi:.3g}]")
    ax.set_xlabel("intensity")
    ax.set_ylabel("slab-crossing probability")
    ax.set_ylim(-0.02, 1.02)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path, metadata)


def theta_grid_figure(grid: list[tuple[float, float]], alpha: float, nu: float,
                      path: str, metadata: dict | None = None) -> None:
    """Percolation-probability quadrature nodes and the integrand weight."""
    ys = [y for y, _ in grid]
    ts = [t for _, t in grid]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ys, ts, "o-", color="darkred", label="percolation probability")
    weight = [alpha * math.exp(-alpha * y) for y in ys]
    ax.plot(ys, weight, ":", color="gray", label="density weight")
    ax.set_xlabel("planted height y")
    ax.set_ylim(-0.02, 1.05)
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path, metadata)
