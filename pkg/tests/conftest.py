"""Shared brute-force oracles for the test suite.

These deliberately avoid the library's accelerated code paths: adjacency is
re-derived from the raw definitions with quadratic scans, and components come
from a queue-based search, so agreement with the package is meaningful.
"""

import math
from collections import deque

import numpy as np


def brute_disk_edge_set(r, theta, R):
    """All pairs within hyperbolic distance R, by the raw cosine rule."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    n = len(r)
    cosh_r = np.cosh(r)
    sinh_r = np.sinh(r)
    dt = np.abs(theta[:, None] - theta[None, :])
    dt = np.minimum(dt, 2 * math.pi - dt)
    arg = cosh_r[:, None] * cosh_r[None, :] - np.cos(dt) * sinh_r[:, None] * sinh_r[None, :]
    d = np.arccosh(np.maximum(arg, 1.0))
    iu, ju = np.triu_indices(n, k=1)
    hit = d[iu, ju] <= R
    return set(zip(iu[hit].tolist(), ju[hit].tolist()))


def brute_gamma_edge_set(x, y):
    """All pairs with |x_i - x_j| strictly below exp((y_i + y_j)/2)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    dx = np.abs(x[:, None] - x[None, :])
    t = np.exp((y[:, None] + y[None, :]) / 2.0)
    iu, ju = np.triu_indices(n, k=1)
    hit = dx[iu, ju] < t[iu, ju]
    return set(zip(iu[hit].tolist(), ju[hit].tolist()))


def brute_torus_edge_set(x, y, circumference):
    """Wrap-around variant with the non-strict inequality."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    dx = np.abs(x[:, None] - x[None, :])
    dx = np.minimum(dx, circumference - dx)
    t = np.exp((y[:, None] + y[None, :]) / 2.0)
    iu, ju = np.triu_indices(n, k=1)
    hit = dx[iu, ju] <= t[iu, ju]
    return set(zip(iu[hit].tolist(), ju[hit].tolist()))


def cross_above_segment_violations(rng, required):
    """Sample configurations of an edge plus a point above it; count failures
    of the claim that the high point joins at least one endpoint."""
    found = 0
    violations = 0
    while found < required:
        x = rng.uniform(-5, 5, (40_000, 3))
        y = rng.uniform(0, 4, (40_000, 3))
        edge_ij = np.abs(x[:, 0] - x[:, 1]) < np.exp((y[:, 0] + y[:, 1]) / 2)
        between = ((np.minimum(x[:, 0], x[:, 1]) <= x[:, 2])
                   & (x[:, 2] <= np.maximum(x[:, 0], x[:, 1])))
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (x[:, 2] - x[:, 0]) / (x[:, 1] - x[:, 0])
        line_y = y[:, 0] + t * (y[:, 1] - y[:, 0])
        above = y[:, 2] > line_y
        valid = edge_ij & between & above & (x[:, 0] != x[:, 1])
        if not np.any(valid):
            continue
        xv, yv = x[valid], y[valid]
        e_ki = np.abs(xv[:, 2] - xv[:, 0]) < np.exp((yv[:, 2] + yv[:, 0]) / 2)
        e_kj = np.abs(xv[:, 2] - xv[:, 1]) < np.exp((yv[:, 2] + yv[:, 1]) / 2)
        violations += int(np.count_nonzero(~(e_ki | e_kj)))
        found += int(valid.sum())
    return found, violations


def _segments_cross(x, y):
    def orient(ax, ay, bx, by, cx, cy):
        return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))

    d1 = orient(x[:, 0], y[:, 0], x[:, 1], y[:, 1], x[:, 2], y[:, 2])
    d2 = orient(x[:, 0], y[:, 0], x[:, 1], y[:, 1], x[:, 3], y[:, 3])
    d3 = orient(x[:, 2], y[:, 2], x[:, 3], y[:, 3], x[:, 0], y[:, 0])
    d4 = orient(x[:, 2], y[:, 2], x[:, 3], y[:, 3], x[:, 1], y[:, 1])
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def crossing_segments_violations(rng, required):
    """Sample pairs of crossing edges; count failures of the claim that one
    of the four cross pairs is also an edge."""
    found = 0
    violations = 0
    while found < required:
        x = rng.uniform(-5, 5, (60_000, 4))
        y = rng.uniform(0, 4, (60_000, 4))
        e_ij = np.abs(x[:, 0] - x[:, 1]) < np.exp((y[:, 0] + y[:, 1]) / 2)
        e_kl = np.abs(x[:, 2] - x[:, 3]) < np.exp((y[:, 2] + y[:, 3]) / 2)
        valid = e_ij & e_kl & _segments_cross(x, y)
        if not np.any(valid):
            continue
        xv, yv = x[valid], y[valid]

        def edge(a, b):
            return np.abs(xv[:, a] - xv[:, b]) < np.exp((yv[:, a] + yv[:, b]) / 2)

        ok = edge(0, 2) | edge(0, 3) | edge(1, 2) | edge(1, 3)
        violations += int(np.count_nonzero(~ok))
        found += int(valid.sum())
    return found, violations


def box_adjacency_violations(rng, count):
    """Random points in a box and one of its five forced neighbors; count
    pairs that fail the adjacency inequality."""
    from hypergiant import BoxIndex
    from hypergiant.continuum import box_bounds

    i = rng.integers(0, 12, count)
    j = rng.integers(-30, 30, count)
    kinds = rng.integers(0, 5, count)
    keep = ~((kinds >= 3) & (i == 0))  # no row below row 0
    i, j, kinds = i[keep], j[keep], kinds[keep]

    def neighbor(ii, jj, kind):
        if kind == 0:
            return ii + 1, jj // 2
        if kind == 1:
            return ii, jj - 1
        if kind == 2:
            return ii, jj + 1
        if kind == 3:
            return ii - 1, 2 * jj
        return ii - 1, 2 * jj + 1

    def bounds_arrays(ii, jj):
        width = 2.0 ** (ii.astype(float) - 1.0)
        return jj * width, (jj + 1) * width, ii * math.log(2), (ii + 1) * math.log(2)

    ni = np.empty_like(i)
    nj = np.empty_like(j)
    for row in range(len(i)):
        ni[row], nj[row] = neighbor(int(i[row]), int(j[row]), int(kinds[row]))
    u = rng.random((len(i), 4))
    x_lo, x_hi, y_lo, y_hi = bounds_arrays(i, j)
    px = x_lo + u[:, 0] * (x_hi - x_lo)
    py = y_lo + u[:, 1] * (y_hi - y_lo)
    x_lo, x_hi, y_lo, y_hi = bounds_arrays(ni, nj)
    qx = x_lo + u[:, 2] * (x_hi - x_lo)
    qy = y_lo + u[:, 3] * (y_hi - y_lo)
    ok = np.abs(px - qx) < np.exp((py + qy) / 2.0)
    return len(i), int(np.count_nonzero(~ok))


def bfs_component_sizes(n, edges):
    """Component sizes (descending) via breadth-first search."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[int(u)].append(int(v))
        adj[int(v)].append(int(u))
    seen = [False] * n
    sizes = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        size = 1
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nb in adj[node]:
                if not seen[nb]:
                    seen[nb] = True
                    size += 1
                    queue.append(nb)
        sizes.append(size)
    return sorted(sizes, reverse=True)
