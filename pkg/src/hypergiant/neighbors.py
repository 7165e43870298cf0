"""Banded neighbor search shared by the disk and half-plane graph builders.

Points are bucketed into horizontal bands of height ln 2 by their height
coordinate.  For every ordered pair of bands an upper bound on the interaction
range is computed from the band tops; candidate pairs are then found with
binary searches over per-band position-sorted arrays.  Callers apply the exact
adjacency predicate to the candidates, so the construction is exact as long as
the band window dominates the true pairwise threshold.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np

LN2 = math.log(2.0)

# multiplicative safety margin so float rounding can never shrink a window
# below the true pairwise threshold
_WINDOW_SLACK = 1.0 + 1e-9


def _band_of(height: np.ndarray) -> np.ndarray:
    return np.floor(np.maximum(height, 0.0) / LN2).astype(np.int64)


def candidate_pairs(
    pos: np.ndarray,
    height: np.ndarray,
    window_fn: Callable[[float, float], float],
    wrap: float | None = None,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield arrays (I, J) of candidate index pairs, each unordered pair once.

    pos       horizontal coordinate (angle for the disk, x otherwise)
    height    band coordinate, nonnegative
    window_fn maps the two band tops to an upper bound on |pos_i - pos_j|
              over adjacent pairs in those bands
    wrap      circumference of a cyclic coordinate, or None for the line
    """
    n = len(pos)
    if n < 2:
        return
    bands = _band_of(height)
    order = np.argsort(bands, kind="stable")
    sorted_bands = bands[order]
    uniq, starts = np.unique(sorted_bands, return_index=True)
    ends = np.append(starts[1:], n)

    # per-band indices sorted by position
    band_idx: dict[int, np.ndarray] = {}
    band_pos: dict[int, np.ndarray] = {}
    for b, s, e in zip(uniq, starts, ends):
        members = order[s:e]
        psort = np.argsort(pos[members], kind="stable")
        band_idx[int(b)] = members[psort]
        band_pos[int(b)] = pos[members][psort]

    blist = [int(b) for b in uniq]
    for ai in range(len(blist)):
        for bi in range(ai, len(blist)):
            a, b = blist[ai], blist[bi]
            win = window_fn((a + 1) * LN2, (b + 1) * LN2) * _WINDOW_SLACK
            ia, xa = band_idx[a], band_pos[a]
            ib, xb = band_idx[b], band_pos[b]
            same = a == b
            if wrap is not None and win >= wrap / 2.0:
                yield _all_pairs(ia, ib, same)
                continue
            if wrap is None and not np.isfinite(win):
                yield _all_pairs(ia, ib, same)
                continue
            if wrap is not None:
                xq = np.concatenate([xb - wrap, xb, xb + wrap])
                iq = np.concatenate([ib, ib, ib])
            else:
                xq, iq = xb, ib
            lo = np.searchsorted(xq, xa - win, side="left")
            hi = np.searchsorted(xq, xa + win, side="right")
            cnt = hi - lo
            total = int(cnt.sum())
            if total == 0:
                continue
            I = np.repeat(ia, cnt)
            offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            J = iq[np.repeat(lo, cnt) + offs]
            if same:
                keep = I < J
                I, J = I[keep], J[keep]
            else:
                keep = I != J
                if not np.all(keep):
                    I, J = I[keep], J[keep]
            if len(I):
                yield I, J


def _all_pairs(ia: np.ndarray, ib: np.ndarray, same: bool) -> tuple[np.ndarray, np.ndarray]:
    if same:
        iu, ju = np.triu_indices(len(ia), k=1)
        return ia[iu], ia[ju]
    I = np.repeat(ia, len(ib))
    J = np.tile(ib, len(ia))
    return I, J


def collect_edges(
    pos: np.ndarray,
    height: np.ndarray,
    window_fn: Callable[[float, float], float],
    predicate: Callable[[np.ndarray, np.ndarray], np.ndarray],
    wrap: float | None = None,
) -> np.ndarray:
    """Return the (m, 2) int64 edge array {(i, j): predicate}, rows i < j, sorted."""
    chunks = []
    for I, J in candidate_pairs(pos, height, window_fn, wrap=wrap):
        mask = predicate(I, J)
        if np.any(mask):
            chunks.append(np.column_stack([I[mask], J[mask]]))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    edges = np.concatenate(chunks).astype(np.int64)
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    edges = np.column_stack([lo, hi])
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]
