"""The half-plane point process, its graph, box dissection and window events.

Points live on [-W, W] x [0, H] with intensity lam * exp(-alpha * y); two
points are joined when |x_i - x_j| < exp((y_i + y_j)/2).  The torus variant
wraps the x coordinate and uses a non-strict inequality, matching the strip
approximation of the disk model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import neighbors
from .errors import DomainError
from .geometry import LN2, HalfPlanePoint
from .graphs import Graph, component_labels

__all__ = [
    "ContinuumParams",
    "Window",
    "ContinuumSample",
    "LayeredPoint",
    "LayeredProcess",
    "BoxIndex",
    "sample_continuum",
    "sample_layered",
    "sample_layered_process",
    "gamma_graph",
    "gamma_graph_torus",
    "box_index",
    "expected_box_count",
    "event_T",
    "event_U",
    "event_C",
    "EventEstimate",
    "estimate_event",
    "explore_rightmost",
    "mecke_check",
]


@dataclass(frozen=True)
class ContinuumParams:
    """Intensity parameters: point density lam * exp(-alpha * y)."""

    alpha: float
    lam: float

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.lam <= 0:
            raise DomainError(f"lambda must be positive, got {self.lam}")

    def intensity(self, y):
        return self.lam * np.exp(-self.alpha * np.asarray(y, dtype=float))


@dataclass(frozen=True)
class Window:
    """Simulation rectangle [-half_width, half_width] x [0, height]."""

    half_width: float
    height: float

    def __post_init__(self):
        if self.half_width <= 0 or self.height <= 0:
            raise DomainError("window dimensions must be positive")

    def contains_box(self, half_width: float, height: float, slack: float = 1e-9) -> bool:
        return (self.half_width >= half_width * (1 - slack)
                and self.height >= height * (1 - slack))

    def mean_count(self, params: ContinuumParams) -> float:
        a = params.alpha
        return 2.0 * self.half_width * params.lam * (1.0 - math.exp(-a * self.height)) / a


@dataclass(frozen=True)
class ContinuumSample:
    """A finite draw of the process inside a window, with seed provenance."""

    x: np.ndarray
    y: np.ndarray
    params: ContinuumParams
    window: Window
    seed: int | None

    def __len__(self) -> int:
        return len(self.x)

    def __getitem__(self, i: int) -> HalfPlanePoint:
        return HalfPlanePoint(float(self.x[i]), float(self.y[i]))

    @property
    def points(self) -> list[HalfPlanePoint]:
        return [self[i] for i in range(len(self))]

    def to_csv(self) -> str:
        lines = ["x,y"]
        lines += [f"{a:.9g},{b:.9g}" for a, b in zip(self.x, self.y)]
        return "\n".join(lines) + "\n"


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _seed_label(seed):
    return int(seed) if isinstance(seed, (int, np.integer)) else None


def sample_continuum(params: ContinuumParams, window: Window, seed) -> ContinuumSample:
    """Poisson sample of the window: count ~ Poisson(mass), x uniform,
    y by the inverse CDF of the height-truncated exponential."""
    rng = _rng(seed)
    mu = window.mean_count(params)
    count = int(rng.poisson(mu))
    uv = rng.random((count, 2))
    x = (2.0 * uv[:, 0] - 1.0) * window.half_width
    tail = 1.0 - math.exp(-params.alpha * window.height)
    y = -np.log1p(-uv[:, 1] * tail) / params.alpha
    return ContinuumSample(x=x, y=y, params=params, window=window, seed=_seed_label(seed))


class LayeredPoint(NamedTuple):
    """A base point of the layered construction: position plus level z."""

    x: float
    y: float
    z: float


@dataclass(frozen=True)
class LayeredProcess:
    """Unit-rate Poisson points under the envelope z < z_cap * exp(-alpha_floor * y).

    Slicing at (alpha, lam) keeps the points with z < lam * exp(-alpha * y);
    slices are genuine subsets of each other whenever the parameters are
    ordered, which gives exactly coupled samples.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    window: Window
    z_cap: float
    alpha_floor: float
    seed: int | None

    def __len__(self) -> int:
        return len(self.x)

    def __getitem__(self, i: int) -> LayeredPoint:
        return LayeredPoint(float(self.x[i]), float(self.y[i]), float(self.z[i]))

    def slice(self, alpha: float, lam: float) -> ContinuumSample:
        params = ContinuumParams(alpha=alpha, lam=lam)
        if lam > self.z_cap:
            raise DomainError(f"slice needs lam <= z_cap, got {lam} > {self.z_cap}")
        if alpha < self.alpha_floor:
            raise DomainError(
                f"slice needs alpha >= alpha_floor, got {alpha} < {self.alpha_floor}"
            )
        keep = self.z < lam * np.exp(-alpha * self.y)
        return ContinuumSample(
            x=self.x[keep], y=self.y[keep], params=params,
            window=self.window, seed=self.seed,
        )


def sample_layered_process(window: Window, z_cap: float, seed,
                           alpha_floor: float = 1.0) -> LayeredProcess:
    """Draw the layered base process once; every slice is read off it."""
    if z_cap <= 0:
        raise DomainError("z_cap must be positive")
    if alpha_floor <= 0:
        raise DomainError("alpha_floor must be positive")
    rng = _rng(seed)
    envelope = ContinuumParams(alpha=alpha_floor, lam=z_cap)
    mu = window.mean_count(envelope)
    count = int(rng.poisson(mu))
    uvw = rng.random((count, 3))
    x = (2.0 * uvw[:, 0] - 1.0) * window.half_width
    tail = 1.0 - math.exp(-alpha_floor * window.height)
    y = -np.log1p(-uvw[:, 1] * tail) / alpha_floor
    z = uvw[:, 2] * z_cap * np.exp(-alpha_floor * y)
    return LayeredProcess(x=x, y=y, z=z, window=window, z_cap=z_cap,
                          alpha_floor=alpha_floor, seed=_seed_label(seed))


def sample_layered(alpha_list, lambda_list, window: Window, z_cap: float, seed) -> dict:
    """Coupled samples for each (alpha, lam) pair, sliced from one base draw.

    The two parameter lists are read pairwise.  Whenever one pair dominates
    another (alpha no larger, lam no smaller), the dominated slice is a
    genuine subset of the dominating one.
    """
    pairs = [(float(a), float(l)) for a, l in zip(alpha_list, lambda_list, strict=True)]
    if not pairs:
        raise DomainError("at least one (alpha, lam) pair is required")
    if max(l for _, l in pairs) > z_cap:
        raise DomainError("z_cap must dominate every requested lambda")
    floor = min(a for a, _ in pairs)
    base = sample_layered_process(window, z_cap, seed, alpha_floor=floor)
    return {(a, l): base.slice(a, l) for a, l in pairs}


def _gamma_edges(x: np.ndarray, y: np.ndarray, wrap: float | None, strict: bool) -> np.ndarray:
    def window_fn(top_a: float, top_b: float) -> float:
        return math.exp((top_a + top_b) / 2.0)

    if wrap is None:
        def predicate(I, J):
            d = np.abs(x[I] - x[J])
            t = np.exp((y[I] + y[J]) / 2.0)
            return d < t if strict else d <= t
    else:
        def predicate(I, J):
            d = np.abs(x[I] - x[J])
            d = np.minimum(d, wrap - d)
            t = np.exp((y[I] + y[J]) / 2.0)
            return d < t if strict else d <= t

    return neighbors.collect_edges(x, y, window_fn, predicate, wrap=wrap)


def gamma_graph(sample: ContinuumSample) -> Graph:
    """The strict-inequality graph on the sample, equal to the quadratic scan."""
    edges = _gamma_edges(sample.x, sample.y, wrap=None, strict=True)
    return Graph(vertex_count=len(sample), edges=edges)


def gamma_graph_torus(sample: ContinuumSample, circumference: float) -> Graph:
    """The wrap-around variant with |x - x'| measured modulo the circumference.

    Points must lie in the fundamental domain [-c/2, c/2]; the adjacency
    inequality is non-strict.
    """
    if circumference <= 0:
        raise DomainError("circumference must be positive")
    if len(sample) and np.max(np.abs(sample.x)) > circumference / 2.0:
        raise DomainError("points must lie within the fundamental domain")
    edges = _gamma_edges(sample.x, sample.y, wrap=circumference, strict=False)
    return Graph(vertex_count=len(sample), edges=edges)


class BoxIndex(NamedTuple):
    """Dyadic box coordinates: row i >= 0 and column j."""

    i: int
    j: int


def box_index(p) -> BoxIndex:
    """The unique dyadic box holding the point.

    Row i satisfies i ln2 < y <= (i+1) ln2 (y = 0 belongs to row 0 by
    convention); column j satisfies j 2^(i-1) < x <= (j+1) 2^(i-1).
    """
    x, y = (p.x, p.y) if isinstance(p, HalfPlanePoint) else (float(p[0]), float(p[1]))
    if y < 0:
        raise DomainError("box_index needs y >= 0")
    i = 0 if y == 0.0 else int(math.ceil(y / LN2)) - 1
    width = 2.0 ** (i - 1)
    j = int(math.ceil(x / width)) - 1
    return BoxIndex(i=i, j=j)


def box_bounds(idx: BoxIndex) -> tuple[float, float, float, float]:
    """(x_lo, x_hi, y_lo, y_hi) of a dyadic box, open at the lower edges."""
    width = 2.0 ** (idx.i - 1)
    return (idx.j * width, (idx.j + 1) * width, idx.i * LN2, (idx.i + 1) * LN2)


def expected_box_count(params: ContinuumParams, i: int) -> float:
    """Expected number of process points in any box of row i."""
    if i < 0:
        raise DomainError("box row must be nonnegative")
    a, lam = params.alpha, params.lam
    return (lam / a) * 2.0 ** (i - 1) * (2.0 ** (-a * i) - 2.0 ** (-a * (i + 1)))


def _component_mask_with_planted(x: np.ndarray, y: np.ndarray,
                                 planted: tuple[float, float]) -> np.ndarray:
    """Mask of sample points in the graph component of an added point.

    The planted point participates in adjacency like any other vertex of the
    strict-inequality graph.
    """
    xs = np.append(x, planted[0])
    ys = np.append(y, planted[1])
    edges = _gamma_edges(xs, ys, wrap=None, strict=True)
    labels = component_labels(Graph(vertex_count=len(xs), edges=edges))
    return labels[:-1] == labels[-1]


def event_T(y: float, h: float, w: float, sample: ContinuumSample) -> bool:
    """Does a path inside [-w e^h, w e^h] x [0, 2h] lift (0, y) to height >= h?"""
    if not (0.0 <= y <= 2.0 * h):
        raise DomainError("event_T needs 0 <= y <= 2h")
    if w <= 0 or h <= 0:
        raise DomainError("event_T needs positive w and h")
    if not sample.window.contains_box(w * math.exp(h), 2.0 * h):
        raise DomainError("sample window does not contain the event box")
    box = (np.abs(sample.x) <= w * math.exp(h)) & (sample.y <= 2.0 * h)
    xs, ys = sample.x[box], sample.y[box]
    if y >= h:
        return True
    mask = _component_mask_with_planted(xs, ys, (0.0, y))
    return bool(np.any(ys[mask] >= h))


def event_U(y: float, n: float, h: float, sample: ContinuumSample) -> bool:
    """Does the component of (0, y) within [-e^h, e^h] x [0, h] stay inside
    [-n, n] x [0, n] with at most n vertices?

    The sample is intersected with the event box; a window narrower than the
    box simply truncates it (the usual finite-window bias, bounded by the
    window-doubling check in the estimators).
    """
    if not (h >= n >= y >= 0.0):
        raise DomainError("event_U needs h >= n >= y >= 0")
    box = (np.abs(sample.x) <= math.exp(h)) & (sample.y <= h)
    xs, ys = sample.x[box], sample.y[box]
    mask = _component_mask_with_planted(xs, ys, (0.0, y))
    count = 1 + int(np.count_nonzero(mask))  # the planted point counts
    if count > n:
        return False
    if y > n:
        return False
    if np.any(np.abs(xs[mask]) > n) or np.any(ys[mask] > n):
        return False
    return True


def event_C(w: float, h: float, sample: ContinuumSample) -> bool:
    """Is there a path between the two flank slabs using points of height <= h?

    The slabs are [-w e^h, -(w-1) e^h] x [0, h] and its mirror image.
    """
    if w <= 1 or h <= 0:
        raise DomainError("event_C needs w > 1 and h > 0")
    if not sample.window.contains_box(w * math.exp(h), h):
        raise DomainError("sample window does not contain the event box")
    low = sample.y <= h
    xs, ys = sample.x[low], sample.y[low]
    inner, outer = (w - 1.0) * math.exp(h), w * math.exp(h)
    left = (xs >= -outer) & (xs <= -inner)
    right = (xs >= inner) & (xs <= outer)
    if not (np.any(left) and np.any(right)):
        return False
    edges = _gamma_edges(xs, ys, wrap=None, strict=True)
    labels = component_labels(Graph(vertex_count=len(xs), edges=edges))
    return bool(len(np.intersect1d(labels[left], labels[right])) > 0)


def explore_rightmost(y0: float, sample: ContinuumSample) -> list[tuple[float, float]]:
    """The outward exploration sequence started at (0, y0).

    Step i inspects the sample points in the right half-ball of (x_i, y_i)
    and the left half-ball of (-x_i, y_i); if any exist, the next pair is
    (max |x|, max y) over them, two maxima that may come from different
    points.  Stops when the union is empty.  Sample points with x exactly 0
    are nudged by one ulp, mirroring the almost-sure absence of ties.
    """
    if y0 < 0:
        raise DomainError("y0 must be nonnegative")
    x = sample.x.copy()
    zero = x == 0.0
    if np.any(zero):
        x[zero] = np.nextafter(0.0, 1.0)
    y = sample.y
    seq = [(0.0, float(y0))]
    xi, yi = 0.0, float(y0)
    while True:
        t = np.exp((yi + y) / 2.0)
        right = (x > xi) & (x - xi < t)
        left = (x < -xi) & (-xi - x < t)
        hit = right | left
        if not np.any(hit):
            break
        xi = float(np.max(np.abs(x[hit])))
        yi = float(np.max(y[hit]))
        seq.append((xi, yi))
    return seq


@dataclass(frozen=True)
class EventEstimate:
    """Monte Carlo rate of a named window event with a 95% Wilson interval."""

    event: str
    params: ContinuumParams
    p_hat: float
    ci: tuple[float, float]
    replicas: int

    def to_json_dict(self) -> dict:
        return {
            "event": self.event,
            "params": {"alpha": self.params.alpha, "lambda": self.params.lam},
            "p_hat": self.p_hat,
            "ci": list(self.ci),
            "replicas": self.replicas,
        }


def estimate_event(event: str, params: ContinuumParams, window: Window,
                   replicas: int = 500, seed=0, **event_args) -> EventEstimate:
    """Estimate P(event) over independent window samples.

    event is one of "T" (upward crossing), "U" (small component) or
    "C" (left-right slab crossing); event_args carry that event's geometry
    parameters (y, h, w, n as applicable).
    """
    from .stats import wilson_interval

    evaluators = {
        "T": lambda s: event_T(event_args["y"], event_args["h"], event_args["w"], s),
        "U": lambda s: event_U(event_args["y"], event_args["n"], event_args["h"], s),
        "C": lambda s: event_C(event_args["w"], event_args["h"], s),
    }
    if event not in evaluators:
        raise DomainError(f"unknown event {event!r}; expected one of T, U, C")
    if replicas < 30:
        raise DomainError("fewer than 30 replicas makes the CI meaningless")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    hits = 0
    for child in ss.spawn(replicas):
        sample = sample_continuum(params, window, np.random.default_rng(child))
        if evaluators[event](sample):
            hits += 1
    return EventEstimate(
        event=event, params=params, p_hat=hits / replicas,
        ci=wilson_interval(hits, replicas), replicas=replicas,
    )


@dataclass(frozen=True)
class MeckeReport:
    """Empirical check of the first two factorial-moment identities."""

    region: tuple[float, float, float, float]
    replicas: int
    mass: float
    mean_count: float
    count_z: float
    mean_pairs: float
    pairs_z: float
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "region": list(self.region),
            "replicas": self.replicas,
            "mass": self.mass,
            "mean_count": self.mean_count,
            "count_z": self.count_z,
            "mean_pairs": self.mean_pairs,
            "pairs_z": self.pairs_z,
            "passed": self.passed,
        }


def region_mass(params: ContinuumParams, region) -> float:
    """Integral of the intensity over an axis-aligned rectangle."""
    x0, x1, y0, y1 = region
    if x1 < x0 or y1 < y0 or y0 < 0:
        raise DomainError("malformed region rectangle")
    a = params.alpha
    return (x1 - x0) * params.lam * (math.exp(-a * y0) - math.exp(-a * y1)) / a


def mecke_check(params: ContinuumParams, window: Window, region,
                replicas: int, seed, z_max: float = 4.0) -> MeckeReport:
    """Compare point and ordered-pair counts in a rectangle with their
    Poisson moments: E N = mass, E N(N-1) = mass^2, each within z_max sigma.
    """
    x0, x1, y0, y1 = region
    if x0 < -window.half_width or x1 > window.half_width or y1 > window.height:
        raise DomainError("region must lie inside the window")
    mu = region_mass(params, region)
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    counts = np.empty(replicas, dtype=np.int64)
    for k, child in enumerate(ss.spawn(replicas)):
        s = sample_continuum(params, window, np.random.default_rng(child))
        inside = (s.x >= x0) & (s.x <= x1) & (s.y >= y0) & (s.y <= y1)
        counts[k] = int(np.count_nonzero(inside))
    pairs = counts * (counts - 1)
    # Var N = mu; Var N(N-1) = 4 mu^3 + 2 mu^2 for a Poisson count
    count_sigma = math.sqrt(mu / replicas)
    pair_sigma = math.sqrt((4.0 * mu ** 3 + 2.0 * mu ** 2) / replicas)
    mean_count = float(np.mean(counts))
    mean_pairs = float(np.mean(pairs))
    count_z = (mean_count - mu) / count_sigma if count_sigma > 0 else 0.0
    pairs_z = (mean_pairs - mu ** 2) / pair_sigma if pair_sigma > 0 else 0.0
    return MeckeReport(
        region=(x0, x1, y0, y1),
        replicas=replicas,
        mass=mu,
        mean_count=mean_count,
        count_z=float(count_z),
        mean_pairs=mean_pairs,
        pairs_z=float(pairs_z),
        passed=bool(abs(count_z) <= z_max and abs(pairs_z) <= z_max),
    )
