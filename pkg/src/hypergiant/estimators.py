"""Composite Monte Carlo estimators.

estimate_theta   sandwich for the percolation probability of a planted point
c_of             giant-component constant as a quadrature over the sandwich
bracket_lambda_c bisection bracket for the critical intensity at alpha = 1
lln_experiment   largest/second component fractions across instance sizes

All estimators are deterministic per seed.  Replicas run on independent
spawned seed streams; the merge order is fixed, so results do not depend on
the worker count.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .continuum import (
    ContinuumParams,
    Window,
    event_C,
    event_T,
    event_U,
    sample_continuum,
    sample_layered_process,
)
from .errors import DomainError, EstimationError
from .geometry import KpkvbParams
from .graphs import components
from .kpkvb import build_graph, sample_vertices, sample_vertices_poissonized
from .parallel import replica_map
from .stats import wilson_half_width

__all__ = [
    "ThetaProxyConfig",
    "ThetaEstimate",
    "CEstimate",
    "LambdaBracket",
    "estimate_theta",
    "c_of",
    "bracket_lambda_c",
    "lln_experiment",
    "LLN_COLUMNS",
]

# Subcritical intensity at alpha = 1: the exploration increments have mean
# 2 ln(4 lam) + 2 euler_gamma, negative exactly when lam < exp(-euler_gamma)/4.
# (A twice-larger constant is sometimes quoted for this bound; the drift
# computation only supports the /4 version, which is what we rely on.)
LAMBDA_SUBCRITICAL = math.exp(-np.euler_gamma) / 4.0
# intensity beyond which the active-box expansion certifies percolation:
# the root of 7 q^2 - 15 q + 1 with q = exp(-lam / 4)
LAMBDA_SUPERCRITICAL = -4.0 * math.log((15.0 - math.sqrt(197.0)) / 14.0)

DEFAULT_REPLICAS = 500


@dataclass(frozen=True)
class ThetaProxyConfig:
    """Finite-window proxy parameters for the percolation sandwich.

    h and w size the upward-crossing box [-w e^h, w e^h] x [0, 2h]; n bounds
    the component box of the complementary small-component event.
    """

    h: float = 5.0
    w: float = 2.0
    n: float = 50.0

    def window(self) -> Window:
        return Window(half_width=self.w * math.exp(self.h),
                      height=max(2.0 * self.h, self.n))


@dataclass(frozen=True)
class ThetaEstimate:
    """Sandwich estimate of the percolation probability of (0, y)."""

    y: float
    params: ContinuumParams
    lower: float
    upper: float
    replicas: int
    ci_half_width: float

    def __post_init__(self):
        slack = 2.0 * self.ci_half_width + 1e-12
        if not (0.0 <= self.lower <= self.upper + slack):
            raise EstimationError(
                f"sandwich inverted beyond CI slack: lower={self.lower}, "
                f"upper={self.upper}, ci={self.ci_half_width}"
            )

    @property
    def midpoint(self) -> float:
        return min(1.0, max(0.0, (self.lower + self.upper) / 2.0))

    def to_json_dict(self) -> dict:
        return {
            "y": self.y,
            "alpha": self.params.alpha,
            "lambda": self.params.lam,
            "lower": self.lower,
            "upper": self.upper,
            "replicas": self.replicas,
            "ci_half_width": self.ci_half_width,
        }


def _theta_replica(args) -> tuple[bool, bool]:
    y, params, proxy, child = args
    sample = sample_continuum(params, proxy.window(), np.random.default_rng(child))
    hit_t = event_T(y, proxy.h, proxy.w, sample)
    h_u = max(2.0 * proxy.h, proxy.n)
    hit_u = event_U(y, proxy.n, h_u, sample)
    return hit_t, hit_u


def estimate_theta(y: float, params: ContinuumParams, h: float, w: float,
                   n: float, replicas: int, seed) -> ThetaEstimate:
    """Monte Carlo sandwich: crossing rate below, one minus small-component
    rate above.

    For alpha <= 1/2 the probability is exactly one and no simulation runs.
    The small-component event is evaluated on the sampled window, which
    truncates its nominal box; the bias is controlled by the window-doubling
    stability check in the tests.
    """
    if params.alpha <= 0.5:
        return ThetaEstimate(y=y, params=params, lower=1.0, upper=1.0,
                             replicas=0, ci_half_width=0.0)
    if replicas < 30:
        raise DomainError("fewer than 30 replicas makes the CI meaningless")
    if y < 0:
        raise DomainError("y must be nonnegative")
    proxy = ThetaProxyConfig(h=h, w=w, n=n)
    if not (proxy.n >= y):
        raise DomainError("the component box bound n must be >= y")
    if not (0.0 <= y <= 2.0 * proxy.h):
        raise DomainError("need 0 <= y <= 2h for the crossing event")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    jobs = [(y, params, proxy, child) for child in ss.spawn(replicas)]
    hits = replica_map(_theta_replica, jobs)
    k_t = sum(1 for t, _ in hits if t)
    k_u = sum(1 for _, u in hits if u)
    lower = k_t / replicas
    upper = 1.0 - k_u / replicas
    ci = max(wilson_half_width(k_t, replicas), wilson_half_width(k_u, replicas))
    return ThetaEstimate(y=y, params=params, lower=lower, upper=upper,
                         replicas=replicas, ci_half_width=ci)


@dataclass(frozen=True)
class CEstimate:
    """Quadrature estimate of the giant-component constant."""

    alpha: float
    nu: float
    value: float
    grid: list[tuple[float, float]]
    tail_cutoff: float
    error_budget: float
    stat_error: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "nu": self.nu,
            "value": self.value,
            "grid": [[y, t] for y, t in self.grid],
            "tail_cutoff": self.tail_cutoff,
            "error_budget": self.error_budget,
            "stat_error": self.stat_error,
        }


def c_of(alpha: float, nu: float, quadrature_nodes: int = 16,
         mc_config: ThetaProxyConfig | None = None, seed=0,
         replicas: int = DEFAULT_REPLICAS, error_budget: float = 0.1) -> CEstimate:
    """Giant-component constant: the percolation probability of a planted
    point integrated against the limiting boundary-depth density.

    Exact endpoints: 0 for alpha > 1, 1 for alpha <= 1/2.  Otherwise the
    sandwich midpoint is integrated by the composite trapezoid rule over
    [0, K], with K chosen so the neglected tail mass exp(-alpha K) is at most
    half the error budget.
    """
    if alpha <= 0 or nu <= 0:
        raise DomainError("alpha and nu must be positive")
    if alpha > 1.0:
        return CEstimate(alpha=alpha, nu=nu, value=0.0, grid=[],
                         tail_cutoff=0.0, error_budget=0.0)
    if alpha <= 0.5:
        return CEstimate(alpha=alpha, nu=nu, value=1.0, grid=[],
                         tail_cutoff=0.0, error_budget=0.0)
    if quadrature_nodes < 2:
        raise DomainError("need at least two quadrature nodes")
    proxy = mc_config or ThetaProxyConfig()
    lam = nu * alpha / math.pi
    params = ContinuumParams(alpha=alpha, lam=lam)
    cutoff = math.log(2.0 / error_budget) / alpha
    if cutoff > proxy.n:
        raise DomainError("error budget demands a cutoff beyond the component box")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    nodes = np.linspace(0.0, cutoff, quadrature_nodes)
    node_seeds = ss.spawn(quadrature_nodes)
    grid = []
    mids = np.empty(quadrature_nodes)
    half_gaps = np.empty(quadrature_nodes)
    for k, (yk, child) in enumerate(zip(nodes, node_seeds)):
        est = estimate_theta(float(yk), params, proxy.h, proxy.w, proxy.n,
                             replicas, child)
        mids[k] = est.midpoint
        half_gaps[k] = (est.upper - est.lower) / 2.0 + est.ci_half_width
        grid.append((float(yk), float(est.midpoint)))
    weight = alpha * np.exp(-alpha * nodes)
    tail = math.exp(-alpha * cutoff)
    value = float(np.trapezoid(mids * weight, nodes)) + tail / 2.0
    stat = float(np.trapezoid(half_gaps * weight, nodes)) + tail / 2.0
    return CEstimate(alpha=alpha, nu=nu, value=min(1.0, max(0.0, value)),
                     grid=grid, tail_cutoff=cutoff, error_budget=error_budget,
                     stat_error=stat)


@dataclass(frozen=True)
class LambdaBracket:
    """Bisection bracket for the critical intensity at alpha = 1."""

    lo: float
    hi: float
    h_used: float
    w_used: float
    crossing_probs: list[tuple[float, float]] = field(default_factory=list)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise EstimationError("bracket must satisfy lo < hi")

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2.0

    @property
    def nu_c(self) -> float:
        """Critical density parameter of the disk model: pi times the midpoint."""
        return math.pi * self.midpoint

    def to_json_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "midpoint": self.midpoint,
            "nu_c": self.nu_c,
            "h": self.h_used,
            "w": self.w_used,
            "crossing_probs": [[l, p] for l, p in self.crossing_probs],
        }


def _crossing_replica(args) -> bool:
    lam, h, w, z_cap, child = args
    window = Window(half_width=w * math.exp(h), height=h)
    base = sample_layered_process(window, z_cap, np.random.default_rng(child),
                                  alpha_floor=1.0)
    return event_C(w, h, base.slice(1.0, lam))


def bracket_lambda_c(h: float, w: float, replicas: int, tol: float, seed,
                     lo: float = LAMBDA_SUBCRITICAL,
                     hi: float = LAMBDA_SUPERCRITICAL) -> LambdaBracket:
    """Bisect the slab-crossing probability against 1/2 over the intensity.

    Every intensity is evaluated on the same layered base processes (one per
    replica, regenerated deterministically from its seed), so per-replica
    crossing indicators are exactly monotone in the intensity; monotonicity is
    asserted on every replica.  The initial bracket endpoints default to the
    proven subcritical and supercritical intensities.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if replicas < 30:
        raise DomainError("fewer than 30 replicas makes the pivot meaningless")
    # the base envelope must also cover the widened fallback endpoint
    z_cap = max(hi, 11.0) * 1.0000001
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = ss.spawn(replicas)
    history: list[list[tuple[float, bool]]] = [[] for _ in range(replicas)]
    probs: dict[float, float] = {}

    def crossing_prob(lam: float) -> float:
        jobs = [(lam, h, w, z_cap, child) for child in children]
        flags = replica_map(_crossing_replica, jobs)
        for k, flag in enumerate(flags):
            history[k].append((lam, flag))
            ordered = sorted(history[k])
            for (l1, f1), (l2, f2) in zip(ordered, ordered[1:]):
                if f1 and not f2 and l1 < l2:
                    raise EstimationError(
                        f"coupled crossing indicator not monotone: replica {k}, "
                        f"{l1} -> {l2}"
                    )
        p = sum(flags) / replicas
        probs[lam] = p
        return p

    p_lo = crossing_prob(lo)
    p_hi = crossing_prob(hi)
    if p_lo >= 0.5:
        warnings.warn("crossing probability at the lower endpoint is >= 1/2; "
                      "widening the bracket")
        lo = 0.1
        p_lo = crossing_prob(lo)
    if p_hi < 0.5:
        warnings.warn("crossing probability at the upper endpoint is < 1/2; "
                      "widening the bracket")
        hi = 11.0
        p_hi = crossing_prob(hi)
    if p_lo >= 0.5 or p_hi < 0.5:
        raise EstimationError("could not establish a crossing bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if crossing_prob(mid) < 0.5:
            lo = mid
        else:
            hi = mid
    return LambdaBracket(
        lo=lo, hi=hi, h_used=h, w_used=w,
        crossing_probs=sorted(probs.items()),
    )


LLN_COLUMNS = [
    "N", "replicas",
    "mean_c1_g", "sd_c1_g", "mean_c2_g", "sd_c2_g",
    "mean_c1_gpo", "sd_c1_gpo", "mean_c2_gpo", "sd_c2_gpo",
]


def _lln_replica(args) -> tuple[float, float, float, float]:
    params, child = args
    sub = child.spawn(2)
    g = components(build_graph(sample_vertices(params, sub[0])))
    gpo = components(build_graph(sample_vertices_poissonized(params, sub[1])))
    return g.c1_frac, g.c2_frac, gpo.c1_frac, gpo.c2_frac


def lln_experiment(alpha: float, nu: float, n_list, replicas: int, seed) -> list[dict]:
    """Component-fraction table across instance sizes, fixed and Poissonized.

    Returns one row per vertex count with mean and standard deviation of the
    largest- and second-component fractions for both models.
    """
    n_values = [int(n) for n in n_list]
    if any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise DomainError("n_list must be strictly increasing")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    rows = []
    for n, n_seed in zip(n_values, ss.spawn(len(n_values))):
        params = KpkvbParams(n=n, alpha=alpha, nu=nu)
        jobs = [(params, child) for child in n_seed.spawn(replicas)]
        res = np.asarray(replica_map(_lln_replica, jobs))
        row = {"N": n, "replicas": replicas}
        for k, col in enumerate(["c1_g", "c2_g", "c1_gpo", "c2_gpo"]):
            row[f"mean_{col}"] = float(np.mean(res[:, k]))
            row[f"sd_{col}"] = float(np.std(res[:, k], ddof=1)) if replicas > 1 else 0.0
        rows.append(row)
    return rows
