"""Hyperbolic disk primitives: radial sampling law, distances and adjacency angles.

Everything here is a pure function of its arguments.  The scalar entry points
accept numpy arrays as well and broadcast elementwise; the heavy callers
(graph builders, Monte Carlo loops) always pass arrays.

Numerical policy: arguments of arccos / arccosh are clamped onto their closed
domains before evaluation.  Clamps larger than ``CLAMP_TOL`` are counted in
``clamp_diagnostics`` instead of raising, since they indicate a caller probing
far outside the regime the formulas were derived for.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

LN2 = math.log(2.0)

CLAMP_TOL = 1e-9

# counters of clamp events exceeding CLAMP_TOL, keyed by operation
clamp_diagnostics = {"arccos": 0, "arccosh": 0}


def reset_clamp_diagnostics() -> None:
    for k in clamp_diagnostics:
        clamp_diagnostics[k] = 0


def radius_R(n: int, nu: float) -> float:
    """Disk radius 2*ln(n/nu) of the n-vertex model with density parameter nu.

    Raises DomainError when n <= nu (the radius would be nonpositive).
    """
    if n <= nu:
        raise DomainError(f"need n > nu for a positive disk radius, got n={n}, nu={nu}")
    return 2.0 * math.log(n / nu)


def normalize_angle(theta):
    """Map an angle to the interval (-pi, pi]."""
    t = np.remainder(np.asarray(theta, dtype=float) + math.pi, 2.0 * math.pi)
    out = np.where(t == 0.0, math.pi, t - math.pi)
    if np.ndim(theta) == 0:
        return float(out)
    return out


def angle_diff(t1, t2):
    """Absolute angular difference modulo 2*pi, in [0, pi]."""
    d = np.abs(np.asarray(t1, dtype=float) - np.asarray(t2, dtype=float))
    d = np.remainder(d, 2.0 * math.pi)
    return np.minimum(d, 2.0 * math.pi - d)


@dataclass(frozen=True)
class KpkvbParams:
    """Parameters of the n-vertex disk model; the radius R is derived."""

    n: int
    alpha: float
    nu: float

    def __post_init__(self):
        if self.n <= 0 or int(self.n) != self.n:
            raise DomainError(f"vertex count must be a positive integer, got {self.n}")
        if self.alpha <= 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.nu <= 0:
            raise DomainError(f"nu must be positive, got {self.nu}")
        if self.n <= self.nu:
            raise DomainError(f"need n > nu, got n={self.n}, nu={self.nu}")

    @property
    def R(self) -> float:
        return radius_R(self.n, self.nu)


@dataclass(frozen=True)
class PolarPoint:
    """A vertex of the disk model: radius r >= 0 and angle in (-pi, pi]."""

    r: float
    theta: float

    def __post_init__(self):
        if self.r < 0:
            raise DomainError(f"radius must be nonnegative, got {self.r}")
        object.__setattr__(self, "theta", float(normalize_angle(self.theta)))


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point (x, y) of the upper half-plane, y >= 0."""

    x: float
    y: float

    def __post_init__(self):
        if self.y < 0:
            raise DomainError(f"height must be nonnegative, got {self.y}")


def _acosh1p(s):
    """arccosh(1 + s) for s >= 0, accurate for small s."""
    s = np.asarray(s, dtype=float)
    return np.log1p(s + np.sqrt(s * (s + 2.0)))


def sample_radius(alpha: float, R: float, u):
    """Inverse radial CDF: radius at quantile u of the disk law.

    r = arccosh(1 + u*(cosh(alpha*R) - 1)) / alpha, strictly increasing in u,
    mapping [0, 1] onto [0, R].  Scalar or array u.
    """
    if alpha <= 0 or R <= 0:
        raise DomainError(f"alpha and R must be positive, got alpha={alpha}, R={R}")
    uarr = np.asarray(u, dtype=float)
    if np.any(uarr < 0) or np.any(uarr > 1):
        raise DomainError("quantile u must lie in [0, 1]")
    aR = alpha * R
    if aR < 700.0:
        r = _acosh1p(uarr * (math.cosh(aR) - 1.0)) / alpha
    else:
        # log-domain evaluation: cosh(aR)-1 would overflow a double
        log_t = np.log(np.maximum(uarr, 1e-320)) + aR - LN2
        small = log_t < 300.0
        r = np.where(small,
                     _acosh1p(np.exp(np.minimum(log_t, 300.0))),
                     log_t + LN2) / alpha
        r = np.where(uarr == 0.0, 0.0, r)
    r = np.clip(r, 0.0, R)
    if np.ndim(u) == 0:
        return float(r)
    return r


def radial_cdf(alpha: float, R: float, r):
    """The radial CDF (cosh(alpha*r) - 1)/(cosh(alpha*R) - 1) on [0, R]."""
    if alpha <= 0 or R <= 0:
        raise DomainError(f"alpha and R must be positive, got alpha={alpha}, R={R}")
    rr = np.clip(np.asarray(r, dtype=float), 0.0, R)
    out = (np.cosh(alpha * rr) - 1.0) / (math.cosh(alpha * R) - 1.0)
    if np.ndim(r) == 0:
        return float(out)
    return out


def hyperbolic_distance_arrays(r1, theta1, r2, theta2):
    """Elementwise hyperbolic distance via the cosine rule.

    Evaluated in the cancellation-free form
    cosh(d) - 1 = (cosh(r1-r2) - 1) + (1 - cos dtheta) sinh(r1) sinh(r2),
    so coincident points give exactly 0.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    dtheta = angle_diff(theta1, theta2)
    # the sinh product is grouped so the expression is exactly symmetric
    s = (np.cosh(r1 - r2) - 1.0) + 2.0 * np.sin(dtheta / 2.0) ** 2 * (np.sinh(r1) * np.sinh(r2))
    bad = s < -CLAMP_TOL
    if np.any(bad):
        clamp_diagnostics["arccosh"] += int(np.count_nonzero(bad))
    return _acosh1p(np.maximum(s, 0.0))


def hyperbolic_distance(a: PolarPoint, b: PolarPoint) -> float:
    """Hyperbolic distance between two polar points."""
    return float(hyperbolic_distance_arrays(a.r, a.theta, b.r, b.theta))


def threshold_angle(r1, r2, R: float):
    """Largest relative angle at which radii r1, r2 are within distance R.

    Returns pi whenever r1 + r2 <= R (the pair is adjacent at every angle) and
    also when either radius is 0.  The arccos argument is evaluated in a
    factored form with only nonpositive exponents, so it never overflows.
    Scalar or array radii.
    """
    scalar = np.ndim(r1) == 0 and np.ndim(r2) == 0
    r1 = np.atleast_1d(np.asarray(r1, dtype=float))
    r2 = np.atleast_1d(np.asarray(r2, dtype=float))
    r1, r2 = np.broadcast_arrays(r1, r2)
    if np.any(r1 < 0) or np.any(r2 < 0) or np.any(r1 > R) or np.any(r2 > R):
        raise DomainError("radii must lie in [0, R]")
    out = np.full(r1.shape, math.pi)
    s = r1 + r2
    active = (s > R) & (r1 > 0) & (r2 > 0)
    if np.any(active):
        a, b, t = r1[active], r2[active], s[active]
        # With ratio := (cosh a cosh b - cosh R) / (sinh a sinh b), the
        # complement x := 1 - ratio reduces (after dividing through by
        # e^{a+b}) to the cancellation-free expression below; the angle is
        # then arccos(1 - x) = 2 arcsin(sqrt(x/2)), accurate for tiny x.
        den = 1.0 - np.exp(-2.0 * a) - np.exp(-2.0 * b) + np.exp(-2.0 * t)
        x = 2.0 * (np.exp(R - t) + np.exp(-R - t)
                   - np.exp(-2.0 * a) - np.exp(-2.0 * b)) / den
        over = (x < -CLAMP_TOL) | (x > 2.0 + CLAMP_TOL)
        if np.any(over):
            clamp_diagnostics["arccos"] += int(np.count_nonzero(over))
        out[active] = 2.0 * np.arcsin(np.sqrt(np.clip(x, 0.0, 2.0) / 2.0))
    if scalar:
        return float(out[0])
    return out


def delta_scaled(r1, r2, R: float):
    """Half the threshold angle rescaled by e^{R/2}.

    With y = R - r1, y' = R - r2 this tends to e^{(y+y')/2} as R grows.
    Defined only for r1 + r2 >= R; other pairs raise DomainError.
    """
    r1a = np.asarray(r1, dtype=float)
    r2a = np.asarray(r2, dtype=float)
    if np.any(r1a + r2a < R):
        raise DomainError("delta_scaled requires r1 + r2 >= R")
    if np.any(r1a <= 0) or np.any(r2a <= 0):
        raise DomainError("delta_scaled requires positive radii")
    out = 0.5 * math.exp(R / 2.0) * threshold_angle(r1a, r2a, R)
    if np.ndim(r1) == 0 and np.ndim(r2) == 0:
        return float(out)
    return out


def arccos_bounds_hold(x):
    """sqrt(2x) <= arccos(1-x) <= sqrt(2x) + 1000 x^(3/2) on [0, 1].

    Evaluated through arccos(1-x) = 2 arcsin(v) with v = sqrt(x/2) and the
    bound written as 2v, so the comparison is decided at the accuracy of the
    quantities themselves rather than of 1 - x.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(xa > 1):
        raise DomainError("arccos bound is stated on [0, 1]")
    v = np.sqrt(xa / 2.0)
    s = np.arcsin(v)
    ok = (s >= v) & (s - v <= 500.0 * xa * np.sqrt(xa))
    return bool(np.all(ok)) if np.ndim(x) == 0 else ok


def sqrt_bounds_hold(x):
    """1 + x/2 - 100 x^2 <= sqrt(1+x) <= 1 + x/2 on [-1, 1].

    Ties within one part in 1e15 are accepted: for |x| below roughly 1e-7
    the true margins sit under the double-precision resolution of values
    near 1.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < -1) or np.any(xa > 1):
        raise DomainError("sqrt bound is stated on [-1, 1]")
    tol = 1e-15
    val = np.sqrt(1.0 + xa)
    hi = 1.0 + xa / 2.0
    ok = (val >= hi - 100.0 * xa ** 2 - tol) & (val <= hi + tol)
    return bool(np.all(ok)) if np.ndim(x) == 0 else ok


def _u_minus_sin(u):
    """u - sin(u) for u >= 0, accurate to relative precision.

    Below 0.05 the alternating series keeps full relative accuracy where the
    direct subtraction would inherit the absolute rounding of sin(u).
    """
    u = np.asarray(u, dtype=float)
    u2 = u * u
    series = (u * u2 / 6.0) * (1.0 - (u2 / 20.0)
                               * (1.0 - (u2 / 42.0) * (1.0 - u2 / 72.0)))
    return np.where(u < 0.05, series, u - np.sin(u))


def cos_bounds_hold(x):
    """1 - x^2/2 <= cos(x) <= 1 - x^2/2 + x^4/24 on [0, 1].

    The difference cos(x) - (1 - x^2/2) is evaluated in the factored form
    2 (u - sin u)(u + sin u) with u = x/2, which keeps relative precision
    where the direct subtraction would underflow.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(xa > 1):
        raise DomainError("cos bound is stated on [0, 1]")
    u = xa / 2.0
    diff = 2.0 * _u_minus_sin(u) * (u + np.sin(u))
    # below x ~ 1e-7 the true upper margin x^6/720 sits under double
    # resolution of x^4/24; ties within a relative 1e-14 are accepted
    ok = (diff >= 0.0) & (diff <= (xa ** 4 / 24.0) * (1.0 + 1e-14))
    return bool(np.all(ok)) if np.ndim(x) == 0 else ok


def appendix_bounds_check(x):
    """Evaluate all three elementary inequality pairs at x in [0, 1].

    Returns (arccos_ok, sqrt_ok, cos_ok).  The sqrt pair is additionally
    defined on [-1, 0); use sqrt_bounds_hold directly for that range.
    """
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(xa > 1):
        raise DomainError("appendix_bounds_check requires x in [0, 1]")
    return arccos_bounds_hold(x), sqrt_bounds_hold(x), cos_bounds_hold(x)
