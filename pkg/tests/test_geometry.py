"""Geometry primitives against frozen high-precision values and invariants.

Frozen constants were computed with mpmath at 40 significant digits.
"""

import math

import numpy as np
import pytest
from scipy.stats import kstest

from hypergiant import (
    DomainError,
    PolarPoint,
    appendix_bounds_check,
    delta_scaled,
    hyperbolic_distance,
    radius_R,
    sample_radius,
    threshold_angle,
)
from hypergiant.geometry import (
    arccos_bounds_hold,
    cos_bounds_hold,
    hyperbolic_distance_arrays,
    radial_cdf,
    sqrt_bounds_hold,
)

# mpmath, 40 digits
TWO_LN_250 = 11.04292183572449286643902024227347897
ACOSH_HALFWAY = 9.306943608995370877954868970135155471  # arccosh(1+0.5(cosh10-1))
DIST_5_5_01 = 4.043011811562158289104902354199141532  # arccosh(cosh^2 5 - cos(.1) sinh^2 5)
THRESH_RR_10 = 0.01347538417694081668368317798368338902  # arccos(cosh10/(cosh10+1))
DELTA_RR_10 = 0.9999621679103303493652791655586801685


class TestRadius:
    def test_example(self):
        assert radius_R(500, 2) == pytest.approx(TWO_LN_250, abs=1e-12)

    def test_unit_log(self):
        for nu in (0.5, 1.0, 3.0):
            assert radius_R(math.e * nu, nu) == pytest.approx(2.0, abs=1e-12)

    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            radius_R(2, 2)
        with pytest.raises(DomainError):
            radius_R(1, 2)


class TestSampleRadius:
    def test_endpoints(self):
        assert sample_radius(1.0, 10.0, 0.0) == 0.0
        assert sample_radius(1.0, 10.0, 1.0) == pytest.approx(10.0, abs=1e-12)

    def test_halfway(self):
        assert sample_radius(1.0, 10.0, 0.5) == pytest.approx(ACOSH_HALFWAY, abs=1e-9)

    def test_bad_quantile(self):
        with pytest.raises(DomainError):
            sample_radius(1.0, 10.0, -0.1)
        with pytest.raises(DomainError):
            sample_radius(1.0, 10.0, 1.1)

    def test_strictly_increasing(self):
        u = np.sort(np.random.default_rng(0).random(10_000))
        r = sample_radius(0.8, 14.0, u)
        assert np.all(np.diff(r) > 0)

    def test_large_argument_stable(self):
        # alpha*R = 800 switches to the log-domain branch;
        # mpmath: arccosh(1 + 0.37 (cosh 800 - 1)) = 799.0057477266561
        got = sample_radius(80.0, 10.0, 0.37)
        assert got == pytest.approx(799.0057477266561 / 80.0, abs=1e-9)

    def test_probability_integral_transform(self):
        rng = np.random.default_rng(42)
        u = rng.random(1_000_000)
        r = sample_radius(0.8, 12.0, u)
        back = radial_cdf(0.8, 12.0, r)
        stat = kstest(back, "uniform").statistic
        assert stat < 0.002


class TestDistance:
    def test_identity(self):
        p = PolarPoint(3.7, 1.2)
        assert hyperbolic_distance(p, p) == 0.0

    def test_antipodal_geodesic(self):
        a = PolarPoint(3.0, 0.0)
        b = PolarPoint(5.0, math.pi)
        assert hyperbolic_distance(a, b) == pytest.approx(8.0, abs=1e-12)

    def test_frozen_value(self):
        a = PolarPoint(5.0, 0.0)
        b = PolarPoint(5.0, 0.1)
        assert hyperbolic_distance(a, b) == pytest.approx(DIST_5_5_01, abs=1e-12)

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(3)
        n = 100_000
        r = sample_radius(0.9, 14.0, rng.random((n, 3)))
        th = rng.uniform(-math.pi, math.pi, (n, 3))
        d01 = hyperbolic_distance_arrays(r[:, 0], th[:, 0], r[:, 1], th[:, 1])
        d10 = hyperbolic_distance_arrays(r[:, 1], th[:, 1], r[:, 0], th[:, 0])
        d12 = hyperbolic_distance_arrays(r[:, 1], th[:, 1], r[:, 2], th[:, 2])
        d02 = hyperbolic_distance_arrays(r[:, 0], th[:, 0], r[:, 2], th[:, 2])
        assert np.array_equal(d01, d10)
        assert np.all(d02 <= d01 + d12 + 1e-9)


class TestThresholdAngle:
    def test_triangle_inequality_regime(self):
        assert threshold_angle(2.0, 3.0, 10.0) == math.pi

    def test_boundary_pair(self):
        assert threshold_angle(10.0, 10.0, 10.0) == pytest.approx(THRESH_RR_10, rel=1e-12)

    def test_zero_radius(self):
        assert threshold_angle(0.0, 5.0, 10.0) == math.pi

    def test_boundary_asymptotics(self):
        # threshold(R, R, R) / (2 e^{-R/2}) -> 1
        for R, tol in [(10.0, 1e-4), (20.0, 1e-8), (30.0, 1e-10)]:
            ratio = threshold_angle(R, R, R) / (2.0 * math.exp(-R / 2.0))
            assert abs(ratio - 1.0) < tol

    def test_matches_distance_criterion(self):
        R = 12.0
        rs = np.linspace(0.3, R, 25)
        for r1 in rs:
            for r2 in rs:
                ang = threshold_angle(float(r1), float(r2), R)
                for frac in (0.5, 0.99, 1.01):
                    t = min(ang * frac, math.pi)
                    d = float(hyperbolic_distance_arrays(r1, 0.0, r2, t))
                    if t < ang * (1 - 1e-12):
                        assert d <= R + 1e-9
                    elif t > ang * (1 + 1e-12) and ang < math.pi:
                        assert d >= R - 1e-9

    def test_pi_exactly_iff_antipodal_within_radius(self):
        # the angle saturates at pi exactly when the antipodal pair is within R
        R = 11.0
        grid = np.linspace(0.05, R, 40)
        for r1 in grid:
            for r2 in grid:
                saturated = threshold_angle(float(r1), float(r2), R) == math.pi
                d = hyperbolic_distance(PolarPoint(float(r1), 0.0),
                                        PolarPoint(float(r2), math.pi))
                assert saturated == (d <= R)

    def test_out_of_range_radius(self):
        with pytest.raises(DomainError):
            threshold_angle(11.0, 5.0, 10.0)


class TestDeltaScaled:
    def test_frozen_value(self):
        assert delta_scaled(10.0, 10.0, 10.0) == pytest.approx(DELTA_RR_10, rel=1e-10)

    def test_domain(self):
        with pytest.raises(DomainError):
            delta_scaled(4.0, 5.0, 10.0)

    def test_limit_at_origin_depth(self):
        # y = y' = 0: ratio to e^0 approaches 1
        assert abs(delta_scaled(30.0, 30.0, 30.0) - 1.0) < 1e-3

    def test_proof_envelope_beats_statement_envelope(self):
        """Regression pinning which envelope the scaled threshold satisfies.

        Two candidate descriptions exist for the same quantity; numerically,
        the one that holds (with the frozen constant K = 2, fitted at 0.84 on
        this grid) is centered at e^{(y+y')/2} with lower error term
        K e^{3 max/2 - min/2 - R}.  The variant centered at e^{(y+y')/2}/2 is
        violated at every grid point, and the variant with the min/max roles
        swapped in the lower error term (K e^{-max/2 + 3 min/2 - R}) needs a
        constant above 100 on the same grid.  Downstream code relies only on
        the version verified here.
        """
        K = 2.0
        violations_half = 0
        checked = 0
        swapped_needs_large_k = 0.0
        for R in (20.0, 30.0):
            for y1 in np.linspace(0.0, 3.0, 13):
                for y2 in np.linspace(0.0, 3.0, 13):
                    r1, r2 = R - y1, R - y2
                    d = delta_scaled(r1, r2, R)
                    center = math.exp((y1 + y2) / 2.0)
                    lo_term = K * math.exp(1.5 * max(y1, y2) - min(y1, y2) / 2.0 - R)
                    hi_term = K * math.exp(1.5 * (y1 + y2) - R)
                    checked += 1
                    assert center - lo_term <= d <= center + hi_term
                    if not (center / 2.0 - lo_term <= d <= center / 2.0 + hi_term):
                        violations_half += 1
                    if d < center:
                        swapped = math.exp(-max(y1, y2) / 2.0 + 1.5 * min(y1, y2) - R)
                        swapped_needs_large_k = max(swapped_needs_large_k,
                                                    (center - d) / swapped)
        assert violations_half == checked
        assert swapped_needs_large_k > 100.0


class TestAppendixBounds:
    def test_zero_equalities(self):
        assert arccos_bounds_hold(0.0) and sqrt_bounds_hold(0.0) and cos_bounds_hold(0.0)
        assert math.acos(1.0) == math.sqrt(0.0)
        assert math.sqrt(1.0) == 1.0
        assert math.cos(0.0) == 1.0

    def test_at_one(self):
        assert appendix_bounds_check(1.0) == (True, True, True)
        assert math.sqrt(2.0) <= math.acos(0.0) <= math.sqrt(2.0) + 1000.0

    def test_sweeps(self):
        grid = np.arange(0, 10_001) / 10_000.0
        a_ok, s_ok, c_ok = appendix_bounds_check(grid)
        assert np.all(a_ok) and np.all(s_ok) and np.all(c_ok)
        assert np.all(sqrt_bounds_hold(np.arange(-10_000, 10_001) / 10_000.0))

    def test_domains(self):
        with pytest.raises(DomainError):
            appendix_bounds_check(-0.5)
        with pytest.raises(DomainError):
            arccos_bounds_hold(1.5)
        with pytest.raises(DomainError):
            sqrt_bounds_hold(-1.5)
        with pytest.raises(DomainError):
            cos_bounds_hold(2.0)
