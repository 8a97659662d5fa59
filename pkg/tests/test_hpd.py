"""Grid densities and highest-density credible regions."""

import math

import numpy as np
import pytest
import scipy.stats as st

from bayesdesk.errors import CoverageError
from bayesdesk.hpd import (
    DEFAULT_GRID_POINTS,
    GridDensity,
    HPDRegion,
    cauchy_normal_log_posterior,
    hpd_from_grid,
    hpd_from_sample,
    normalize,
)


def _normal_grid(mean=0.0, sd=1.0, lo=-8.0, hi=8.0, points=2001):
    xs = np.linspace(lo, hi, points)
    return GridDensity(xs, st.norm.logpdf(xs, mean, sd))


def _trapezoid_mass(xs, dens):
    return float(np.sum(0.5 * (dens[1:] + dens[:-1]) * np.diff(xs)))


class TestGridDensity:
    def test_construction_and_densities(self):
        g = _normal_grid()
        assert g.xs.size == 2001
        assert not g.normalized
        assert np.allclose(g.densities(), st.norm.pdf(g.xs))

    def test_validation(self):
        with pytest.raises(ValueError):
            GridDensity(np.array([0.0, 1.0]), np.array([0.0, 0.0]))  # too short
        with pytest.raises(ValueError):
            GridDensity(np.array([0.0, 1.0, 0.5]), np.zeros(3))  # not increasing
        with pytest.raises(ValueError):
            GridDensity(np.array([0.0, 1.0, 2.0]), np.array([0.0, np.nan, 0.0]))
        with pytest.raises(ValueError):
            GridDensity(np.array([0.0, 1.0, 2.0]), np.array([0.0, np.inf, 0.0]))

    def test_minus_inf_log_values_allowed(self):
        xs = np.linspace(0.0, 1.0, 11)
        lv = np.full(11, -math.inf)
        lv[5] = 0.0
        g = GridDensity(xs, lv)
        assert g.densities()[0] == 0.0

    def test_csv_round_trip(self, tmp_path):
        g = normalize(_normal_grid(points=101))
        path = tmp_path / "grid.csv"
        g.to_csv(path)
        rows = np.loadtxt(path, delimiter=",", skiprows=1)
        assert rows.shape == (101, 2)
        assert np.allclose(rows[:, 0], g.xs)
        assert np.allclose(rows[:, 1], g.densities())


class TestNormalize:
    def test_unit_mass_after_normalization(self):
        raw = GridDensity(np.linspace(-6, 6, 1001),
                          st.norm.logpdf(np.linspace(-6, 6, 1001)) + 3.7)
        g = normalize(raw)
        assert g.normalized
        assert _trapezoid_mass(g.xs, g.densities()) == pytest.approx(1.0, abs=1e-12)
        assert g.log_norm_const == pytest.approx(3.7, abs=1e-6)

    def test_all_minus_inf_rejected(self):
        xs = np.linspace(0, 1, 5)
        with pytest.raises(ValueError):
            normalize(GridDensity(xs, np.full(5, -math.inf)))


class TestCauchyNormalPosterior:
    def test_default_grid_span(self):
        g = cauchy_normal_log_posterior([-4.3, 3.2], 10.0)
        spread = 10.0 * math.sqrt(10.0)
        assert g.xs.size == DEFAULT_GRID_POINTS
        assert g.xs[0] == pytest.approx(-4.3 - spread)
        assert g.xs[-1] == pytest.approx(3.2 + spread)

    def test_log_posterior_formula(self):
        data = [-1.0, 2.0]
        g = cauchy_normal_log_posterior(data, 4.0, np.linspace(-3, 3, 7))
        for x, lv in zip(g.xs, g.log_vals):
            expected = -x * x / 8.0 - sum(math.log1p((d - x) ** 2) for d in data)
            assert lv == pytest.approx(expected, rel=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            cauchy_normal_log_posterior([], 1.0)
        with pytest.raises(ValueError):
            cauchy_normal_log_posterior([1.0], 0.0)


class TestHpdFromGrid:
    def test_normal_interval_matches_closed_form(self):
        g = normalize(_normal_grid(points=8001))
        region = hpd_from_grid(g, 0.05)
        assert len(region.intervals) == 1
        lo, hi = region.intervals[0]
        assert lo == pytest.approx(-1.959964, abs=2e-4)
        assert hi == pytest.approx(1.959964, abs=2e-4)
        assert region.coverage == pytest.approx(0.95, abs=1e-5)
        # threshold equals the density at the interval edge
        assert region.k_alpha == pytest.approx(st.norm.pdf(1.959964), rel=1e-3)

    def test_requires_normalized_grid(self):
        with pytest.raises(ValueError):
            hpd_from_grid(_normal_grid(), 0.05)

    def test_alpha_validation(self):
        g = normalize(_normal_grid())
        for bad in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                hpd_from_grid(g, bad)

    def test_bimodal_mixture_gives_two_intervals(self):
        xs = np.linspace(-12, 12, 6001)
        pdf = 0.5 * st.norm.pdf(xs, -5, 0.8) + 0.5 * st.norm.pdf(xs, 5, 0.8)
        g = normalize(GridDensity(xs, np.log(pdf)))
        region = hpd_from_grid(g, 0.1)
        assert len(region.intervals) == 2
        assert region.coverage == pytest.approx(0.9, abs=1e-5)
        (lo1, hi1), (lo2, hi2) = region.intervals
        assert lo1 < -5 < hi1 < lo2 < 5 < hi2
        # symmetric mixture: intervals mirror each other
        assert lo1 == pytest.approx(-hi2, abs=1e-6)

    def test_contains_and_total_length(self):
        region = HPDRegion(intervals=((0.0, 1.0), (2.0, 3.0)), k_alpha=0.1, coverage=0.9)
        assert region.contains(0.5) and region.contains(2.0)
        assert not region.contains(1.5)
        assert region.total_length() == pytest.approx(2.0)

    def test_scale_invariance(self):
        # scaling the axis by c scales intervals by c and the threshold by 1/c
        g = normalize(_normal_grid(points=4001))
        base = hpd_from_grid(g, 0.05)
        for c in (0.25, 3.0, 17.5):
            scaled = GridDensity(g.xs * c, g.log_vals - math.log(c),
                                 normalized=True, log_norm_const=g.log_norm_const)
            region = hpd_from_grid(scaled, 0.05)
            assert region.k_alpha == pytest.approx(base.k_alpha / c, rel=1e-9)
            for (lo, hi), (blo, bhi) in zip(region.intervals, base.intervals):
                assert lo == pytest.approx(blo * c, rel=1e-9, abs=1e-9)
                assert hi == pytest.approx(bhi * c, rel=1e-9, abs=1e-9)

    def test_minimality_against_brute_force(self):
        # for a unimodal density the HPD interval is the shortest one with
        # the target mass; scan all grid endpoints as the reference
        for mean, sd, alpha in ((0.0, 1.0, 0.05), (2.0, 0.5, 0.2), (-1.0, 3.0, 0.1)):
            g = normalize(_normal_grid(mean, sd, mean - 9 * sd, mean + 9 * sd, 2001))
            region = hpd_from_grid(g, alpha)
            dens = g.densities()
            dx = float(g.xs[1] - g.xs[0])
            cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * dx)])
            best = math.inf
            for i in range(g.xs.size):
                j = np.searchsorted(cum, cum[i] + (1.0 - alpha))
                if j < cum.size:
                    best = min(best, g.xs[j] - g.xs[i])
            assert region.total_length() <= best + dx  # within one grid cell


class TestHpdFromSample:
    def test_retains_top_density_fraction(self):
        rng = np.random.default_rng(41)
        draws = rng.normal(size=(1000, 1))
        log_post = lambda p: float(st.norm.logpdf(p[0]))
        kept = hpd_from_sample(draws, log_post, 0.25)
        assert kept.shape[0] == math.ceil(0.75 * 1000)
        # retained points are exactly those with the highest density
        vals = np.abs(draws[:, 0])
        cutoff = np.sort(vals)[kept.shape[0] - 1]
        assert np.all(np.abs(kept[:, 0]) <= cutoff + 1e-12)

    def test_preserves_input_order(self):
        draws = np.array([[0.0], [3.0], [0.1], [2.5], [0.2]])
        kept = hpd_from_sample(draws, lambda p: float(st.norm.logpdf(p[0])), 0.4)
        assert np.array_equal(kept, np.array([[0.0], [0.1], [0.2]]))

    def test_validation(self):
        draws = np.zeros((5, 2))
        with pytest.raises(ValueError):
            hpd_from_sample(np.empty((0, 2)), lambda p: 0.0, 0.1)
        with pytest.raises(ValueError):
            hpd_from_sample(draws, lambda p: 0.0, 1.0)
        with pytest.raises(ValueError):
            hpd_from_sample(draws, lambda p: float("nan"), 0.1)


class TestCoverageFailure:
    def test_unreachable_coverage_raises(self):
        # a two-point spike cannot support fine coverage targets: the
        # interpolated coverage jumps well past 1e-2 resolution near k=0
        xs = np.array([0.0, 0.5, 1.0])
        g = normalize(GridDensity(xs, np.array([-math.inf, 0.0, -math.inf])))
        try:
            region = hpd_from_grid(g, 0.05)
        except CoverageError:
            return
        assert abs(region.coverage - 0.95) <= 1e-2
