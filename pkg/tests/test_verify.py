import json
import math

import numpy as np
import pytest
from scipy import stats

from levysheet import verify
from levysheet.paths import LinearPath


class TestEmpiricalCF:
    def test_constant_zero_samples(self):
        emp = verify.empirical_cf(np.zeros(500), 1.0)
        assert emp.value == 1.0 + 0j
        assert emp.se_re == 0.0

    def test_zero_probe(self):
        rng = np.random.default_rng(80)
        emp = verify.empirical_cf(rng.normal(size=1000), 0.0)
        assert emp.value == 1.0 + 0j

    def test_gaussian_samples(self):
        rng = np.random.default_rng(81)
        n = 100_000
        emp = verify.empirical_cf(rng.normal(size=n), 1.0)
        assert abs(emp.re - math.exp(-0.5)) <= 4.0 / math.sqrt(n)
        assert abs(emp.im) <= 4.0 / math.sqrt(n)

    def test_bounds(self):
        rng = np.random.default_rng(82)
        emp = verify.empirical_cf(rng.normal(size=1000), 2.0)
        assert abs(emp.value) <= 1.0 + 4.0 / math.sqrt(emp.n)
        assert max(emp.se_re, emp.se_im) <= 1.0 / math.sqrt(emp.n)

    def test_needs_enough_samples(self):
        with pytest.raises(ValueError):
            verify.empirical_cf(np.zeros(50), 1.0)


class TestCFMatch:
    def test_exact_match_passes(self):
        emp = verify.empirical_cf(np.zeros(10_000), 1.0)
        assert verify.cf_match(emp, 1.0 + 0j).passed

    def test_wide_gap_fails(self):
        emp = verify.empirical_cf(np.zeros(10_000), 1.0)
        off = complex(1.0 - 10.0 / math.sqrt(10_000), 0.0)
        assert not verify.cf_match(emp, off).passed

    def test_rejects_narrow_band(self):
        emp = verify.empirical_cf(np.zeros(10_000), 1.0)
        with pytest.raises(ValueError):
            verify.cf_match(emp, 1.0 + 0j, k=2.0)

    def test_bridge_marginal(self):
        from levysheet import gauss

        rng = np.random.default_rng(1)
        law = gauss.GaussPathLaw(LinearPath(0, 1, 1, 1, 0, 1))
        vals = gauss.simulate_paths(law, [0.5], rng, n_paths=100_000)[:, 0, 0]
        emp = verify.empirical_cf(vals, 1.0)
        assert verify.cf_match(emp, complex(math.exp(-0.125))).passed


class TestRegression:
    def test_deterministic_line(self):
        x = np.linspace(0.0, 1.0, 500)
        path = LinearPath(0, 1, 1, 1, 0, 1)
        pairs = np.column_stack([x, (0.5 / 0.8) * x])
        report = verify.conditional_mean_regression(pairs, path, 0.2, 0.5, 0.0)
        assert report.passed
        assert report.extra["slope"] == pytest.approx(0.625, abs=1e-12)

    def test_detects_wrong_slope(self):
        rng = np.random.default_rng(83)
        x = rng.normal(size=5000)
        pairs = np.column_stack([x, 0.9 * x + 0.01 * rng.normal(size=5000)])
        path = LinearPath(0, 1, 1, 1, 0, 1)
        report = verify.conditional_mean_regression(pairs, path, 0.2, 0.5, 0.0)
        assert not report.passed  # target slope is 0.625

    def test_noisy_but_correct(self):
        rng = np.random.default_rng(84)
        x = rng.normal(size=20_000)
        y = 0.625 * x + rng.normal(size=20_000) * 0.43
        path = LinearPath(0, 1, 1, 1, 0, 1)
        report = verify.conditional_mean_regression(np.column_stack([x, y]),
                                                    path, 0.2, 0.5, 0.0)
        assert report.passed


class TestChi2:
    def test_uniform_square_passes(self):
        rng = np.random.default_rng(85)
        samples = rng.uniform(0.0, 1.0, size=(50_000, 2))
        report = verify.chi2_binned(samples, density=lambda x, y: np.ones_like(x),
                                    bins=10, support=((0, 1), (0, 1)))
        assert report.passed

    def test_shifted_gaussian_fails(self):
        rng = np.random.default_rng(86)
        samples = rng.normal(0.25, 1.0, size=(50_000, 2))
        density = (lambda x, y:
                   np.exp(-(x ** 2 + y ** 2) / 2.0) / (2.0 * math.pi))
        report = verify.chi2_binned(samples, density=density, bins=10,
                                    support=((-4, 4), (-4, 4)))
        assert not report.passed

    def test_counts_poisson(self):
        rng = np.random.default_rng(87)
        counts = rng.poisson(2.0, size=20_000)
        pmf = lambda k: math.exp(-2.0) * 2.0 ** k / math.factorial(k)
        assert verify.chi2_counts(counts, pmf).passed
        wrong = lambda k: math.exp(-3.0) * 3.0 ** k / math.factorial(k)
        assert not verify.chi2_counts(counts, wrong).passed


class TestKS:
    def test_uniform_passes(self):
        rng = np.random.default_rng(88)
        report = verify.ks_1d(rng.uniform(size=20_000), lambda x: np.clip(x, 0, 1))
        assert report.passed

    def test_shift_fails(self):
        rng = np.random.default_rng(89)
        report = verify.ks_1d(rng.normal(0.1, 1.0, size=20_000),
                              stats.norm.cdf)
        assert not report.passed


class TestReportJSON:
    def test_round_trip(self):
        report = verify.TestReport("demo", 0.5, 1.0, True, seed=7, n=100,
                                   extra={"pvalue": 0.2})
        parsed = json.loads(report.to_json())
        assert parsed["name"] == "demo"
        assert parsed["passed"] is True
        assert parsed["pvalue"] == 0.2
