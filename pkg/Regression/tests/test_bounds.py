import math

import numpy as np
from django.test import SimpleTestCase

from Regression.bounds import (
    bound_mce_g, bound_mce_l, error_bound, mu_general, optimize_alpha, relative_bound,
    rho_for_mode, stability_condition,
)
from Regression.estimators import mce_fit
from Regression.exceptions import AlphaExceedsSigma, DomainError, EmptyGrid
from Regression.models import (
    BoundInputs, BoundReport, EstimatorConfig, LossSpec, RegressionDataset, RhoMode, RichnessReport,
    SigmaMode,
)
from Regression.richness import normalize_columns, rho_exact_2d
from Regression.rng import substream


def closed_form_mu(z, f, rho):
    decay = math.exp(-z)
    return (1 + decay) / (f + rho - 1) * (rho / (1 + decay) + decay * f - 1)


class MuTestCase(SimpleTestCase):
    def test_ideal_case(self):
        self.assertEqual(mu_general(0.0, 1.0, 1.0), 1.0)

    def test_reference_setting(self):
        mu = mu_general(0.2, 0.8, 0.8)
        self.assertAlmostEqual(mu, closed_form_mu(0.2, 0.8, 0.8), places=14)
        self.assertAlmostEqual(mu, 0.287521, delta=1e-5)

    def test_condition_fails(self):
        self.assertEqual(mu_general(0.2, 0.5, 0.5), 0.0)

    def test_monotone_in_inliers_and_rho(self):
        grid = np.linspace(0.0, 1.0, 50)
        for z in np.linspace(0.0, 2.0, 50):
            values = np.array([[mu_general(z, f, rho) for rho in grid] for f in grid])
            self.assertTrue(np.all((values >= 0) & (values <= 1 + 1e-12)))
            self.assertTrue(np.all(np.diff(values, axis=0) >= -1e-12))
            self.assertTrue(np.all(np.diff(values, axis=1) >= -1e-12))


class StabilityConditionTestCase(SimpleTestCase):
    def test_noise_free(self):
        self.assertTrue(stability_condition(BoundInputs(LossSpec(2.0, 1.0), 0.0, 1.0, 1.0, 0.5)))

    def test_reference_setting(self):
        self.assertTrue(stability_condition(BoundInputs(LossSpec(1.0, 0.2), 1.0, 0.8, 0.8, 0.6)))

    def test_zero_rho(self):
        for z in (0.0, 0.1, 1.0):
            for f in (0.5, 0.9, 1.0):
                self.assertFalse(stability_condition(BoundInputs(LossSpec(1.0, 1.0), z, f, 0.0, 0.5)))

    def test_boundary_is_violated(self):
        report = error_bound(BoundInputs(LossSpec(1.0, 1.0), 0.0, 1.0, 0.0, 0.5))
        self.assertTrue(report.condition_violated)
        self.assertEqual(report.as_dict()["bound"], "ConditionViolated")

    def test_invalid_inputs(self):
        with self.assertRaises(DomainError):
            BoundInputs(LossSpec(1.0, 1.0), 0.1, 1.2, 0.5, 0.5)
        with self.assertRaises(DomainError):
            BoundInputs(LossSpec(1.0, 1.0), 0.1, 0.9, 0.5, 0.0)


class ErrorBoundTestCase(SimpleTestCase):
    def test_zero_bound_when_mu_is_one(self):
        self.assertEqual(error_bound(BoundInputs(LossSpec(1.0, 1.0), 0.0, 1.0, 1.0, 0.6)).bound, 0.0)

    def test_laplacian_reference(self):
        report = error_bound(BoundInputs(LossSpec(1.0, 0.2), 1.0, 0.8, 0.8, 0.6))
        expected = math.log(1 / closed_form_mu(0.2, 0.8, 0.8)) / 0.12
        self.assertAlmostEqual(report.bound, expected, places=12)
        self.assertAlmostEqual(report.bound, 10.3877, delta=1e-3)

    def test_gaussian_reference(self):
        report = error_bound(BoundInputs(LossSpec(2.0, 0.2), 1.0, 0.8, 0.8, 0.6))
        expected = math.sqrt(10.0 * math.log(1 / closed_form_mu(0.2, 0.8, 0.8))) / 0.6
        self.assertAlmostEqual(report.bound, expected, places=12)
        self.assertAlmostEqual(report.bound, 5.8844, delta=1e-3)

    def test_specializations_agree(self):
        for epsilon in (0.0, 0.1, 0.5, 1.0):
            for f, rho in ((1.0, 1.0), (0.9, 0.8), (0.8, 0.8)):
                general_l = error_bound(BoundInputs(LossSpec(1.0, 0.3), epsilon, f, rho, 0.6, 0.7))
                general_g = error_bound(BoundInputs(LossSpec(2.0, 0.3), epsilon, f, rho, 0.6, 0.7))
                special_l = bound_mce_l(0.3, epsilon, f, rho, 0.6, 0.7)
                special_g = bound_mce_g(0.3, epsilon, f, rho, 0.6, 0.7)
                self.assertEqual(general_l.condition_ok, special_l.condition_ok)
                if general_l.bound is not None:
                    self.assertAlmostEqual(general_l.bound, special_l.bound, delta=1e-14 * (1 + special_l.bound))
                if general_g.bound is not None:
                    self.assertAlmostEqual(general_g.bound, special_g.bound, delta=1e-14 * (1 + special_g.bound))

    def test_linear_in_epsilon(self):
        epsilons = [0.1, 0.2, 0.4, 0.8, 1.2, 1.6]
        slopes_l = [bound_mce_l(0.2 / e, e, 0.8, 0.8, 0.6).bound / e for e in epsilons]
        slopes_g = [bound_mce_g(0.2 / e ** 2, e, 0.8, 0.8, 0.6).bound / e for e in epsilons]
        for slope in slopes_l:
            self.assertAlmostEqual(slope, slopes_l[0], delta=1e-10)
        for slope in slopes_g:
            self.assertAlmostEqual(slope, slopes_g[0], delta=1e-10)
        self.assertGreater(slopes_l[0], slopes_g[0])

    def test_nonincreasing_in_mu(self):
        spec = LossSpec(2.0, 0.5)
        bounds = [error_bound(BoundInputs(spec, 0.5, f, 0.9, 0.6)).bound for f in np.linspace(0.6, 1.0, 9)]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(bounds, bounds[1:])))

    def test_relative_bound(self):
        report = bound_mce_l(0.2, 1.0, 0.8, 0.8, 0.6)
        self.assertAlmostEqual(relative_bound(report, 2.0), report.bound / 2.0)
        self.assertIsNone(relative_bound(BoundReport(condition_ok=False, mu=0.0, bound=None), 1.0))


class OptimizeAlphaTestCase(SimpleTestCase):
    def test_constant_rho_prefers_largest_alpha(self):
        alpha, report = optimize_alpha([0.2, 0.4, 0.6], LossSpec(1.0, 0.2), 1.0, 0.8, 0.8)
        self.assertEqual(alpha, 0.6)
        self.assertAlmostEqual(report.bound, bound_mce_l(0.2, 1.0, 0.8, 0.8, 0.6).bound, places=12)

    def test_single_point(self):
        alpha, _ = optimize_alpha([0.3], LossSpec(2.0, 0.2), 1.0, 0.8, 0.8)
        self.assertEqual(alpha, 0.3)

    def test_single_feasible_point(self):
        alpha, report = optimize_alpha([0.2, 0.3, 0.4], LossSpec(2.0, 0.2), 1.0, 0.8,
                                       lambda a: 0.9 if a == 0.3 else 0.0)
        self.assertEqual(alpha, 0.3)
        self.assertTrue(report.condition_ok)

    def test_skips_unavailable_rho(self):
        def rho(alpha):
            if alpha > 0.5:
                raise AlphaExceedsSigma(alpha, 0.5)
            return None if alpha < 0.2 else 0.8

        alpha, _ = optimize_alpha([0.1, 0.3, 0.7], LossSpec(1.0, 0.2), 1.0, 0.8, rho)
        self.assertEqual(alpha, 0.3)

    def test_nothing_feasible(self):
        alpha, report = optimize_alpha([0.2, 0.4], LossSpec(1.0, 1.0), 1.0, 0.5, 0.1)
        self.assertIsNone(alpha)
        self.assertTrue(report.condition_violated)

    def test_empty_grid(self):
        with self.assertRaises(EmptyGrid):
            optimize_alpha([], LossSpec(1.0, 1.0), 1.0, 0.8, 0.8)


class RhoModeTestCase(SimpleTestCase):
    def test_modes(self):
        report = RichnessReport(alpha=0.5, sigma_lower=0.6, sigma_heuristic=0.7, v_alpha=0.2, rho_upper=0.8,
                                sigma_used=SigmaMode.CERTIFIED, r_x=1.0, lambda_min=1.0, condition_number=1.0,
                                rho_exact=0.5)
        self.assertEqual(rho_for_mode(report, RhoMode.CERTIFIED), 0.2)
        self.assertAlmostEqual(rho_for_mode(report, RhoMode.MIDPOINT), 0.5)
        self.assertEqual(rho_for_mode(report, RhoMode.EXACT), 0.5)


class SoundnessTestCase(SimpleTestCase):
    """The bound holds on every trial where the stability condition is met (exact rho, n = 2)."""

    def make_dataset(self, trial, N=500, epsilon=0.05, outlier_frac=0.05):
        rng = substream(99, "soundness", trial)
        angles = rng.uniform(0.0, 2 * np.pi, N)
        X = np.vstack([np.cos(angles), np.sin(angles)])
        theta0 = np.array([0.8, -0.6])
        v = rng.uniform(-epsilon, epsilon, N)
        outliers = rng.choice(N, size=int(round(outlier_frac * N)), replace=False)
        v[outliers] += rng.normal(50.0, 10.0, outliers.size)
        return RegressionDataset(X=X, y=X.T @ theta0 + v, theta_true=theta0, v=v)

    def test_bound_holds(self):
        epsilon = 0.05
        grid = np.linspace(0.05, 0.95, 19)
        cfg = EstimatorConfig(multistart=0)
        checked = 0
        for trial in range(100):
            ds = self.make_dataset(trial)
            nr = normalize_columns(ds.X)
            inlier_frac = float(np.mean(np.abs(ds.v) <= epsilon))
            for spec in (LossSpec.for_level(1.0, epsilon, 0.2), LossSpec.for_level(2.0, epsilon, 0.2)):
                alpha, report = optimize_alpha(grid, spec, epsilon, inlier_frac,
                                               lambda a: rho_exact_2d(nr, a), nr.r_x)
                if alpha is None:
                    continue
                result = mce_fit(ds, spec, cfg)
                self.assertLessEqual(result.error(ds.theta_true), report.bound, msg=f"trial {trial}, p={spec.p}")
                self.assertTrue(np.all(np.diff(result.objective_trace) >= -1e-12))
                checked += 1
        self.assertGreater(checked, 0)
