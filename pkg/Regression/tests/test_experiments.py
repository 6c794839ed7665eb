import math
import tempfile
from dataclasses import replace
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase

from Regression.experiments import build_spec, result_csv, run_experiment, run_fig3
from Regression.experiments.base import ExperimentCommandHandler, run_trials, summarize
from Regression.experiments.fig1_experiment import Fig1Command
from Regression.experiments.fig2_experiment import Fig2Command
from Regression.experiments.fig4_experiment import Fig4Command
from Regression.exceptions import InvalidConfig
from Regression.models import Figure, RhoMode, SigmaMode


class BuildSpecTestCase(SimpleTestCase):
    def test_desk_scale_defaults(self):
        spec = build_spec("fig1")
        self.assertEqual(spec.trials, 100)
        self.assertEqual(spec.n_samples, 300)
        self.assertEqual(spec.noise.outlier_frac, 0.5)
        self.assertEqual(spec.sweep[0], 0.0)
        self.assertEqual(spec.sweep[-1], 1.6)
        self.assertEqual(build_spec("fig4").sweep, (200, 500, 1000, 2000))

    def test_full_scale(self):
        spec = build_spec("fig4", full_scale=True)
        self.assertEqual(spec.trials, 1000)
        self.assertEqual(spec.sweep[-1], 5000)
        self.assertEqual(build_spec("fig2", full_scale=True).designs[-1], (3, 6000))

    def test_overrides(self):
        spec = build_spec("fig4", trials=7, seed=3, epsilon=0.1, outlier_frac=0.2, eiv_sd=0.05)
        self.assertEqual((spec.trials, spec.seed), (7, 3))
        self.assertEqual((spec.noise.epsilon, spec.noise.outlier_frac, spec.noise.eiv_sd), (0.1, 0.2, 0.05))

    def test_rejects_foreign_option(self):
        with self.assertRaises(InvalidConfig):
            build_spec("fig3", outlier_frac=0.2)
        with self.assertRaises(InvalidConfig):
            build_spec("fig1", trials=0)


class RunnerTestCase(SimpleTestCase):
    def test_results_in_seed_order(self):
        seeds = list(range(20))
        self.assertEqual(run_trials(lambda seed: seed * seed, seeds, workers=4), [s * s for s in seeds])

    def test_summary_within_range(self):
        values = np.array([0.3, 0.1, 0.7, 0.2, float("nan")])
        mean, (q10, q50, q90) = summarize(values)
        self.assertTrue(0.1 <= q10 <= q50 <= q90 <= 0.7)
        self.assertAlmostEqual(mean, 0.325)

    def test_handler_rerun(self):
        handler = ExperimentCommandHandler()
        spec = build_spec("fig3")
        first = run_experiment(spec, handler)
        second = handler.rerun()
        self.assertEqual(result_csv(first), result_csv(second))
        self.assertEqual(len(handler.history), 2)


class Fig1TestCase(SimpleTestCase):
    def small_spec(self, **changes):
        spec = build_spec("fig1", trials=2, outlier_frac=0.2)
        return replace(spec, sweep=(0.0, 0.4), n_samples=120, **changes)

    def test_columns_and_rows(self):
        result = Fig1Command().execute(self.small_spec())
        self.assertEqual(result.columns[:5], ["epsilon", "snr_db", "err_mce_l", "err_mce_g", "err_lad"])
        self.assertEqual(result.columns[-1], "trials")
        self.assertEqual(len(result.rows), 2)
        first = dict(zip(result.columns, result.rows[0]))
        self.assertEqual(first["snr_db"], math.inf)
        for name in ("err_mce_l", "err_mce_g", "err_lad"):
            self.assertLess(first[name], 0.05)
        # signal variance ||theta0||^2 = 1.29 over the uniform noise variance eps^2 / 3
        second = dict(zip(result.columns, result.rows[1]))
        self.assertAlmostEqual(second["snr_db"], 10 * math.log10(1.29 / (0.4 ** 2 / 3)), delta=1.5)

    def test_deterministic_across_workers(self):
        single = result_csv(Fig1Command().execute(self.small_spec(trials=1)))
        again = result_csv(Fig1Command().execute(self.small_spec(trials=1)))
        threaded = result_csv(Fig1Command().execute(self.small_spec(trials=1, workers=3)))
        self.assertEqual(single, again)
        self.assertEqual(single, threaded)
        self.assertTrue(single.startswith("epsilon,snr_db,err_mce_l,err_mce_g,err_lad,"))


class Fig2TestCase(SimpleTestCase):
    def test_bracket_rows(self):
        spec = replace(build_spec("fig2"), designs=((2, 60), (3, 90)), sweep=(0.05, 0.3, 0.5))
        result = Fig2Command(n_samples=2000).execute(spec)
        frame = result.to_frame()
        self.assertEqual(list(frame.columns[:6]),
                         ["alpha", "v_alpha", "rho_upper", "rho_exact", "sigma_lower", "sigma_heuristic"])
        self.assertEqual(len(frame), 6)
        self.assertTrue((frame[frame.alpha == 0.05].rho_upper == 1.0).all())
        planar = frame[frame.n == 2]
        for _, row in planar.iterrows():
            if not np.isnan(row.v_alpha):
                self.assertLessEqual(row.v_alpha, row.rho_exact)
            self.assertLessEqual(row.rho_exact, row.rho_upper + 1e-12)
        self.assertTrue(frame[frame.n == 3].rho_exact.isna().all())

    def test_heuristic_sigma_rows(self):
        spec = replace(build_spec("fig2"), designs=((3, 150),), sweep=(0.7,), sigma_mode=SigmaMode.HEURISTIC)
        frame = Fig2Command(n_samples=500).execute(spec).to_frame()
        self.assertFalse(np.isnan(frame.v_alpha.iloc[0]))


class Fig3TestCase(SimpleTestCase):
    def test_linear_bounds(self):
        result = run_fig3(build_spec("fig3"))
        self.assertEqual(result.columns, ["epsilon", "bound_mce_l", "bound_mce_g"])
        mu = 0.2875164
        for epsilon, bound_l, bound_g in result.rows:
            self.assertAlmostEqual(bound_l / epsilon, 10.3877, delta=1e-3)
            self.assertAlmostEqual(bound_g / epsilon, 5.8844, delta=1e-3)
            self.assertAlmostEqual(bound_l / epsilon, math.log(1 / mu) / 0.12, delta=1e-4)
            self.assertGreater(bound_l, bound_g)

    def test_writes_output_path(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "fig3.csv"
            result = run_experiment(build_spec("fig3", output=str(path)))
            self.assertEqual(path.read_text(), result_csv(result))

    def test_csv_format(self):
        text = result_csv(run_fig3(build_spec("fig3")))
        lines = text.splitlines()
        self.assertEqual(lines[0], "epsilon,bound_mce_l,bound_mce_g")
        self.assertEqual(len(lines), 10)
        # 17 significant digits round-trip
        first = lines[1].split(",")
        self.assertEqual(float(first[1]), run_fig3(build_spec("fig3")).rows[0][1])


class Fig4TestCase(SimpleTestCase):
    def test_bounds_are_conservative(self):
        spec = replace(build_spec("fig4", trials=3), sweep=(500, 1000, 2000))
        self.assertIs(spec.rho_mode, RhoMode.MIDPOINT)
        result = Fig4Command().execute(spec)
        frame = result.to_frame()
        self.assertEqual(list(frame.columns[:5]), ["N", "err_mce_l", "err_mce_g", "bound_mce_l", "bound_mce_g"])
        self.assertEqual(len(frame), 3)
        self.assertTrue((frame.inlier_frac >= 0.9).all())
        for _, row in frame.iterrows():
            self.assertEqual(row.violations, 0)
            self.assertGreater(row.bound_mce_l, row.err_mce_l)
            self.assertGreater(row.bound_mce_g, row.err_mce_g)
            self.assertEqual(row.bound_r_x, 1.0)
            self.assertLess(row.r_x, 1.0)
            for ratio in (row.ratio_mce_l, row.ratio_mce_g):
                self.assertGreaterEqual(ratio, 3.0)
                self.assertLessEqual(ratio, 300.0)
            self.assertAlmostEqual(row.log10_bound_mce_l, math.log10(row.bound_mce_l))

    def test_certified_mode_keeps_data_scale(self):
        spec = replace(build_spec("fig4", trials=1, rho_mode=RhoMode.CERTIFIED), sweep=(200,), alpha=0.3)
        row = Fig4Command().execute(spec).to_frame().iloc[0]
        self.assertEqual(row.bound_r_x, row.r_x)
        self.assertLess(row.r_x, 1.0)

    def test_deterministic_across_workers(self):
        spec = replace(build_spec("fig4", trials=2), sweep=(200,))
        single = result_csv(Fig4Command().execute(spec))
        threaded = result_csv(Fig4Command().execute(replace(spec, workers=2)))
        self.assertEqual(single, threaded)

    def test_figure_registry(self):
        self.assertIs(build_spec("fig4").figure, Figure.FIG4)
