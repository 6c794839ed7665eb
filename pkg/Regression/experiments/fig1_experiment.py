"""Estimation error of MCE-L, MCE-G and LAD against the dense-noise level."""
import math
from dataclasses import replace

import numpy as np

from Regression.datagen import gen_fir_dataset, snr_db
from Regression.estimators import lad_fit, mce_fit
from Regression.experiments.base import (
    ExperimentCommand, build_result, quantile_columns, run_trials, summarize, trial_seeds,
)
from Regression.models import Figure, LossSpec

ESTIMATORS = ("mce_l", "mce_g", "lad")
COLUMNS = ["epsilon", "snr_db"] + [f"err_{name}" for name in ESTIMATORS]


class Fig1Command(ExperimentCommand):
    figure = Figure.FIG1

    def execute(self, spec):
        theta0 = np.asarray(spec.theta0, dtype=np.float64)
        laplacian = LossSpec.laplacian(spec.gamma_l)
        gaussian = LossSpec.gaussian(spec.gamma_g)
        names = [f"err_{name}" for name in ESTIMATORS]
        columns = COLUMNS + quantile_columns(names) + ["trials"]
        rows = []
        for grid_index, epsilon in enumerate(spec.sweep):
            noise = replace(spec.noise, epsilon=float(epsilon))

            def trial(seed):
                ds = gen_fir_dataset(theta0, spec.n_samples, noise, seed)
                cfg = replace(spec.estimator, seed=seed)
                return (
                    mce_fit(ds, laplacian, cfg).error(theta0),
                    mce_fit(ds, gaussian, cfg).error(theta0),
                    lad_fit(ds, cfg).error(theta0),
                    snr_db(ds),
                )

            values = np.array(run_trials(trial, trial_seeds(spec, grid_index), spec.workers))
            # mean over trials; no dense noise means infinite SNR
            snr = math.inf if epsilon == 0 else summarize(values[:, -1])[0]
            means, quantiles = [], []
            for column in range(len(ESTIMATORS)):
                mean, qs = summarize(values[:, column])
                means.append(mean)
                quantiles.extend(qs)
            rows.append([float(epsilon), snr] + means + quantiles + [spec.trials])
        return build_result(spec, columns, rows)


def run_fig1(spec):
    return Fig1Command().execute(spec)
