"""
Lower and upper estimates of rho_alpha(X) across alpha, for one FIR design
per (n, N) pair. The true rho_alpha lies between v_alpha and rho_upper; for
n = 2 it is also computed exactly.
"""
import logging

from Regression.datagen import fir_regressors
from Regression.exceptions import EmptyGrid
from Regression.experiments.base import ExperimentCommand, build_result
from Regression.models import Figure
from Regression.richness import richness_report
from Regression.rng import derive_seed, substream

logger = logging.getLogger(__name__)

COLUMNS = ["alpha", "v_alpha", "rho_upper", "rho_exact", "sigma_lower", "sigma_heuristic",
           "n", "N", "rho_sampled"]


def _cell(value):
    return float("nan") if value is None else float(value)


def design_matrix(spec, design_index, n, N):
    seed = derive_seed(spec.seed, spec.figure.value, design_index)
    u = substream(seed, "fir-input").standard_normal(N + n - 1)
    return fir_regressors(u, n)


class Fig2Command(ExperimentCommand):
    figure = Figure.FIG2

    def __init__(self, n_samples=10000, n_starts=8, sample=True):
        self.n_samples = n_samples
        self.n_starts = n_starts
        self.sample = sample

    def execute(self, spec):
        if not spec.designs:
            raise EmptyGrid("The richness sweep needs at least one (n, N) design.")
        rows = []
        for design_index, (n, N) in enumerate(spec.designs):
            X = design_matrix(spec, design_index, int(n), int(N))
            logger.debug("fig2 design %d: n=%d N=%d", design_index, n, N)
            for alpha in spec.sweep:
                report = richness_report(
                    X, float(alpha), sigma_mode=spec.sigma_mode, n_samples=self.n_samples,
                    n_starts=self.n_starts, seed=spec.seed, sample=self.sample,
                )
                rows.append([
                    float(alpha), _cell(report.v_alpha), report.rho_upper, _cell(report.rho_exact),
                    report.sigma_lower, report.sigma_heuristic, int(n), int(N), _cell(report.rho_sampled),
                ])
        # one fixed design per (n, N): no Monte-Carlo repetition
        return build_result(spec, COLUMNS, rows, trials=1)


def run_fig2(spec):
    return Fig2Command().execute(spec)
