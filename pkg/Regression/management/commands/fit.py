import logging

import numpy as np

from Regression.bounds import error_bound, relative_bound, rho_for_mode
from Regression.conf import float_list
from Regression.datagen import noise_statistics
from Regression.estimators import lad_fit, mce_fit, ols_fit
from Regression.exceptions import InvalidConfig
from Regression.management.base import RegressionCommand, require
from Regression.models import (
    BoundInputs, EstimatorConfig, InitMethod, LadSolver, LossSpec, RhoMode, SigmaMode,
)
from Regression.richness import richness_report
from Regression.storage import read_dataset, to_json

logger = logging.getLogger(__name__)

METHODS = ('ols', 'lad', 'mce')

UNAVAILABLE = {
    RhoMode.CERTIFIED: 'v_alpha unavailable at this alpha',
    RhoMode.MIDPOINT: 'v_alpha unavailable at this alpha',
    RhoMode.EXACT: 'rho_exact needs n = 2',
}


class Command(RegressionCommand):
    help = 'Fit OLS, LAD or the maximum correntropy estimator to a dataset CSV and print JSON.'
    sections = ('ESTIMATOR', 'FIT')

    def add_options(self, parser):
        self.option(parser, '--input', help='Dataset CSV (y,x1,...,xn); a .meta.json sidecar is used when present.')
        self.option(parser, '--method', choices=METHODS)
        self.option(parser, '--p', type=float, help='Loss exponent of the correntropy kernel (1 or 2).')
        self.option(parser, '--gamma', type=float, help='Kernel scale gamma.')
        self.option(parser, '--seed', type=int)
        self.option(parser, '--max-iter', type=int)
        self.option(parser, '--tol', type=float)
        self.option(parser, '--multistart', type=int)
        self.option(parser, '--init', choices=[method.value for method in InitMethod])
        self.option(parser, '--theta0', help='Initial point for --init GIVEN, comma separated.')
        self.option(parser, '--lad-solver', choices=[solver.value for solver in LadSolver])
        self.option(parser, '--alpha', type=float, help='alpha used for the error bound when theta_true is known.')
        self.option(parser, '--rho-mode', choices=[mode.value for mode in RhoMode])

    def estimator_config(self, options):
        return EstimatorConfig(
            max_iter=options['max_iter'],
            tol=options['tol'],
            multistart=options['multistart'],
            seed=options['seed'],
            init=InitMethod(options['init']),
            theta0=float_list(options['theta0']),
            lad_solver=LadSolver(options['lad_solver']),
        )

    def run(self, options):
        require(options, 'input', 'method')
        cfg = self.estimator_config(options)
        ds = read_dataset(options['input'])
        spec = None
        if options['method'] == 'ols':
            result = ols_fit(ds)
        elif options['method'] == 'lad':
            result = lad_fit(ds, cfg)
        else:
            require(options, 'p', 'gamma')
            spec = LossSpec(p=options['p'], gamma=options['gamma'])
            result = mce_fit(ds, spec, cfg)
        logger.info("fit: %s on N=%d, %d iterations", result.method, ds.N, result.iterations)

        data = result.as_dict()
        data['err'] = None
        if ds.theta_true is not None:
            data['err'] = result.error(ds.theta_true)
            if spec is not None:
                data.update(self.bound_fields(ds, spec, options))
        return to_json(data)

    def bound_fields(self, ds, spec, options):
        """Error bound for the generating noise level, when the sidecar records it."""
        if ds.v is None or ds.noise is None or ds.noise.epsilon <= 0:
            return {}
        alpha = options['alpha']
        if not 0 < alpha < 1:
            raise InvalidConfig('--alpha must lie in (0, 1).')
        mode = RhoMode(options['rho_mode'])
        sigma_mode = SigmaMode.HEURISTIC if mode is RhoMode.MIDPOINT else SigmaMode.CERTIFIED
        report = richness_report(ds.X, alpha, sigma_mode=sigma_mode, seed=options['seed'], sample=False)
        rho = rho_for_mode(report, mode)
        inlier_frac, _ = noise_statistics(ds, ds.noise.epsilon)
        if rho is None:
            # the stability condition cannot be evaluated without a rho
            logger.info("fit: no %s rho at alpha=%g; bound unavailable", mode.value, alpha)
            return {'bound': None, 'relative_bound': None, 'rho_mode': mode.value,
                    'rho_unavailable': UNAVAILABLE[mode]}
        bound = error_bound(BoundInputs(spec, ds.noise.epsilon, inlier_frac, rho, alpha, report.r_x))
        return {
            'bound': bound.as_dict()['bound'],
            'relative_bound': relative_bound(bound, float(np.linalg.norm(ds.theta_true))),
            'rho_mode': mode.value,
        }
