import logging

import pandas as pd

from Regression.management.base import RegressionCommand, require
from Regression.exceptions import InvalidConfig
from Regression.models import SigmaMethod, SigmaMode
from Regression.richness import richness_report
from Regression.storage import frame_to_csv, read_matrix, to_json

logger = logging.getLogger(__name__)


class Command(RegressionCommand):
    help = 'Informativity report (sigma, v_alpha, rho_upper, ...) of the regressors in a CSV.'
    sections = ('RICHNESS',)

    def add_options(self, parser):
        self.option(parser, '--input', help='Dataset CSV or a standalone x1..xn matrix CSV.')
        self.option(parser, '--alpha', type=float)
        group = parser.add_mutually_exclusive_group()
        self.option(group, '--certified', dest='sigma_mode', action='store_const',
                    const=SigmaMode.CERTIFIED.value, help='Feed v_alpha the certified sigma lower bound.')
        self.option(group, '--heuristic-sigma', dest='sigma_mode', action='store_const',
                    const=SigmaMode.HEURISTIC.value, help='Feed v_alpha the heuristic sigma (not certified).')
        self.option(parser, '--sigma-method', choices=[method.value for method in SigmaMethod])
        self.option(parser, '--n-samples', type=int, help='Random directions for the sampled rho estimate.')
        self.option(parser, '--n-starts', type=int)
        self.option(parser, '--seed', type=int)
        self.option(parser, '--format', choices=('json', 'csv'))

    def run(self, options):
        require(options, 'input', 'alpha')
        if options['n_samples'] < 1 or options['n_starts'] < 1:
            raise InvalidConfig('--n-samples and --n-starts must be >= 1.')
        X = read_matrix(options['input'])
        report = richness_report(
            X, options['alpha'],
            sigma_mode=SigmaMode(options['sigma_mode']),
            n_samples=options['n_samples'],
            n_starts=options['n_starts'],
            seed=options['seed'],
            sigma_method=SigmaMethod(options['sigma_method']),
        )
        logger.info("richness: n=%d N=%d alpha=%g v_alpha=%s", X.shape[0], X.shape[1],
                    options['alpha'], report.v_alpha)
        data = report.as_dict()
        if options['format'] == 'csv':
            return frame_to_csv(pd.DataFrame([data]))
        return to_json(data)
