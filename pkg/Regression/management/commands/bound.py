import logging

from Regression.bounds import error_bound, optimize_alpha, richness_rho, stability_condition
from Regression.conf import float_list
from Regression.exceptions import InvalidConfig
from Regression.management.base import RegressionCommand, require
from Regression.models import BoundInputs, LossSpec, RhoMode
from Regression.storage import read_matrix, to_json

logger = logging.getLogger(__name__)


class Command(RegressionCommand):
    help = 'Evaluate the stability condition and the parametric error bound.'
    sections = ('BOUND',)

    def add_options(self, parser):
        self.option(parser, '--p', type=float, help='Loss exponent (>= 1).')
        self.option(parser, '--gamma', type=float, help='Kernel scale gamma.')
        self.option(parser, '--epsilon', type=float, help='Dense noise bound.')
        self.option(parser, '--inlier-frac', type=float, help='|{t : |v_t| <= eps}| / N.')
        self.option(parser, '--rho', type=float, help='rho_alpha(X); omit with --grid --input to estimate it.')
        self.option(parser, '--alpha', type=float)
        self.option(parser, '--rx', type=float, help='Smallest regressor norm r_x.')
        self.option(parser, '--grid', help='Comma-separated alphas; reports the one with the smallest bound.')
        self.option(parser, '--input', help='Regressor CSV supplying rho per alpha for --grid.')
        self.option(parser, '--rho-mode', choices=[mode.value for mode in RhoMode])

    def run(self, options):
        require(options, 'p', 'gamma', 'epsilon', 'inlier_frac')
        spec = LossSpec(p=options['p'], gamma=options['gamma'])
        if options['grid'] is not None:
            return to_json(self.grid_search(spec, options))
        require(options, 'rho', 'alpha')
        inputs = BoundInputs(spec, options['epsilon'], options['inlier_frac'], options['rho'],
                             options['alpha'], options['rx'])
        data = error_bound(inputs).as_dict()
        data['stability_condition'] = stability_condition(inputs)
        return to_json(data)

    def grid_search(self, spec, options):
        grid = float_list(options['grid'])
        if options['rho'] is not None:
            rho = options['rho']
        elif options['input'] is not None:
            rho = richness_rho(read_matrix(options['input']), RhoMode(options['rho_mode']))
        else:
            raise InvalidConfig('--grid needs either --rho or --input.')
        alpha, report = optimize_alpha(grid, spec, options['epsilon'], options['inlier_frac'], rho,
                                       options['rx'])
        logger.info("bound: best alpha on a %d-point grid is %s", len(grid), alpha)
        data = report.as_dict()
        data['alpha'] = alpha
        return data
