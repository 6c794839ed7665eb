import logging

from Regression.experiments import build_spec, result_csv, run_experiment
from Regression.management.base import RegressionCommand, require
from Regression.models import Figure, RhoMode, SigmaMode

logger = logging.getLogger(__name__)


class Command(RegressionCommand):
    help = 'Run a Monte-Carlo figure experiment (fig1..fig4) and write its CSV.'

    def add_options(self, parser):
        self.option(parser, '--figure', choices=[figure.value for figure in Figure])
        self.option(parser, '--trials', type=int)
        self.option(parser, '--seed', type=int)
        self.option(parser, '--workers', type=int, help='Worker threads for the trials; results do not depend on it.')
        self.option(parser, '--paper-scale', dest='full_scale', action='store_true', help='Full trial counts and grids.')
        self.option(parser, '--epsilon', type=float, help='Dense noise bound (fig4).')
        self.option(parser, '--outlier-frac', type=float, help='Outlier fraction (fig1, fig4).')
        self.option(parser, '--eiv-sd', type=float, help='Regressor noise std (fig1, fig4).')
        self.option(parser, '--rho-mode', choices=[mode.value for mode in RhoMode], help='rho feeding the fig4 bounds.')
        self.option(parser, '--sigma-mode', choices=[mode.value for mode in SigmaMode], help='sigma feeding v_alpha in fig2.')

    def run(self, options):
        require(options, 'figure')
        spec = build_spec(
            options['figure'],
            full_scale=bool(options['full_scale']),
            trials=options['trials'],
            seed=options['seed'],
            workers=options['workers'],
            epsilon=options['epsilon'],
            outlier_frac=options['outlier_frac'],
            eiv_sd=options['eiv_sd'],
            rho_mode=RhoMode(options['rho_mode']) if options['rho_mode'] else None,
            sigma_mode=SigmaMode(options['sigma_mode']) if options['sigma_mode'] else None,
            output=options['out'],
        )
        result = run_experiment(spec)
        if spec.output:
            # already written by the experiment handler
            return None
        return result_csv(result)
