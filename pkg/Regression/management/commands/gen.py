import logging

from Regression.conf import float_list
from Regression.datagen import gen_fir_dataset
from Regression.management.base import RegressionCommand, require
from Regression.models import NoiseModel
from Regression.storage import dataset_frame, frame_to_csv, write_dataset

logger = logging.getLogger(__name__)


class Command(RegressionCommand):
    help = 'Generate a synthetic FIR regression dataset (CSV plus JSON sidecar when --out is given).'
    sections = ('DATAGEN',)

    def add_options(self, parser):
        self.option(parser, '--theta', help='True parameters, comma separated (e.g. 0.5,-1,0.2).')
        self.option(parser, '--n-samples', type=int, help='Number of samples N.')
        self.option(parser, '--epsilon', type=float, help='Dense noise bound: e_t ~ U[-eps, eps].')
        self.option(parser, '--outlier-frac', type=float, help='Fraction of samples hit by an outlier.')
        self.option(parser, '--outlier-mean', type=float)
        self.option(parser, '--outlier-sd', type=float)
        self.option(parser, '--eiv-sd', type=float, help='Std of additive regressor noise (errors in variables).')
        self.option(parser, '--symmetric', action='store_true', help='Random outlier signs.')
        self.option(parser, '--seed', type=int)

    def run(self, options):
        require(options, 'theta', 'n_samples', 'seed')
        noise = NoiseModel(
            epsilon=options['epsilon'],
            outlier_frac=options['outlier_frac'],
            outlier_mean=options['outlier_mean'],
            outlier_sd=options['outlier_sd'],
            eiv_sd=options['eiv_sd'],
            symmetric=bool(options['symmetric']),
        )
        ds = gen_fir_dataset(float_list(options['theta']), options['n_samples'], noise, options['seed'])
        if options['out']:
            write_dataset(ds, options['out'])
            logger.info("gen: wrote N=%d samples to %s", ds.N, options['out'])
            return None
        return frame_to_csv(dataset_frame(ds))
