"""
Figure experiments. `build_spec` turns harness settings plus overrides into
an ExperimentSpec; `run_experiment` dispatches it to the figure's command.
"""
from Regression.conf import get_defaults
from Regression.exceptions import InvalidConfig
from Regression.experiments.base import ExperimentCommandHandler, result_csv
from Regression.experiments.fig1_experiment import Fig1Command, run_fig1
from Regression.experiments.fig2_experiment import Fig2Command, run_fig2
from Regression.experiments.fig3_experiment import Fig3Command, run_fig3
from Regression.experiments.fig4_experiment import Fig4Command, run_fig4
from Regression.models import EstimatorConfig, ExperimentSpec, Figure, InitMethod, NoiseModel

FIGURE_COMMANDS = {
    Figure.FIG1: Fig1Command,
    Figure.FIG2: Fig2Command,
    Figure.FIG3: Fig3Command,
    Figure.FIG4: Fig4Command,
}

# fig4 operating point: eps = 0.05 with 10% outliers
FIG4_EPSILON = 0.05
FIG4_OUTLIER_FRAC = 0.1


def build_spec(figure, full_scale=False, **overrides):
    """
    Desk-scale spec for `figure` from the HARNESS settings. `full_scale`
    switches trials, fig2 designs and the fig4 N grid to the full-size runs;
    explicit overrides (None values ignored) win over both.
    """
    figure = Figure(figure)
    harness = get_defaults('HARNESS')
    overrides = {key: value for key, value in overrides.items() if value is not None}
    trials = harness['full_trials'] if full_scale else harness['trials']
    fields = {
        'figure': figure,
        'trials': trials,
        'seed': harness['seed'],
        'workers': harness['workers'],
        'estimator': EstimatorConfig(multistart=0, init=InitMethod.LAD),
    }
    eiv_sd = overrides.pop('eiv_sd', 0.0)
    if figure is Figure.FIG1:
        fields['sweep'] = tuple(harness['fig1_epsilons'])
        fields['n_samples'] = harness['fig1_n_samples']
        fields['noise'] = NoiseModel(outlier_frac=overrides.pop('outlier_frac', harness['fig1_outlier_frac']),
                                     eiv_sd=eiv_sd)
    elif figure is Figure.FIG2:
        fields['sweep'] = tuple(harness['fig2_alphas'])
        designs = harness['full_fig2_designs'] if full_scale else harness['fig2_designs']
        fields['designs'] = tuple(tuple(design) for design in designs)
        fields['trials'] = 1
    elif figure is Figure.FIG3:
        fields['sweep'] = tuple(harness['fig3_epsilons'])
        fields['trials'] = 1
    else:
        grid = harness['full_fig4_n_grid'] if full_scale else harness['fig4_n_grid']
        fields['sweep'] = tuple(grid)
        fields['noise'] = NoiseModel(epsilon=overrides.pop('epsilon', FIG4_EPSILON),
                                     outlier_frac=overrides.pop('outlier_frac', FIG4_OUTLIER_FRAC),
                                     eiv_sd=eiv_sd)
    for key in ('epsilon', 'outlier_frac'):
        if key in overrides:
            raise InvalidConfig(f"'{key}' does not apply to {figure.value}.")
    fields.update(overrides)
    return ExperimentSpec(**fields)


def run_experiment(spec, handler=None):
    handler = handler or ExperimentCommandHandler()
    return handler.execute(FIGURE_COMMANDS[spec.figure](), spec)


__all__ = [
    'FIGURE_COMMANDS', 'build_spec', 'run_experiment', 'result_csv',
    'run_fig1', 'run_fig2', 'run_fig3', 'run_fig4',
]
