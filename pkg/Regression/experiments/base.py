"""
Experiment commands and the Monte-Carlo runner they share.

Each figure is an ExperimentCommand; the handler executes commands and keeps
a history so a run can be repeated with the same spec. Trials are independent
tasks seeded by (base seed, figure, grid index, trial index), and results are
gathered in trial order, so the worker count never changes the output.
"""
import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from Regression.models import MonteCarloResult
from Regression.rng import derive_seed
from Regression.storage import frame_to_csv

logger = logging.getLogger(__name__)

QUANTILES = (0.1, 0.5, 0.9)


class ExperimentCommand(ABC):
    """Base Command class for figure experiments."""
    figure = None

    @abstractmethod
    def execute(self, spec):
        pass


class ExperimentCommandHandler:
    def __init__(self):
        self.history = []  # (command, spec) pairs in execution order

    def execute(self, command, spec):
        logger.info("running %s: %d grid points, %d trials, %d workers",
                    spec.figure.value, len(spec.sweep), spec.trials, spec.workers)
        result = command.execute(spec)
        self.history.append((command, spec))
        logger.info("%s finished with %d rows", spec.figure.value, len(result.rows))
        if spec.output:
            Path(spec.output).write_text(result_csv(result), encoding="utf8")
            logger.info("wrote %s", spec.output)
        return result

    def rerun(self):
        # Repeat the last experiment with the same spec
        if not self.history:
            raise LookupError("Nothing to rerun.")
        command, spec = self.history[-1]
        return self.execute(command, spec)


def trial_seeds(spec, grid_index):
    return [derive_seed(spec.seed, spec.figure.value, grid_index, trial) for trial in range(spec.trials)]


def run_trials(trial, seeds, workers=1):
    """Apply `trial(seed)` to every seed; results come back in seed order."""
    if workers <= 1:
        return [trial(seed) for seed in seeds]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(trial, seeds))


def summarize(values):
    """Mean and 10/50/90 quantiles of finite trial values; NaN when none are finite."""
    values = np.asarray(values, dtype=np.float64)
    values = values[np.isfinite(values)]
    if values.size == 0:
        return float("nan"), [float("nan")] * len(QUANTILES)
    return float(np.mean(values)), [float(q) for q in np.quantile(values, QUANTILES)]


def quantile_columns(names):
    return [f"{name}_q{int(round(100 * q))}" for name in names for q in QUANTILES]


def log10_or_nan(value):
    if value is None or not np.isfinite(value) or value <= 0:
        return float("nan")
    return float(np.log10(value))


def result_csv(result):
    """The CSV text of a MonteCarloResult (NaN and missing cells stay empty)."""
    return frame_to_csv(result.to_frame())


def build_result(spec, columns, rows, trials=None):
    return MonteCarloResult(figure=spec.figure, columns=list(columns), rows=rows,
                            trials=spec.trials if trials is None else trials)
