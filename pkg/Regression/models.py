from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Optional

import numpy as np
import pandas as pd

from Regression.exceptions import DimensionError, DomainError, EmptyDataset, InvalidConfig


class InitMethod(Enum):
    OLS = "OLS"
    LAD = "LAD"
    GIVEN = "GIVEN"


class LadSolver(Enum):
    HIGHS = "highs"
    IRLS = "irls"


class SigmaMode(Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic"


class SigmaMethod(Enum):
    SUBGRADIENT = "subgradient"
    SEQUENTIAL_LP = "sequential_lp"


class RhoMode(Enum):
    CERTIFIED = "certified"
    MIDPOINT = "midpoint"
    EXACT = "exact"


class Figure(Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"


@dataclass(frozen=True)
class LossSpec:
    """
    l_p loss |a|^p together with the kernel scale gamma of exp(-gamma*l_p).
    """
    p: float
    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.p) or self.p < 1:
            raise DomainError(f"Loss exponent p must be >= 1, got {self.p}.")
        if not np.isfinite(self.gamma) or self.gamma <= 0:
            raise DomainError(f"Kernel scale gamma must be > 0, got {self.gamma}.")

    @property
    def alpha_ell(self):
        """Relaxed triangle-inequality constant 2^(1-p), in (0, 1]."""
        return 2.0 ** (1.0 - self.p)

    @classmethod
    def laplacian(cls, gamma):
        return cls(p=1.0, gamma=gamma)

    @classmethod
    def gaussian(cls, gamma):
        return cls(p=2.0, gamma=gamma)

    @classmethod
    def for_level(cls, p, epsilon, level):
        """Pick gamma so that gamma * |epsilon|^p equals `level`."""
        if epsilon <= 0:
            raise DomainError("Holding gamma*l(epsilon) fixed needs epsilon > 0.")
        return cls(p=p, gamma=level / epsilon ** p)


@dataclass(frozen=True)
class NoiseModel:
    epsilon: float = 0.0
    outlier_frac: float = 0.0
    outlier_mean: float = 50.0
    outlier_sd: float = 10.0
    eiv_sd: float = 0.0
    symmetric: bool = False  # extension: negate each outlier with probability 1/2

    def __post_init__(self):
        if self.epsilon < 0:
            raise InvalidConfig("epsilon must be >= 0.")
        if not 0 <= self.outlier_frac < 1:
            raise InvalidConfig("outlier_frac must lie in [0, 1).")
        if self.outlier_sd < 0:
            raise InvalidConfig("outlier_sd must be >= 0.")
        if self.eiv_sd < 0:
            raise InvalidConfig("eiv_sd must be >= 0.")


@dataclass
class RegressionDataset:
    """
    Regressors X (n x N, one column x_t per sample) and outputs y (N,).

    When the data were generated, theta_true and the realised noise v are kept
    so that y_t = x_t' theta_true + v_t holds exactly as stored.
    """
    X: np.ndarray
    y: np.ndarray
    theta_true: Optional[np.ndarray] = None
    v: Optional[np.ndarray] = None
    outlier_mask: Optional[np.ndarray] = None
    seed: Optional[int] = None
    noise: Optional[NoiseModel] = None
    regressor_noise: Optional[np.ndarray] = None

    def __post_init__(self):
        self.X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        self.y = np.asarray(self.y, dtype=np.float64).reshape(-1)
        if self.X.shape[1] == 0 or self.y.size == 0:
            raise EmptyDataset("Dataset has no samples.")
        if self.X.shape[1] != self.y.size:
            raise DimensionError(
                f"X has {self.X.shape[1]} columns but y has {self.y.size} entries."
            )
        if self.theta_true is not None:
            self.theta_true = np.asarray(self.theta_true, dtype=np.float64).reshape(-1)
            if self.theta_true.size != self.n:
                raise DimensionError("theta_true length does not match the regressor dimension.")
        if self.v is not None:
            self.v = np.asarray(self.v, dtype=np.float64).reshape(-1)
        if self.outlier_mask is not None:
            self.outlier_mask = np.asarray(self.outlier_mask, dtype=bool).reshape(-1)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def N(self):
        return self.X.shape[1]

    def residuals(self, theta):
        """r = y - X' theta."""
        return self.y - self.X.T @ np.asarray(theta, dtype=np.float64)

    def shifted(self, d):
        """Same regressors, outputs y + X' d."""
        d = np.asarray(d, dtype=np.float64)
        theta_true = None if self.theta_true is None else self.theta_true + d
        return RegressionDataset(X=self.X, y=self.y + self.X.T @ d, theta_true=theta_true, seed=self.seed)


@dataclass(frozen=True)
class EstimatorConfig:
    max_iter: int = 200
    tol: float = 1e-10
    multistart: int = 4
    seed: int = 0
    init: InitMethod = InitMethod.LAD
    theta0: Optional[tuple] = None
    lad_solver: LadSolver = LadSolver.HIGHS

    def __post_init__(self):
        if self.max_iter < 1:
            raise InvalidConfig("max_iter must be >= 1.")
        if not self.tol > 0:
            raise InvalidConfig("tol must be > 0.")
        if self.multistart < 0:
            raise InvalidConfig("multistart must be >= 0.")
        if self.init is InitMethod.GIVEN and self.theta0 is None:
            raise InvalidConfig("init=GIVEN requires theta0.")


@dataclass
class FitResult:
    theta: np.ndarray
    objective: float
    iterations: int
    converged: bool
    objective_trace: list = field(default_factory=list)
    method: str = ""
    start_index: int = 0

    def error(self, theta_true):
        return float(np.linalg.norm(self.theta - np.asarray(theta_true, dtype=np.float64)))

    def as_dict(self):
        return {
            "method": self.method,
            "theta": [float(value) for value in self.theta],
            "objective": float(self.objective),
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
        }


@dataclass(frozen=True)
class NormalizedRegressors:
    xtilde: np.ndarray
    r_x: float

    @property
    def n(self):
        return self.xtilde.shape[0]

    @property
    def N(self):
        return self.xtilde.shape[1]


@dataclass
class RichnessReport:
    alpha: float
    sigma_lower: float
    sigma_heuristic: float
    v_alpha: Optional[float]
    rho_upper: float
    sigma_used: SigmaMode
    r_x: float
    lambda_min: float
    condition_number: float
    rho_exact: Optional[float] = None
    rho_sampled: Optional[float] = None

    @property
    def certified(self):
        return self.sigma_used is SigmaMode.CERTIFIED

    @property
    def rho_midpoint(self):
        """Mean of the lower and upper estimates; None when v_alpha is unavailable."""
        if self.v_alpha is None:
            return None
        return 0.5 * (self.v_alpha + self.rho_upper)

    def as_dict(self):
        data = asdict(self)
        data["sigma_used"] = self.sigma_used.value
        data["certified"] = self.certified
        return data


@dataclass(frozen=True)
class BoundInputs:
    spec: LossSpec
    epsilon: float
    inlier_frac: float
    rho: float
    alpha: float
    r_x: float = 1.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise DomainError("epsilon must be >= 0.")
        if not 0 <= self.inlier_frac <= 1:
            raise DomainError("inlier_frac must lie in [0, 1].")
        if not 0 <= self.rho <= 1:
            raise DomainError("rho must lie in [0, 1].")
        if not 0 < self.alpha <= 1:
            raise DomainError("alpha must lie in (0, 1].")
        if not self.r_x > 0:
            raise DomainError("r_x must be > 0.")


@dataclass(frozen=True)
class BoundReport:
    condition_ok: bool
    mu: float
    bound: Optional[float]  # None encodes ConditionViolated
    alpha: float = float("nan")
    rho: float = float("nan")

    @property
    def condition_violated(self):
        return self.bound is None

    def as_dict(self):
        return {
            "condition_ok": self.condition_ok,
            "mu": self.mu,
            "bound": "ConditionViolated" if self.bound is None else self.bound,
            "alpha": self.alpha,
            "rho": self.rho,
        }


@dataclass(frozen=True)
class ExperimentSpec:
    figure: Figure
    trials: int
    sweep: tuple
    noise: NoiseModel = NoiseModel()
    seed: int = 2024
    output: Optional[str] = None
    workers: int = 1
    estimator: EstimatorConfig = EstimatorConfig(multistart=0)
    theta0: tuple = (0.5, -1.0, 0.2)
    n_samples: int = 300
    gamma_l: float = 0.5
    gamma_g: float = 0.25
    alpha: float = 0.6
    level: float = 0.2
    inlier_frac: float = 0.8
    rho: float = 0.8
    designs: tuple = ()
    sigma_mode: SigmaMode = SigmaMode.CERTIFIED
    rho_mode: RhoMode = RhoMode.MIDPOINT

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidConfig("trials must be >= 1.")
        if len(self.sweep) == 0:
            raise InvalidConfig("Experiment grid is empty.")
        if self.workers < 1:
            raise InvalidConfig("workers must be >= 1.")


@dataclass
class MonteCarloResult:
    figure: Figure
    columns: list
    rows: list
    trials: int

    def to_frame(self):
        return pd.DataFrame(self.rows, columns=self.columns)
