"""
Synthetic FIR regression data: y_t = x_t' theta + v_t with
x_t = [u_t, u_{t-1}, ..., u_{t-n+1}]', u_t iid N(0, 1), and v_t made of dense
uniform noise on [-eps, eps] plus a fixed number of large outliers.
"""
import logging
import math
from dataclasses import replace

import numpy as np

from Regression.exceptions import InvalidConfig, MissingNoiseRecord
from Regression.models import NoiseModel, RegressionDataset
from Regression.rng import substream

logger = logging.getLogger(__name__)


def fir_regressors(u, n):
    """Columns x_t = [u_t, ..., u_{t-n+1}] from an input record holding n-1 warm-up samples first."""
    N = u.size - (n - 1)
    return np.vstack([u[n - 1 - lag:n - 1 - lag + N] for lag in range(n)])


def gen_fir_dataset(theta0, N, noise=None, seed=0):
    noise = noise or NoiseModel()
    theta0 = np.asarray(theta0, dtype=np.float64).reshape(-1)
    n = theta0.size
    if n < 1:
        raise InvalidConfig("theta0 must have at least one entry.")
    if N < n:
        raise InvalidConfig(f"Need N >= n, got N={N}, n={n}.")

    u = substream(seed, "fir-input").standard_normal(N + n - 1)
    X = fir_regressors(u, n)

    dense = substream(seed, "dense-noise").uniform(-noise.epsilon, noise.epsilon, N)
    outlier_count = int(round(noise.outlier_frac * N))
    outlier_rng = substream(seed, "outliers")
    positions = outlier_rng.choice(N, size=outlier_count, replace=False)
    amplitudes = outlier_rng.normal(noise.outlier_mean, noise.outlier_sd, outlier_count)
    if noise.symmetric:
        amplitudes *= outlier_rng.choice([-1.0, 1.0], size=outlier_count)
    sparse = np.zeros(N)
    sparse[positions] = amplitudes
    mask = np.zeros(N, dtype=bool)
    mask[positions] = True

    signal = X.T @ theta0
    y = signal + (dense + sparse)
    # stored so that y - X' theta0 - v is exactly zero
    v = y - signal
    dataset = RegressionDataset(X=X, y=y, theta_true=theta0, v=v, outlier_mask=mask, seed=seed, noise=noise)
    logger.debug("generated FIR dataset n=%d N=%d outliers=%d seed=%d", n, N, outlier_count, seed)
    if noise.eiv_sd > 0:
        dataset = apply_eiv(dataset, noise.eiv_sd, seed)
    return dataset


def apply_eiv(ds, eiv_sd, seed):
    """
    Observe the regressors with additive N(0, eiv_sd^2) noise W. y is kept, so
    the effective noise becomes v_bar_t = v_t - w_t' theta_true.
    """
    if eiv_sd < 0:
        raise InvalidConfig("eiv_sd must be >= 0.")
    if eiv_sd == 0:
        return ds
    W = substream(seed, "eiv").normal(0.0, eiv_sd, ds.X.shape)
    X_noisy = ds.X + W
    v_bar = None
    if ds.theta_true is not None and ds.v is not None:
        v_bar = ds.y - X_noisy.T @ ds.theta_true
    return replace(ds, X=X_noisy, v=v_bar, regressor_noise=W)


def noise_statistics(ds, epsilon):
    """(|{t : |v_t| <= eps}| / N, number of samples outside)."""
    if ds.v is None:
        raise MissingNoiseRecord("Dataset carries no noise record.")
    inliers = int(np.count_nonzero(np.abs(ds.v) <= epsilon))
    return inliers / ds.N, ds.N - inliers


def snr_db(ds, epsilon=None):
    """
    10 log10(var(X' theta) / var(e)) with var(e) = eps^2/3 for the uniform
    dense noise; inf when there is no dense noise.
    """
    if ds.theta_true is None:
        raise MissingNoiseRecord("SNR needs the true parameters.")
    if epsilon is None:
        epsilon = ds.noise.epsilon if ds.noise is not None else 0.0
    if epsilon == 0:
        return math.inf
    signal_var = float(np.var(ds.X.T @ ds.theta_true))
    return 10.0 * math.log10(signal_var / (epsilon ** 2 / 3.0))
