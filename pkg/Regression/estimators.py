"""
Least-squares, least-absolute-deviation and maximum-correntropy estimators.

The correntropy estimator maximizes (1/N) sum exp(-gamma * l_p(y_t - x_t' theta)),
a nonconvex problem. It is solved by minorize-maximize reweighting: since
exp(-z) >= exp(-z_k) * (1 - (z - z_k)), each iteration solves

    min_theta  sum_t w_t * l_p(y_t - x_t' theta),   w_t = exp(-gamma * l_p(r_t^k))

which is weighted least squares for p = 2 and weighted LAD for p = 1, and the
sample correntropy never decreases along the iterates.
"""
import logging
import warnings

import numpy as np
import scipy.sparse as sparse
from scipy.optimize import linprog

from Regression.exceptions import (
    DegenerateWeights, DomainError, NotConverged, SingularMatrix,
)
from Regression.kernels import correntropy_weights, sample_correntropy
from Regression.models import EstimatorConfig, FitResult, InitMethod, LadSolver
from Regression.numkit import SymMatrix, is_positive_definite, solve_sym
from Regression.rng import substream

logger = logging.getLogger(__name__)

RIDGE_SCALE = 1e-10
IRLS_DELTA = 1e-8
IRLS_MAX_ITER = 500
ASCENT_SLACK = 1e-12
# residuals this small (relative to the output scale) count as interpolated
ACTIVE_TOL = 1e-9


def _check_weights(w, N):
    w = np.asarray(w, dtype=np.float64).reshape(-1)
    if w.size != N:
        raise DegenerateWeights(f"Expected {N} weights, got {w.size}.")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise DegenerateWeights("Weights must be finite and nonnegative.")
    return w


def _require_spanning(ds):
    if not is_positive_definite(SymMatrix.gram(ds.X)):
        raise SingularMatrix("Regressors do not span the parameter space (XX' is singular).")


def ols_fit(ds):
    _require_spanning(ds)
    theta = solve_sym(SymMatrix.gram(ds.X), ds.X @ ds.y)
    objective = float(np.mean(ds.residuals(theta) ** 2))
    return FitResult(theta=theta, objective=objective, iterations=1, converged=True,
                     objective_trace=[objective], method="ols")


def wls_fit(ds, w, ridge=False):
    """
    Minimize sum_t w_t (y_t - x_t' theta)^2.

    With ridge=True, RIDGE_SCALE * trace(G)/n is added to the weighted Gram
    matrix G so that the solve succeeds on degenerate weights.
    """
    w = _check_weights(w, ds.N)
    w_max = w.max()
    if w_max == 0:
        raise DegenerateWeights("All weights are zero.")
    w = w / w_max
    gram = SymMatrix.gram(ds.X, w).entries
    if ridge:
        gram = gram + RIDGE_SCALE * np.trace(gram) / ds.n * np.eye(ds.n)
    try:
        return solve_sym(gram, ds.X @ (w * ds.y))
    except SingularMatrix as exc:
        raise DegenerateWeights("Weighted Gram matrix is not positive definite.") from exc


def _polish_vertex(ds, w, theta):
    """
    An optimal LAD solution interpolates at least n samples. Re-solve exactly
    on the samples the LP reports as interpolated, keeping the result only if
    the weighted objective does not get worse.
    """
    r = ds.residuals(theta)
    scale = 1.0 + np.max(np.abs(ds.y))
    active = (np.abs(r) <= ACTIVE_TOL * scale) & (w > 0)
    if active.sum() < ds.n:
        return theta
    X_active = ds.X[:, active]
    if np.linalg.matrix_rank(X_active) < ds.n:
        return theta
    polished = np.linalg.lstsq(X_active.T, ds.y[active], rcond=None)[0]
    current = np.sum(w * np.abs(r))
    candidate = np.sum(w * np.abs(ds.residuals(polished)))
    if candidate <= current + ASCENT_SLACK * (1.0 + current):
        return polished
    return theta


def _weighted_lad_highs(ds, w):
    n, N = ds.n, ds.N
    # variables: theta (free), u >= 0, s >= 0 with X' theta + u - s = y
    cost = np.concatenate([np.zeros(n), w, w])
    A_eq = sparse.hstack([
        sparse.csr_matrix(ds.X.T),
        sparse.identity(N, format="csr"),
        -sparse.identity(N, format="csr"),
    ], format="csr")
    bounds = [(None, None)] * n + [(0, None)] * (2 * N)
    result = linprog(cost, A_eq=A_eq, b_eq=ds.y, bounds=bounds, method="highs")
    if result.status != 0:
        raise DegenerateWeights(f"Weighted LAD linear program failed: {result.message}")
    theta = _polish_vertex(ds, w, result.x[:n])
    return theta, 1, True


def _weighted_lad_irls(ds, w, cfg):
    """IRLS on the smoothed absolute value: weights w_t / max(|r_t|, delta)."""
    theta = wls_fit(ds, w)
    max_iter = min(cfg.max_iter * 5, IRLS_MAX_ITER)
    for iteration in range(1, max_iter + 1):
        r = ds.residuals(theta)
        theta_new = wls_fit(ds, w / np.maximum(np.abs(r), IRLS_DELTA))
        step = np.linalg.norm(theta_new - theta)
        theta = theta_new
        if step <= cfg.tol * (1.0 + np.linalg.norm(theta)):
            return theta, iteration, True
    return theta, max_iter, False


def _solve_weighted_lad(ds, w, cfg):
    w = _check_weights(w, ds.N)
    positive = w > 0
    if not positive.any() or np.linalg.matrix_rank(ds.X[:, positive]) < ds.n:
        raise DegenerateWeights("Positively weighted regressors do not span the parameter space.")
    w = w / w.max()
    if cfg.lad_solver is LadSolver.IRLS:
        return _weighted_lad_irls(ds, w, cfg)
    return _weighted_lad_highs(ds, w)


def weighted_lad_fit(ds, w, cfg=None):
    """Minimize sum_t w_t |y_t - x_t' theta|."""
    theta, _, _ = _solve_weighted_lad(ds, w, cfg or EstimatorConfig())
    return theta


def lad_fit(ds, cfg=None):
    cfg = cfg or EstimatorConfig()
    _require_spanning(ds)
    theta, iterations, converged = _solve_weighted_lad(ds, np.ones(ds.N), cfg)
    if not converged:
        warnings.warn(NotConverged(f"LAD IRLS stopped after {iterations} iterations."))
        logger.warning("LAD IRLS did not converge in %d iterations", iterations)
    objective = float(np.mean(np.abs(ds.residuals(theta))))
    return FitResult(theta=theta, objective=objective, iterations=iterations, converged=converged,
                     objective_trace=[objective], method="lad")


def _floored(w):
    w_max = w.max()
    if w_max == 0:
        return np.ones_like(w)
    return w + RIDGE_SCALE * w_max


def _mm_step(ds, spec, w, cfg):
    """One reweighted solve; returns (theta, whether the degenerate fallback fired)."""
    try:
        if spec.p == 2:
            return wls_fit(ds, w), False
        return _solve_weighted_lad(ds, w, cfg)[0], False
    except DegenerateWeights:
        logger.warning("Degenerate correntropy weights; regularizing the reweighted step")
        if spec.p == 2:
            return wls_fit(ds, _floored(w), ridge=True), True
        return _solve_weighted_lad(ds, _floored(w), cfg)[0], True


def _mm_ascent(ds, spec, cfg, theta, start_index):
    theta = np.asarray(theta, dtype=np.float64)
    objective = sample_correntropy(spec, ds, theta)
    trace = [objective]
    converged = False
    regularized = False
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        weights = correntropy_weights(spec, ds.residuals(theta))
        theta_new, regularized = _mm_step(ds, spec, weights, cfg)
        new_objective = sample_correntropy(spec, ds, theta_new)
        if new_objective < objective - ASCENT_SLACK:
            logger.debug("start %d: inner solve lowered the objective at iteration %d; stopping",
                         start_index, iterations)
            break
        step = np.linalg.norm(theta_new - theta)
        theta, objective = theta_new, new_objective
        trace.append(objective)
        if step <= cfg.tol:
            converged = True
            break
    converged = converged and not regularized
    logger.debug("start %d: objective %.12g after %d iterations (converged=%s)",
                 start_index, objective, iterations, converged)
    return FitResult(theta=theta, objective=objective, iterations=iterations, converged=converged,
                     objective_trace=trace, method="mce_l" if spec.p == 1 else "mce_g",
                     start_index=start_index)


def _baseline(ds, cfg, method):
    if method is InitMethod.OLS:
        return ols_fit(ds).theta
    return lad_fit(ds, cfg).theta


def start_points(ds, cfg):
    """
    Start 0 is the configured init; with multistart > 0 the other baselines
    follow, then `multistart` Gaussian perturbations of start 0 with scale
    0.5 * ||theta_init|| drawn from per-start substreams.
    """
    if cfg.init is InitMethod.GIVEN:
        primary = np.asarray(cfg.theta0, dtype=np.float64)
    else:
        primary = _baseline(ds, cfg, cfg.init)
    starts = [primary]
    if cfg.multistart == 0:
        return starts
    for method in (InitMethod.OLS, InitMethod.LAD):
        if method is not cfg.init:
            starts.append(_baseline(ds, cfg, method))
    scale = 0.5 * np.linalg.norm(primary) or 0.5
    for index in range(cfg.multistart):
        rng = substream(cfg.seed, "mce-multistart", index)
        starts.append(primary + scale * rng.standard_normal(ds.n))
    return starts


def mce_fit(ds, spec, cfg=None):
    """
    Maximum correntropy estimate by MM reweighting from every start point.

    The best objective wins; exact ties go to the lowest start index. The
    winner is a local maximizer of the sample correntropy, not necessarily
    the global one.
    """
    cfg = cfg or EstimatorConfig()
    if spec.p not in (1.0, 2.0):
        raise DomainError(f"MM inner solvers cover p in {{1, 2}}; got p={spec.p}.")
    _require_spanning(ds)
    best = None
    for index, theta0 in enumerate(start_points(ds, cfg)):
        result = _mm_ascent(ds, spec, cfg, theta0, index)
        if best is None or result.objective > best.objective:
            best = result
    if not best.converged:
        warnings.warn(NotConverged(
            f"MCE (p={spec.p:g}) did not reach step tolerance {cfg.tol:g} in {cfg.max_iter} iterations."
        ))
        logger.warning("MCE fit flagged not converged (start %d, %d iterations)",
                       best.start_index, best.iterations)
    return best
