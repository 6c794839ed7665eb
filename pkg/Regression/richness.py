"""
Informativity of a regressor matrix X.

rho_alpha(X) is the smallest fraction of normalized regressors x~_t with
|x~_t' eta| >= alpha ||eta|| over all directions eta. It is computed exactly
for n = 2 by enumerating the angles where the count can change; for n >= 3
only a sampled upper estimate and the computable bracket

    v_alpha(X) <= rho_alpha(X) <= min(1, lambda_min(X~X~') / (N alpha^2))

are available. sigma(X) = min_{||eta||=1} ||X~' eta||_inf governs where the
lower bound v_alpha is valid (alpha <= sigma).
"""
import logging

import numpy as np
from scipy.optimize import linprog

from Regression.exceptions import (
    AlphaExceedsSigma, DimensionError, DomainError, ZeroDirection, ZeroRegressor,
)
from Regression.models import NormalizedRegressors, RichnessReport, SigmaMethod, SigmaMode
from Regression.numkit import SymMatrix, eig_extremes, eig_min_vector
from Regression.rng import substream

logger = logging.getLogger(__name__)

# Inclusive comparisons (>=) absorb rounding at this level.
INCLUSIVE_SLACK = 1e-12
DEFAULT_CHUNK = 2048


def normalize_columns(X):
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    norms = np.linalg.norm(X, axis=0)
    zero = np.flatnonzero(norms == 0)
    if zero.size:
        raise ZeroRegressor(int(zero[0]))
    return NormalizedRegressors(xtilde=X / norms, r_x=float(norms.min()))


def _counts(nr, directions, alpha):
    """|I_alpha| for each unit direction (columns of `directions`)."""
    projections = np.abs(nr.xtilde.T @ directions)
    return np.count_nonzero(projections >= alpha - INCLUSIVE_SLACK, axis=0)


def correlation_set(nr, eta, alpha):
    """Indices t with |x~_t' eta| >= alpha ||eta||."""
    eta = np.asarray(eta, dtype=np.float64)
    norm = np.linalg.norm(eta)
    if norm == 0:
        raise ZeroDirection("Correlation set needs a nonzero direction.")
    if not 0 <= alpha <= 1:
        raise DomainError("alpha must lie in [0, 1].")
    projections = np.abs(nr.xtilde.T @ (eta / norm))
    return set(np.flatnonzero(projections >= alpha - INCLUSIVE_SLACK).tolist())


def _projective_angles(nr):
    return np.mod(np.arctan2(nr.xtilde[1], nr.xtilde[0]), np.pi)


def _unit_directions(angles):
    return np.vstack([np.cos(angles), np.sin(angles)])


def rho_exact_2d(nr, alpha):
    """
    Exact rho_alpha for n = 2.

    |x~_t' eta| >= alpha iff the projective angle between them is at most
    arccos(alpha), so the count is piecewise constant in the angle of eta with
    breakpoints phi_t +/- arccos(alpha) (mod pi). It is evaluated at every
    breakpoint and at the midpoint of every gap between consecutive ones.
    """
    if nr.n != 2:
        raise DimensionError(f"rho_exact_2d needs n = 2, got n = {nr.n}.")
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1).")
    phi = _projective_angles(nr)
    half_width = np.arccos(alpha)
    breakpoints = np.sort(np.mod(np.concatenate([phi - half_width, phi + half_width]), np.pi))
    gaps = np.diff(np.append(breakpoints, breakpoints[0] + np.pi))
    midpoints = breakpoints + 0.5 * gaps
    candidates = np.concatenate([breakpoints, midpoints])
    counts = _counts(nr, _unit_directions(candidates), alpha)
    return float(counts.min()) / nr.N


def rho_sampled(nr, alpha, n_samples, seed, chunk_size=DEFAULT_CHUNK):
    """
    Upper estimate of rho_alpha: the minimum of |I_alpha|/N over random unit
    directions, the column directions themselves and the lambda_min
    eigenvector of X~X~'. rho is an infimum, so a sampled minimum can only
    overestimate it. Chunks draw from their own substreams; the min-reduction
    does not depend on evaluation order.
    """
    if nr.n < 2:
        raise DimensionError("rho_sampled needs n >= 2.")
    if n_samples < 1:
        raise DomainError("n_samples must be >= 1.")
    _, eigvec = eig_min_vector(SymMatrix.gram(nr.xtilde))
    best = min(_counts(nr, nr.xtilde, alpha).min(), _counts(nr, eigvec[:, None], alpha).min())
    for chunk_index, start in enumerate(range(0, n_samples, chunk_size)):
        size = min(chunk_size, n_samples - start)
        rng = substream(seed, "rho-sampled", chunk_index)
        directions = rng.standard_normal((nr.n, size))
        directions /= np.linalg.norm(directions, axis=0)
        best = min(best, _counts(nr, directions, alpha).min())
    return float(best) / nr.N


def _lambda_min(nr):
    lam_min, _ = eig_extremes(SymMatrix.gram(nr.xtilde))
    return max(0.0, lam_min)


def sigma_lower(nr):
    """Certified lower bound sqrt(lambda_min(X~X~') / N) on sigma(X)."""
    return float(np.sqrt(_lambda_min(nr) / nr.N))


def sigma_exact_2d(nr):
    """
    sigma(X) for n = 2. ||X~' eta||_inf is cos of the projective distance from
    eta to the nearest column, so the minimizer is the midpoint of the widest
    gap between consecutive column angles and sigma = cos(widest gap / 2).
    """
    if nr.n != 2:
        raise DimensionError("sigma_exact_2d needs n = 2.")
    phi = np.sort(_projective_angles(nr))
    gaps = np.diff(np.append(phi, phi[0] + np.pi))
    widest = int(np.argmax(gaps))
    candidate = phi[widest] + 0.5 * gaps[widest]
    return float(np.max(np.abs(nr.xtilde.T @ _unit_directions(np.array([candidate])))))


def _sup_correlation(nr, eta):
    return float(np.max(np.abs(nr.xtilde.T @ eta)))


def _subgradient_descent(nr, eta, max_iter=400):
    """Projected subgradient descent of ||X~' eta||_inf on the unit sphere."""
    best_eta, best_value = eta, _sup_correlation(nr, eta)
    for k in range(1, max_iter + 1):
        projections = nr.xtilde.T @ eta
        top = int(np.argmax(np.abs(projections)))
        g = np.sign(projections[top]) * nr.xtilde[:, top]
        g = g - (g @ eta) * eta  # tangent to the sphere
        g_norm = np.linalg.norm(g)
        if g_norm == 0:
            break
        eta = eta - (0.5 / np.sqrt(k)) * g / g_norm
        eta /= np.linalg.norm(eta)
        value = _sup_correlation(nr, eta)
        if value < best_value:
            best_eta, best_value = eta, value
    return best_eta, best_value


def _sequential_lp(nr, eta, max_iter=50, tol=1e-12):
    """
    Linearized sigma: min t s.t. |x~_t' z| <= t, eta_k' z = 1, then eta_{k+1} = z/||z||.
    eta_k is feasible and ||z|| >= 1, so the value never increases.
    """
    n, N = nr.n, nr.N
    value = _sup_correlation(nr, eta)
    cost = np.zeros(n + 1)
    cost[-1] = 1.0
    A_ub = np.vstack([
        np.hstack([nr.xtilde.T, -np.ones((N, 1))]),
        np.hstack([-nr.xtilde.T, -np.ones((N, 1))]),
    ])
    b_ub = np.zeros(2 * N)
    bounds = [(None, None)] * n + [(0, None)]
    for _ in range(max_iter):
        A_eq = np.append(eta, 0.0)[None, :]
        result = linprog(cost, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
        if result.status != 0:
            break
        z = result.x[:n]
        candidate = z / np.linalg.norm(z)
        candidate_value = _sup_correlation(nr, candidate)
        if candidate_value >= value - tol:
            break
        eta, value = candidate, candidate_value
    return eta, value


def sigma_heuristic(nr, n_starts, seed, method=SigmaMethod.SUBGRADIENT):
    """
    Upper estimate of sigma(X): exact for n = 2, otherwise the best local
    minimum found from `n_starts` random unit starts plus the lambda_min
    eigenvector. Every candidate is evaluated at a unit vector, so the result
    is never below the true sigma (hence never below sigma_lower).
    """
    if n_starts < 1:
        raise DomainError("n_starts must be >= 1.")
    if nr.n == 1:
        return 1.0
    if nr.n == 2:
        return sigma_exact_2d(nr)
    descend = _sequential_lp if method is SigmaMethod.SEQUENTIAL_LP else _subgradient_descent
    _, eigvec = eig_min_vector(SymMatrix.gram(nr.xtilde))
    starts = [eigvec]
    for index in range(n_starts):
        eta = substream(seed, "sigma-start", index).standard_normal(nr.n)
        starts.append(eta / np.linalg.norm(eta))
    best = min(descend(nr, eta)[1] for eta in starts)
    logger.debug("sigma heuristic (%s): %.12g over %d starts", method.value, best, len(starts))
    return best


def v_alpha(nr, alpha, sigma_used, chunk_size=DEFAULT_CHUNK):
    """
    Lower bound on rho_alpha: with delta = sqrt(1-alpha^2) - sqrt(1-sigma^2)
    and tau = sqrt(1-delta^2), the smallest fraction of columns k with
    |x~_k' x~_t| >= tau, minimized over t.
    """
    if not 0 < alpha:
        raise DomainError("alpha must be > 0.")
    if alpha > sigma_used:
        raise AlphaExceedsSigma(alpha, sigma_used)
    delta = np.sqrt(1.0 - alpha ** 2) - np.sqrt(max(0.0, 1.0 - sigma_used ** 2))
    delta = float(np.clip(delta, 0.0, 1.0))
    tau = np.sqrt(1.0 - delta ** 2)
    smallest = nr.N
    for start in range(0, nr.N, chunk_size):
        block = nr.xtilde[:, start:start + chunk_size]
        counts = np.count_nonzero(np.abs(block.T @ nr.xtilde) >= tau - INCLUSIVE_SLACK, axis=1)
        smallest = min(smallest, int(counts.min()))
    return float(smallest) / nr.N


def rho_upper(nr, alpha):
    if not alpha > 0:
        raise DomainError("alpha must be > 0.")
    return float(min(1.0, _lambda_min(nr) / (nr.N * alpha ** 2)))


def condition_number(nr):
    lam_min, lam_max = eig_extremes(SymMatrix.gram(nr.xtilde))
    if lam_min <= 0:
        return float("inf")
    return float(np.sqrt(lam_max / lam_min))


def richness_report(X, alpha, sigma_mode=SigmaMode.CERTIFIED, n_samples=10000, n_starts=8,
                    seed=0, sigma_method=SigmaMethod.SUBGRADIENT, sample=True):
    """
    Full informativity report at one alpha.

    v_alpha is fed the certified sigma_lower unless sigma_mode is HEURISTIC,
    in which case the report is flagged non-certified. When alpha exceeds the
    sigma used, v_alpha is None ("unavailable at this alpha").
    """
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1).")
    nr = normalize_columns(X)
    lower = sigma_lower(nr)
    heuristic = sigma_heuristic(nr, n_starts, seed, sigma_method)
    sigma_used = lower if sigma_mode is SigmaMode.CERTIFIED else heuristic
    try:
        lower_rho = v_alpha(nr, alpha, sigma_used)
    except AlphaExceedsSigma as exc:
        logger.info("%s", exc)
        lower_rho = None
    report = RichnessReport(
        alpha=alpha,
        sigma_lower=lower,
        sigma_heuristic=heuristic,
        v_alpha=lower_rho,
        rho_upper=rho_upper(nr, alpha),
        sigma_used=sigma_mode,
        r_x=nr.r_x,
        lambda_min=_lambda_min(nr),
        condition_number=condition_number(nr),
    )
    if nr.n == 2:
        report.rho_exact = rho_exact_2d(nr, alpha)
    elif sample and nr.n >= 3:
        report.rho_sampled = rho_sampled(nr, alpha, n_samples, seed)
    return report
