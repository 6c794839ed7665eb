"""
Stability condition and parametric error bound for the maximum correntropy
estimator with an l_p loss.

With z = gamma * l(eps), f = |{t : |v_t| <= eps}| / N and rho = rho_alpha(X),
the estimate theta* satisfies

    ||theta* - theta_true|| <= 1/(alpha r_x) * l^{-1}( ln(1/mu) / (gamma alpha_l) )

whenever rho/(1+e^{-z}) + e^{-z} f > 1, where mu is `mu_general(z, f, rho)`.
"""
import logging
import math

from Regression.exceptions import AlphaExceedsSigma, EmptyGrid
from Regression.kernels import loss, loss_inverse
from Regression.models import BoundInputs, BoundReport, LossSpec, RhoMode, SigmaMode
from Regression.richness import richness_report

logger = logging.getLogger(__name__)


def _margin(z, inlier_frac, rho):
    decay = math.exp(-z)
    return rho / (1.0 + decay) + decay * inlier_frac - 1.0


def mu_general(z, inlier_frac, rho):
    """Stability margin mu(z, f, rho) in [0, 1]; zero when the condition fails."""
    margin = _margin(z, inlier_frac, rho)
    if margin <= 0:
        return 0.0
    return (1.0 + math.exp(-z)) / (inlier_frac + rho - 1.0) * margin


def stability_condition(inputs):
    z = inputs.spec.gamma * loss(inputs.spec, inputs.epsilon)
    return _margin(z, inputs.inlier_frac, inputs.rho) > 0


def error_bound(inputs):
    spec = inputs.spec
    mu = mu_general(spec.gamma * loss(spec, inputs.epsilon), inputs.inlier_frac, inputs.rho)
    if mu == 0:
        return BoundReport(condition_ok=False, mu=0.0, bound=None, alpha=inputs.alpha, rho=inputs.rho)
    level = math.log(1.0 / mu) / (spec.gamma * spec.alpha_ell)
    bound = loss_inverse(spec, level) / (inputs.alpha * inputs.r_x)
    return BoundReport(condition_ok=True, mu=mu, bound=bound, alpha=inputs.alpha, rho=inputs.rho)


def bound_mce_l(gamma1, epsilon, inlier_frac, rho, alpha, r_x=1.0):
    """Laplacian kernel: 1/(gamma1 alpha r_x) * ln(1/mu(gamma1 eps))."""
    BoundInputs(LossSpec.laplacian(gamma1), epsilon, inlier_frac, rho, alpha, r_x)
    mu = mu_general(gamma1 * epsilon, inlier_frac, rho)
    if mu == 0:
        return BoundReport(condition_ok=False, mu=0.0, bound=None, alpha=alpha, rho=rho)
    bound = math.log(1.0 / mu) / (gamma1 * alpha * r_x)
    return BoundReport(condition_ok=True, mu=mu, bound=bound, alpha=alpha, rho=rho)


def bound_mce_g(gamma2, epsilon, inlier_frac, rho, alpha, r_x=1.0):
    """Gaussian kernel: 1/(alpha r_x) * sqrt((2/gamma2) ln(1/mu(gamma2 eps^2)))."""
    BoundInputs(LossSpec.gaussian(gamma2), epsilon, inlier_frac, rho, alpha, r_x)
    mu = mu_general(gamma2 * epsilon ** 2, inlier_frac, rho)
    if mu == 0:
        return BoundReport(condition_ok=False, mu=0.0, bound=None, alpha=alpha, rho=rho)
    bound = math.sqrt(2.0 / gamma2 * math.log(1.0 / mu)) / (alpha * r_x)
    return BoundReport(condition_ok=True, mu=mu, bound=bound, alpha=alpha, rho=rho)


def relative_bound(report, theta_norm):
    """The bound does not involve ||theta_true||, so its relative form is bound / ||theta_true||."""
    if report.bound is None or theta_norm == 0:
        return None
    return report.bound / theta_norm


def rho_for_mode(report, mode):
    """Which rho feeds the bound: certified v_alpha, midpoint of the bracket, or exact (n = 2)."""
    if mode is RhoMode.CERTIFIED:
        return report.v_alpha
    if mode is RhoMode.MIDPOINT:
        return report.rho_midpoint
    return report.rho_exact


def richness_rho(X, mode, **options):
    """
    A per-alpha rho supplier backed by richness reports of X. Midpoint mode
    uses the heuristic sigma for v_alpha, as the sample-size sweep does;
    certified mode keeps sigma_lower.
    """
    sigma_mode = SigmaMode.HEURISTIC if mode is RhoMode.MIDPOINT else SigmaMode.CERTIFIED

    def supplier(alpha):
        report = richness_report(X, alpha, sigma_mode=sigma_mode, sample=False, **options)
        return rho_for_mode(report, mode)

    return supplier


def optimize_alpha(grid, spec, epsilon, inlier_frac, rho, r_x=1.0):
    """
    Grid search over alpha for the smallest finite bound.

    `rho` is a constant, or a callable alpha -> rho (None or
    AlphaExceedsSigma marks an alpha as unusable). Ties go to the lowest grid
    index. Returns (None, violated report) when no alpha satisfies the
    stability condition.
    """
    grid = list(grid)
    if not grid:
        raise EmptyGrid("optimize_alpha needs at least one alpha.")
    best_alpha, best_report = None, None
    for alpha in grid:
        try:
            rho_value = rho(alpha) if callable(rho) else rho
        except AlphaExceedsSigma as exc:
            logger.debug("skipping alpha=%g: %s", alpha, exc)
            continue
        if rho_value is None:
            continue
        report = error_bound(BoundInputs(spec, epsilon, inlier_frac, rho_value, alpha, r_x))
        if report.bound is None:
            continue
        if best_report is None or report.bound < best_report.bound:
            best_alpha, best_report = alpha, report
    if best_report is None:
        logger.warning("No alpha on the grid satisfies the stability condition")
        return None, BoundReport(condition_ok=False, mu=0.0, bound=None)
    return best_alpha, best_report
