import numpy as np

from Regression.exceptions import DomainError, EmptyDataset


def loss(spec, a):
    """l_p(a) = |a|^p. Works elementwise on arrays."""
    return np.abs(a) ** spec.p


def loss_inverse(spec, v):
    """Inverse of l_p on the nonnegative half-line: v^(1/p)."""
    v_arr = np.asarray(v, dtype=np.float64)
    if np.any(v_arr < 0):
        raise DomainError("loss_inverse is only defined for nonnegative values.")
    result = v_arr ** (1.0 / spec.p)
    return float(result) if result.ndim == 0 else result


def kernel(spec, y, yhat):
    """
    phi(y, yhat) = exp(-gamma * l_p(y - yhat)).

    Huge residuals underflow to exactly 0.0; that zero weight is what
    removes outliers, so the exponent is not clamped.
    """
    return np.exp(-spec.gamma * loss(spec, np.subtract(y, yhat)))


def correntropy_weights(spec, residuals):
    """Per-sample kernel values exp(-gamma * l_p(r_t))."""
    return np.exp(-spec.gamma * loss(spec, residuals))


def sample_correntropy(spec, ds, theta):
    """(1/N) sum_k exp(-gamma * l_p(y_k - x_k' theta))."""
    if ds.N == 0:
        raise EmptyDataset("Sample correntropy of an empty dataset.")
    return float(np.mean(correntropy_weights(spec, ds.residuals(theta))))


def correntropy_gradient(spec, ds, theta):
    """
    Gradient of sample_correntropy with respect to theta:

        (gamma * p / N) * sum_k exp(-gamma |r_k|^p) |r_k|^(p-1) sign(r_k) x_k

    with r_k = y_k - x_k' theta. For p = 1 this is the subgradient element
    picked by sign(0) = 0.
    """
    r = ds.residuals(theta)
    weights = correntropy_weights(spec, r)
    if spec.p == 1:
        magnitude = np.ones_like(r)
    else:
        magnitude = np.abs(r) ** (spec.p - 1.0)
    coefficients = weights * magnitude * np.sign(r)
    return (spec.gamma * spec.p / ds.N) * (ds.X @ coefficients)
