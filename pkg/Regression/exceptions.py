class RegressionError(Exception):
    """Base class for every data or numerical error raised by the toolkit."""


class SingularMatrix(RegressionError):
    pass


class DomainError(RegressionError):
    pass


class EmptyDataset(RegressionError):
    pass


class DegenerateWeights(RegressionError):
    pass


class ZeroRegressor(RegressionError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"Regressor column {index} is zero.")


class ZeroDirection(RegressionError):
    pass


class DimensionError(RegressionError):
    pass


class AlphaExceedsSigma(RegressionError):
    def __init__(self, alpha, sigma):
        self.alpha = alpha
        self.sigma = sigma
        super().__init__(f"alpha={alpha:.6g} exceeds sigma={sigma:.6g}; v_alpha unavailable at this alpha.")


class EmptyGrid(RegressionError):
    pass


class InvalidConfig(RegressionError):
    pass


class MissingNoiseRecord(RegressionError):
    pass


class NotConverged(RuntimeWarning):
    """Emitted through warnings.warn; the fit result is still returned, flagged."""
