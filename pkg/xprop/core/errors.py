"""
Errors

Exception hierarchy shared by every xprop module.
"""


class XPropError(Exception):
    """Base class for all xprop errors"""


class ContractViolationError(XPropError, ValueError):
    """Input violates an operation's precondition (shape, sign, range)"""


class GridIndexError(XPropError, IndexError):
    """Multi-index outside the grid"""


class NonFutureDirectedError(XPropError, ValueError):
    """State with u^0 <= 0 where a future-directed state is required"""


class SuperluminalError(XPropError, ValueError):
    """Spatial speed reaches or exceeds c"""


class DivergenceError(XPropError, RuntimeError):
    """Non-finite values produced during integration"""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class UnsupportedBackendError(XPropError, ValueError):
    """Backend cannot handle the configured potential"""


class GridGuardError(XPropError, ValueError):
    """Grid too large for the O(N^2) quadrature backend"""


class InconclusiveOrderError(XPropError, RuntimeError):
    """Order study residuals are not monotone"""

    def __init__(self, message, eps_list=None, residuals=None):
        super().__init__(message)
        self.eps_list = list(eps_list or [])
        self.residuals = list(residuals or [])


class ConvergenceError(XPropError, RuntimeError):
    """Extrapolated estimates failed the Cauchy test"""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = list(estimates or [])


class SnapshotFormatError(XPropError, ValueError):
    """Malformed field snapshot file"""


class ConfigError(XPropError, ValueError):
    """Invalid experiment configuration; `path` names the offending field"""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
