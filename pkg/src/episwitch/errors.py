"""Exception types shared across the package."""


class EpiSwitchError(Exception):
    """Base class for all episwitch errors."""


class ParameterError(EpiSwitchError, ValueError):
    """A generator or model parameter is out of its admissible range."""


class EdgeListParseError(EpiSwitchError, ValueError):
    """Malformed edge-list input; message names the offending line."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class DimensionMismatchError(EpiSwitchError, ValueError):
    """Operands have incompatible dimensions."""


class NumericError(EpiSwitchError, RuntimeError):
    """An iterative numerical routine failed to converge.

    Carries the last estimate so callers can still inspect it.
    """

    def __init__(self, message, last_estimate=None):
        super().__init__(message)
        self.last_estimate = last_estimate


class ResourceBudgetError(EpiSwitchError, RuntimeError):
    """An enumeration exceeded its product-count cap or wall budget."""


class ContractError(EpiSwitchError, ValueError):
    """An operation was called outside its documented contract."""


class ConfigError(EpiSwitchError, ValueError):
    """Experiment configuration is invalid."""
