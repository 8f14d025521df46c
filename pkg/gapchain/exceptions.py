from typing import Any, Optional

from gapchain.gapchain_globals import (
    EXIT_BUDGET,
    EXIT_CONVERGENCE,
    EXIT_PARSE,
    EXIT_SAMPLING,
    EXIT_VERIFY,
)


class GapchainBaseException(Exception):
    """General base exception for every error raised by gapchain."""

    exit_code = 1


class ParseError(GapchainBaseException):
    """Input text (DIMACS, instance, graph or disperser file) is malformed."""

    exit_code = EXIT_PARSE

    def __init__(self, msg: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)


class ConfigInvalidException(GapchainBaseException):
    """Exception raised for invalid configuration error."""

    exit_code = EXIT_PARSE


class PreconditionError(GapchainBaseException):
    """An operation was called outside its documented preconditions."""

    exit_code = EXIT_PARSE


class FieldError(PreconditionError):
    """Invalid prime field or field operation (e.g. inverting zero)."""

    pass


class DimensionMismatch(PreconditionError):
    """Vector or matrix dimensions do not agree."""

    pass


class BudgetExceeded(GapchainBaseException):
    """An enumeration or materialization would exceed its configured budget."""

    exit_code = EXIT_BUDGET

    def __init__(self, what: str, needed: int, budget: int) -> None:
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, budget is {budget}")


class VerificationFailed(GapchainBaseException):
    """A checker found a counterexample."""

    exit_code = EXIT_VERIFY

    def __init__(self, msg: str, report: Any = None) -> None:
        self.report = report
        super().__init__(msg)


class CompletenessError(VerificationFailed):
    """A witness construction found a group without a consistent vertex."""

    pass


class SamplingFailed(GapchainBaseException):
    """Rejection sampling ran out of retries."""

    exit_code = EXIT_SAMPLING


class ConvergenceError(GapchainBaseException):
    """Iterative eigen solver did not converge."""

    exit_code = EXIT_CONVERGENCE

    def __init__(self, msg: str, residual: float) -> None:
        self.residual = residual
        super().__init__(f"{msg} (residual {residual:.3e})")
