"""Shared exception types for the fairnoma package."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not meet its error target.

    Carries the best available value and the achieved absolute-error
    estimate so callers can decide whether the result is still usable.
    """

    def __init__(self, message: str, value: float | None = None,
                 estimate: float | None = None):
        super().__init__(message)
        self.value = value
        self.estimate = estimate
