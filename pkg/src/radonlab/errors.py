"""Shared exception types for budget guards and numeric failure modes."""


class BudgetError(RuntimeError):
    """An enumeration or summation would exceed its configured cap.

    The offending cap is named in the message so callers (and the CLI exit
    path) can report which budget was hit.
    """

    def __init__(self, what: str, needed, cap) -> None:
        super().__init__(f"{what}: needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


class OscillationBudgetError(BudgetError):
    """Refusal to integrate an oscillatory symbol beyond the phase budget."""


class NonconvergenceError(RuntimeError):
    """Adaptive quadrature or a principal-value limit failed to settle."""


class PreconditionError(ValueError):
    """A documented operation precondition was violated by the caller."""
