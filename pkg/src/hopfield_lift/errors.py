"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class EvaluationError(ArithmeticError):
    """A numerical evaluation produced NaN or overflowed.

    ``abscissa`` records the offending input when one is known.
    """

    def __init__(self, message, abscissa=None):
        super().__init__(message)
        self.abscissa = abscissa


class CapacityError(RuntimeError):
    """The requested computation exceeds a configured work limit."""

    def __init__(self, message, required_work=None):
        super().__init__(message)
        self.required_work = required_work
