"""Exception types shared across the package."""


class LogMonoError(Exception):
    """Base class for all errors raised by logmono."""


class DomainError(LogMonoError, ValueError):
    """Argument outside the domain where a function is defined or certified."""


class TooShort(LogMonoError, ValueError):
    """Sequence prefix too short for the requested check."""


class BadOffset(LogMonoError, ValueError):
    """Root-based checks need sequences indexed from n >= 1."""


class NonPositiveValue(LogMonoError, ValueError):
    def __init__(self, index, value=None):
        self.index = index
        self.value = value
        super().__init__(f"non-positive value {value} at index {index}")


class OrderTooHigh(LogMonoError, ValueError):
    pass


class BadParams(LogMonoError, ValueError):
    pass


class BadRange(LogMonoError, ValueError):
    pass


class HypothesisViolation(LogMonoError):
    """A hypothesis guarding a certification run does not hold."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class GeneratorError(LogMonoError, RuntimeError):
    """An exact generator produced a value that breaks its own invariant."""
