"""
Error hierarchy for the coding-theory lab.

Decoders report ordinary decode failures through their result records
(``success`` / ``error``); the exceptions below are reserved for calls that
break a precondition or a post-condition.
"""


class CodingError(ValueError):
    """Base class for every error raised by the library."""


class FieldMismatchError(CodingError):
    """Operands belong to different finite fields."""


class FieldDivisionByZero(CodingError, ZeroDivisionError):
    """Division by (or inversion of) the zero element."""


class InterpolationError(CodingError):
    """Interpolation points are malformed (empty or repeated x)."""


class ShapeError(CodingError):
    """A vector or matrix has the wrong length or shape."""


class ParameterError(CodingError):
    """A precondition of an algorithm does not hold for the given parameters."""


class EnumerationLimitError(ParameterError):
    """An exhaustive computation would exceed its size guard."""


class NotSmoothError(ParameterError):
    """A local decoder is not perfectly smooth where one is required."""


class SamplingExhausted(CodingError):
    """A rejection-sampling loop ran out of attempts."""

    def __init__(self, message: str, attempts: int):
        super().__init__(message)
        self.attempts = attempts


class ContractViolation(CodingError):
    """An algorithm produced output that contradicts its own guarantee."""


class ConfigError(CodingError):
    """An experiment configuration is missing keys or holds invalid values."""


class InputError(CodingError):
    """An input word file is malformed."""
