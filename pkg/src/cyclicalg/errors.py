"""Exception hierarchy.

The CLI maps ``UsageError``/``DomainError``/``ConstructionError``/
``PreconditionError`` to exit status 2 and ``ConsistencyError`` (including
``ProofStepError``) to exit status 3.
"""


class AlgebraError(Exception):
    """Base class for every error raised by this package."""


class UsageError(AlgebraError, ValueError):
    """Wrong shapes, mixed owners, malformed arguments."""


class DomainError(AlgebraError, ArithmeticError):
    """Mathematically undefined request, e.g. division by zero."""


class ConstructionError(AlgebraError, ValueError):
    """An object failed one of its construction-time invariants."""


class PreconditionError(AlgebraError, ValueError):
    """An operation's documented precondition does not hold."""


class ConsistencyError(AlgebraError, RuntimeError):
    """An internal postcondition failed. Always indicates a bug or broken input data."""


class ProofStepError(ConsistencyError):
    """A step of the conjugation-pipeline demonstration failed."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
