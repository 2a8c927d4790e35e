"""Exception hierarchy shared by every module.

All errors derive from :class:`ZPError`; the CLI maps them to exit code 1.
"""


class ZPError(Exception):
    """Base class for all package errors."""


class DomainError(ZPError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(ZPError, ValueError):
    """A composite input (distribution, sample set, config) violates its invariants."""


class DivergenceError(ZPError, ArithmeticError):
    """The requested quantity is infinite (a pole or a divergent integral).

    ``sign`` is +1 or -1 when the direction of divergence is known, else 0.
    """

    def __init__(self, message: str, sign: int = 0):
        super().__init__(message)
        self.sign = sign


class BracketError(ZPError, ValueError):
    """Root-finding bracket has no sign change."""


class ConvergenceError(ZPError, RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class InsufficientDataError(ZPError, ValueError):
    """Too few points for the requested fit."""


class EmptyInputError(ZPError, ValueError):
    """Input produced no usable tokens or counts."""


class DegenerateError(ZPError, ValueError):
    """Input is valid but degenerate for the operation (zero spread, zero maximum)."""


class FeasibilityError(ZPError, ValueError):
    """Constraint set is empty."""
