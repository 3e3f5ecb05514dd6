"""Exception types raised across the package."""


class ParseError(ValueError):
    """Malformed coefficient or matrix text. ``position`` is a 0-based offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position})")


class PrecisionError(ArithmeticError):
    """A truncated computation cannot be resolved at the available precision.

    ``required`` is a lower bound on the absolute precision that would be
    needed, when one can be given.
    """

    def __init__(self, message, required=None):
        self.required = required
        if required is not None:
            message = f"{message}; need absolute precision >= {required}"
        super().__init__(message)


class DecompositionError(ValueError):
    """Input rejected by a decomposition routine (singular, wrong group, ...)."""


class FormViolation(DecompositionError):
    """Matrix does not preserve the symplectic form; ``position`` is (i, j)."""

    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at entry {position}")


class PairingError(ArithmeticError):
    """Elementary divisors of a symplectic matrix failed to pair as (d, -d)."""


class DescentError(ArithmeticError):
    """The exact factor produced by descent failed its membership check."""

    def __init__(self, message, position=None, valuation=None):
        self.position = position
        self.valuation = valuation
        super().__init__(message)


class BudgetExceeded(ValueError):
    """Census parameters would enumerate too large a group."""
