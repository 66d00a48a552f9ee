"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Bad user input: unknown type letters, out-of-range indices, malformed configs."""


class NotDivisible(ArithmeticError):
    """Exact polynomial division failed."""


class NotHomogeneous(ValueError):
    """A polynomial expected to be homogeneous has terms of mixed degree."""


class NotInImage(ValueError):
    """A point class failed to decompose over a basis (it lies outside the image)."""


class Char2Forbidden(ConfigurationError):
    """Characteristic 2 requested for a root datum containing a type-C component."""


class InvariantViolation(AssertionError):
    """An internal algebraic guarantee failed; indicates a bug, not bad input."""
