"""Exception hierarchy.

User-facing problems (bad Cartan type, malformed element, x not below w, ...)
derive from :class:`SchubertError`.  :class:`InvariantViolation` is reserved
for internal consistency checks that should never fire; the CLI maps it to a
distinct exit code.
"""


class SchubertError(Exception):
    """Base class for errors caused by invalid input."""


class CartanTypeError(SchubertError, ValueError):
    pass


class RootError(SchubertError, ValueError):
    """A vector is not a root (or not a positive root) of the root system."""


class SimpleIndexError(SchubertError, IndexError):
    pass


class RootSystemMismatch(SchubertError, ValueError):
    pass


class NotReducedError(SchubertError, ValueError):
    pass


class NotBelowError(SchubertError, ValueError):
    """Raised when an operation needs ``x <= w`` in Bruhat order."""

    def __init__(self, x, w):
        super().__init__(f"{x} is not <= {w} in Bruhat order")
        self.x = x
        self.w = w


class EnumerationCapError(SchubertError, RuntimeError):
    pass


class DenominatorZeroError(SchubertError, ZeroDivisionError):
    def __init__(self, root):
        super().__init__(f"denominator root {root} vanishes at the evaluation point")
        self.root = root


class NotInSpanError(SchubertError, ValueError):
    pass


class ParseError(SchubertError, ValueError):
    pass


class DegreeOverflowError(SchubertError, OverflowError):
    pass


class InvariantViolation(AssertionError):
    """An internal identity failed; this indicates a bug, not bad input."""
