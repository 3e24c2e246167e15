"""Exception types raised across the package."""


class InfinitesimalsError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(InfinitesimalsError, ZeroDivisionError):
    pass


class NotFinite(InfinitesimalsError, ValueError):
    """Standard part requested for an infinitely large value."""


class ZeroArgument(InfinitesimalsError, ValueError):
    pass


class UndefinedAt(InfinitesimalsError, ZeroDivisionError):
    """A sequence operation is undefined at index ``n``."""

    def __init__(self, n: int, message: str = ""):
        self.n = n
        super().__init__(message or f"undefined at n={n}")


class PartialOrderOnly(InfinitesimalsError):
    pass


class OracleMissing(InfinitesimalsError):
    pass


class NotLinear(InfinitesimalsError):
    pass


class TrivialMonoid(InfinitesimalsError):
    pass


class ForeignElement(InfinitesimalsError, TypeError):
    """An element was used with an instance it does not belong to."""


class WrongKind(InfinitesimalsError, ValueError):
    pass


class ExponentBelowOne(InfinitesimalsError, ValueError):
    pass


class NotProper(InfinitesimalsError, ValueError):
    """A requested sub-structure is not a proper subset of its host."""


class TooLarge(InfinitesimalsError, ValueError):
    pass


class ExprSyntaxError(InfinitesimalsError, ValueError):
    def __init__(self, position: int, expected, text: str = ""):
        self.position = position
        self.expected = sorted(set(expected))
        found = repr(text[position]) if position < len(text) else "end of input"
        super().__init__(
            f"at position {position}: expected one of {', '.join(self.expected)}; found {found}"
        )


class SemanticError(InfinitesimalsError, ValueError):
    def __init__(self, message: str, position: int | None = None, index: int | None = None):
        self.position = position
        self.index = index
        super().__init__(message)
