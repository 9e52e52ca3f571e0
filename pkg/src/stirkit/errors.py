"""Exception hierarchy shared by every stirkit module."""


class StirkitError(Exception):
    """Base class for library errors."""


class DomainError(StirkitError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class PoleError(StirkitError, ZeroDivisionError):
    """A factor that must be divided by is zero (or too close to a gamma pole)."""


class CapExceeded(StirkitError):
    """A request exceeds a configured size cap."""


class UnboundVariable(StirkitError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound variable {self.name!r}"


class SupportError(StirkitError):
    """A sum's support is missing, underivable, or violated at a boundary probe."""


class UnknownIdentity(StirkitError, KeyError):
    def __str__(self):
        return f"unknown identity {self.args[0]!r}"


class ParseError(StirkitError, ValueError):
    """Syntax error in the expression language, with a 1-based position."""

    def __init__(self, message, line, column, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        super().__init__(str(self))

    def __str__(self):
        text = f"{self.line}:{self.column}: {self.message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        return text
