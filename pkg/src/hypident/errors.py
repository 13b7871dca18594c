"""Exception hierarchy shared by every layer of the package."""


class HypIdentError(Exception):
    """Base class for all errors raised by hypident."""


class PoleError(HypIdentError, ZeroDivisionError):
    """A computation needed to divide by an exactly-zero factor."""

    def __init__(self, description, factor=""):
        self.description = description
        self.factor = factor
        msg = description if not factor else f"{description} (vanishing factor: {factor})"
        super().__init__(msg)


class InvalidBase(HypIdentError, ValueError):
    """The base q is one of the rational roots of unity 0, 1, -1."""


class VariableMismatch(HypIdentError, ValueError):
    pass


class NotInvertible(HypIdentError, ZeroDivisionError):
    pass


class UnsupportedBase(HypIdentError, ValueError):
    """Fractional power of a series whose constant term is not 1."""


class NonzeroConstantTerm(HypIdentError, ValueError):
    pass


class OrderExceeded(HypIdentError, IndexError):
    pass


class NonTerminating(HypIdentError):
    """A scalar series neither terminates nor can be summed numerically."""


class NonConvergent(HypIdentError):
    pass


class OutOfAnnulus(HypIdentError, ValueError):
    pass


class OutOfDomain(HypIdentError, ValueError):
    pass


class UnknownIdentity(HypIdentError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ModeViolation(HypIdentError):
    pass


class ConstraintViolation(HypIdentError, ValueError):
    pass


class ConstraintUnsatisfiable(HypIdentError):
    pass


class DSLError(HypIdentError):
    """A problem with a comparison document, located at ``line``/``column`` (1-based)."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class DSLSyntaxError(DSLError):
    def __init__(self, message, line, column, expected=()):
        self.expected = tuple(sorted(set(expected)))
        if self.expected:
            message = f"{message}; expected {' or '.join(self.expected)}"
        super().__init__(message, line, column)


class UndeclaredSymbol(DSLError):
    def __init__(self, name, line=None, column=None, what="symbol"):
        self.name = name
        super().__init__(f"undeclared {what} {name!r}", line, column)


class ArityError(DSLError):
    def __init__(self, function, expected, got, line=None, column=None):
        self.function = function
        self.expected = expected
        self.got = got
        super().__init__(f"{function} takes {expected}, got {got}", line, column)


class DSLEvaluationError(DSLError):
    """A well-formed document that cannot be evaluated as written."""
