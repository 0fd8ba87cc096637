"""Exception hierarchy.

Every error raised by the library derives from :class:`RevmotifError` and
carries the process exit code the CLI should use for it.
"""


class RevmotifError(Exception):
    """Base class for library errors."""

    exit_code = 2


class DataError(RevmotifError, ValueError):
    """Input data violates a precondition."""

    exit_code = 2


class InsufficientDataError(DataError):
    """Too little data for the requested computation."""


class FixtureParseError(DataError):
    """A fixture line could not be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class ApiParseError(DataError):
    """The wiki API answered with something we cannot interpret."""

    def __init__(self, field: str, message: str = "missing or malformed"):
        self.field = field
        super().__init__(f"malformed API response, field {field!r}: {message}")


class ArticleNotFoundError(DataError):
    """The requested page does not exist."""

    def __init__(self, title: str):
        self.title = title
        super().__init__(f"article not found: {title!r}")


class TransportError(RevmotifError):
    """Network failure after all retries were used up."""

    exit_code = 2
    retryable = True


class InfeasibleParametersError(DataError):
    """Requested graph cannot exist, e.g. more edges than ordered pairs."""


class NumericalError(RevmotifError, ArithmeticError):
    """A numerical routine failed or hit a degenerate case."""

    exit_code = 3


class DegenerateDivisionError(NumericalError, ZeroDivisionError):
    """Zero denominator in the relative-abundance ratio."""
