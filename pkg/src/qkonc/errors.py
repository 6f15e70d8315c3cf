"""
The exception hierarchy of the project.

Every error raised deliberately by the package derives from `QkoncError` and from the
built-in exception type callers would expect, so `except ValueError` keeps working.
"""

# Classes
# ------------------------------------------------------------


class QkoncError(Exception):
    """Base class of all errors raised by the package."""


class SizeError(QkoncError, ValueError):
    """Raised when a qubit count or vector dimension is out of range or mismatched."""


class QubitIndexError(QkoncError, IndexError):
    """Raised when a qubit index does not address a qubit of the state."""


class ArgumentError(QkoncError, ValueError):
    """Raised when an argument violates the precondition of an operation."""


class DomainError(QkoncError, ValueError):
    """Raised when a value lies outside the mathematical domain of a model."""


class OutputError(QkoncError, OSError):
    """
    Raised when a result file or output directory cannot be written.
    """

    def __init__(self, path: str, reason: str) -> None:
        """
        Initialization.

        Arguments:
            path (str): The path the error is about.
            reason (str): Human readable description of the failure.
        """
        super(OutputError, self).__init__("{0}: {1}".format(path, reason))

        self.path: str = path
        """The path the error is about."""
