"""Exception hierarchy shared by the library and the CLI.

Every error carries the process exit code the CLI maps it to, so callers
never need a lookup table of their own.
"""


class FreudenthalError(ValueError):
    """Base class for every failure raised by the workbench."""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        """Machine-readable form written by the CLI on failure."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
        }


class ParseError(FreudenthalError):
    """Malformed JSON or an element encoding that cannot be decoded."""

    exit_code = 2


class DomainError(FreudenthalError):
    """Mixed kinds, mixed scalar domains or an operation outside its domain."""

    exit_code = 3


class PreconditionError(FreudenthalError):
    """Input is well formed but violates the operation's precondition."""

    exit_code = 4


class InvariantError(FreudenthalError):
    """An internal consistency check failed."""

    exit_code = 5


class ResourceLimitError(FreudenthalError):
    """An iteration guard or size limit was exceeded."""

    exit_code = 6
