"""Exception hierarchy.  Each class carries the CLI exit code it maps to."""


class AffineModError(Exception):
    exit_code = 1


class ParseError(AffineModError):
    """Lexical, syntax or name-resolution error in polynomial or script text."""

    exit_code = 2

    def __init__(self, message, line=None, column=None, expected=None):
        self.line = line
        self.column = column
        self.expected = sorted(expected) if expected else []
        where = f"{line}:{column}: " if line is not None else ""
        extra = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{extra}")
        self.message = message


class PreconditionError(AffineModError):
    exit_code = 3


class RingMismatchError(PreconditionError):
    pass


class ResourceCapError(AffineModError):
    exit_code = 4


class InvariantError(AffineModError):
    """An internal consistency check failed; the computed result is untrusted."""

    exit_code = 5
