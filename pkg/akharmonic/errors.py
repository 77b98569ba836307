# Exceptions raised by the library layers


class HarmonicError(Exception):
    """Base class for every error raised by akharmonic"""


class InputError(HarmonicError):
    """Malformed user input: bad query, unknown catalog id, ambient mismatch"""


class SpecSyntaxError(InputError):
    """Spec file could not be parsed"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")


class PreconditionError(HarmonicError):
    """An operation was called on data that does not meet its precondition"""


class ConsistencyError(HarmonicError):
    """An identity that must hold exactly failed (signals a sign or basis bug)"""
