"""Exception types raised across the package."""


class QuditSimError(Exception):
    """Base class for structured errors raised by quditsim."""


class DimensionError(QuditSimError):
    """Raised when an operation does not support the requested dimension."""


class ShapeError(QuditSimError):
    """Raised when operands have mismatched qudit counts or dimensions."""


class BlockFormatError(QuditSimError):
    """Raised when a block-form row fails validation."""


class PauliMatchError(QuditSimError):
    """Raised when a dense matrix is not a Pauli operator times a phase."""


class MemoryCapError(QuditSimError):
    """Raised when a dense statevector would exceed the amplitude cap."""


class SupportMismatchError(QuditSimError):
    """Raised when two outcome distributions are over different label sets."""


class ParseError(QuditSimError):
    """Syntax or validation error in SDIM circuit text.

    Attributes:
        line: 1-based line number of the offending token.
        column: 1-based column of the offending token.
        message: human-readable description.
    """

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
