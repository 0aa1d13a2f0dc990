"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes (config 2, data 3, numerical 4); the
library raises them directly.
"""


class SupraSyncError(Exception):
    """Base class for all package errors."""


class ConfigError(SupraSyncError, ValueError):
    """Invalid run configuration (bad flags, missing seed, bad grid spec)."""


class DomainError(SupraSyncError, ValueError):
    """Argument outside the documented domain of an operation."""


class StructuralError(SupraSyncError, ValueError):
    """Inconsistent network structure (size mismatch, missing trust, ...)."""


class ParseError(SupraSyncError, ValueError):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class UnknownLayerError(SupraSyncError, KeyError):
    """A requested layer name does not exist in the parsed file."""


class GenerationError(SupraSyncError, RuntimeError):
    """A random-graph construction failed after the documented retry budget."""


class DisconnectedError(SupraSyncError, ValueError):
    """An operation that needs a connected (supra-)graph met a zero lambda_2."""


class BracketError(SupraSyncError, ValueError):
    """Root bracketing failed: no sign change on the supplied interval."""


class ConvergenceError(SupraSyncError, RuntimeError):
    """The eigensolver hit its iteration cap; reports the matrix norm."""

    def __init__(self, message, matrix_norm=None):
        if matrix_norm is not None:
            message = f"{message} (matrix max-norm {matrix_norm:.6g})"
        super().__init__(message)
        self.matrix_norm = matrix_norm
