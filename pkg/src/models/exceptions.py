"""
Exception hierarchy for the multi-view summarization system.

Every error carries the CLI exit code of its class:
1 = invalid input or arguments, 2 = I/O or parse failure, 3 = numerical failure.
"""

from typing import Optional


class MVMLError(Exception):
    """Base class for all expected errors raised by this package"""

    exit_code = 3


# Exit code 1

class InvalidInputError(MVMLError, ValueError):
    """Input violates a documented precondition"""

    exit_code = 1


class DimensionError(InvalidInputError):
    """Shapes or lengths of related inputs disagree"""


class InvalidParameterError(InvalidInputError):
    """A scalar parameter is outside its allowed range"""


class ContractViolationError(InvalidInputError):
    """A caller broke an operation contract (e.g. passed a non-symmetric matrix)"""


class UndefinedMetricError(InvalidInputError):
    """An evaluation metric is undefined for the given inputs"""


class UsageError(InvalidInputError):
    """Command-line arguments could not be parsed"""


# Exit code 2

class DataError(MVMLError):
    """Input files are missing, unreadable or inconsistent"""

    exit_code = 2


class ParseError(DataError):
    """A file could not be parsed; carries the location when known"""

    def __init__(self, message: str, path: Optional[str] = None,
                 row: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.row = row
        self.column = column
        location = []
        if path is not None:
            location.append(str(path))
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class SynchronizationError(DataError):
    """Views do not share the same frame count"""


# Exit code 3

class NumericalError(MVMLError):
    """A numerical stage could not produce a valid result"""

    exit_code = 3


class DegenerateDataError(NumericalError):
    """Data carry no usable geometry (e.g. all points identical)"""


class InvalidKernelError(NumericalError):
    """Kernel has a non-positive degree"""


class DegenerateLaplacianError(NumericalError):
    """Laplacian trace is numerically zero"""


class UnsupportedSizeError(NumericalError):
    """Problem size exceeds what the exact solver enumerates"""


class InternalInvariantError(NumericalError):
    """An internal invariant failed; indicates a bug rather than bad input"""


class SeparationInfeasibleError(NumericalError):
    """Cluster centres could not be placed at the requested separation"""


class StageError(MVMLError):
    """Wraps an error raised inside a named pipeline stage"""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"[{stage}] {cause}")
