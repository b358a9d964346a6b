"""Data models, manifests and the exception hierarchy"""

from .exceptions import (
    ContractViolationError,
    DataError,
    DegenerateDataError,
    DegenerateLaplacianError,
    DimensionError,
    InternalInvariantError,
    InvalidInputError,
    InvalidKernelError,
    InvalidParameterError,
    MVMLError,
    NumericalError,
    ParseError,
    SeparationInfeasibleError,
    StageError,
    SynchronizationError,
    UndefinedMetricError,
    UnsupportedSizeError,
    UsageError,
)
