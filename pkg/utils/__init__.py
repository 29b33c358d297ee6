from .errors import (
    BranchSelectionError,
    ConditioningError,
    ConfigurationError,
    DimensionError,
    NonHermitianError,
    NumericalError,
    SimulationError
)

__all__ = [
    'SimulationError',
    'DimensionError',
    'NonHermitianError',
    'ConfigurationError',
    'NumericalError',
    'ConditioningError',
    'BranchSelectionError'
]
