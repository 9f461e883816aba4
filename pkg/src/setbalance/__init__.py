"""Set balancing with simulated QAOA and QWOA, checked against exhaustive search."""
from .exceptions import (ConsistencyError, OptimizerError, SetBalanceError, ShapeError, SizeError,
                         ThresholdError, ValidationError)
from .problem import SetBalancingInstance, build_qubo, cost_diagonal, objective, to_binary_program

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError", "OptimizerError", "SetBalanceError", "SetBalancingInstance", "ShapeError",
    "SizeError", "ThresholdError", "ValidationError", "build_qubo", "cost_diagonal", "objective",
    "to_binary_program",
]
