"""Exception hierarchy shared by every module of the package."""


class SetBalanceError(Exception):
    """Base class for all errors raised by this package."""


class SizeError(SetBalanceError, ValueError):
    """Problem or register size exceeds a configured cap."""


class ShapeError(SetBalanceError, ValueError):
    """Array lengths or qubit counts do not line up."""


class ValidationError(SetBalanceError, ValueError):
    """Malformed input: bad instance, non-unitary gate, invalid spec."""


class ConsistencyError(SetBalanceError):
    """An internal invariant failed, usually an oracle mismatch."""


class ThresholdError(SetBalanceError, ValueError):
    """A threshold subspace turned out empty."""


class OptimizerError(SetBalanceError):
    """The classical optimizer aborted.

    The trace collected up to the failure and the offending point are kept
    on the exception so callers can report them.
    """

    def __init__(self, message, point=None, trace=None):
        super().__init__(message)
        self.point = point
        self.trace = list(trace) if trace is not None else []
