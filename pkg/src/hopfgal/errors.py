"""Exception types shared across the package."""


class HopfGalError(Exception):
    """Base class. ``witness`` carries machine-readable evidence when available."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FieldMismatchError(HopfGalError, TypeError):
    pass


class DimensionError(HopfGalError, ValueError):
    pass


class DimensionGuardError(HopfGalError):
    pass


class InputError(HopfGalError, ValueError):
    pass


class AntipodeNotInvertibleError(HopfGalError):
    pass


class SolverScopeExceeded(HopfGalError):
    pass


class PreconditionError(HopfGalError):
    pass


class TransportViolation(HopfGalError):
    pass


class InternalInconsistency(HopfGalError):
    pass


class EnumerationCapError(HopfGalError):
    pass


class ConditionViolation(HopfGalError):
    """A named algebraic condition failed; ``condition`` names it."""

    def __init__(self, condition, message, witness=None):
        super().__init__(f"{condition}: {message}", witness)
        self.condition = condition


class CocycleNotInvertible(HopfGalError):
    pass


class NotGaloisError(HopfGalError):
    pass


class NotMonoActionError(HopfGalError):
    pass


class ZeroDivisorError(HopfGalError):
    pass
