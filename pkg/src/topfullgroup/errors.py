"""Exception types shared across the package."""


class FullGroupError(Exception):
    """Base class for errors raised by this package."""


class OdometerMismatch(FullGroupError, ValueError):
    """Operands are defined over different odometers."""


class PreconditionError(FullGroupError, ValueError):
    """An operation was called outside its domain."""


class NotBijective(PreconditionError):
    """A cocycle table whose residue map is not a permutation."""


class MeasureNotSmaller(PreconditionError):
    pass


class MeasureMismatch(PreconditionError):
    pass


class NotPeriodic(PreconditionError):
    pass


class NotMinimalOnSupport(PreconditionError):
    pass


class NotASubset(PreconditionError):
    pass
