"""Exact computations in the topological full group of a q-adic odometer."""

from .cantor_space import DYADIC, ClopenSet, Odometer, PointPrefix
from .certificates import Certificate, dumps, loads, verify
from .errors import (
    FullGroupError,
    MeasureMismatch,
    MeasureNotSmaller,
    NotASubset,
    NotBijective,
    NotMinimalOnSupport,
    NotPeriodic,
    OdometerMismatch,
    PreconditionError,
)
from .full_group import GroupElement, from_cocycle, identity, odometer_map
from .permutation import FinitePermutation

__version__ = "0.1.0"
