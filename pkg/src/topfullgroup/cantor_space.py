"""Clopen subsets of the Cantor space of a q-adic odometer.

A point of the odometer is a sequence of digits (x_1, x_2, ...) with
0 <= x_k < q_k; the first k digits encode a residue modulo Q(k) = q_1...q_k,
and the odometer map adds one with carry.  Every clopen set is a finite union
of cylinders, so it is stored as a set of residues at a single level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import OdometerMismatch, PreconditionError

__all__ = [
    "Odometer",
    "DYADIC",
    "PointPrefix",
    "ClopenSet",
    "canonicalize",
    "refine",
    "union",
    "intersect",
    "complement",
    "difference",
    "translate",
    "measure",
    "find_small_clopen",
]


def _primitive_root(seq: tuple[int, ...]) -> tuple[int, ...]:
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq[:p] * (n // p) == seq:
            return seq[:p]
    return seq


@dataclass(frozen=True)
class Odometer:
    """Base sequence ``head`` followed by ``tail`` repeated forever.

    The representation is normalized so that two descriptions of the same
    sequence compare equal.
    """

    head: tuple[int, ...] = ()
    tail: tuple[int, ...] = (2,)

    def __post_init__(self):
        head = tuple(int(q) for q in self.head)
        tail = tuple(int(q) for q in self.tail)
        if not tail:
            raise ValueError("tail of the base sequence must be nonempty")
        if any(q < 2 for q in head + tail):
            raise ValueError("every base must be >= 2")
        tail = _primitive_root(tail)
        while head and head[-1] == tail[-1]:
            head = head[:-1]
            tail = tail[-1:] + tail[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail", tail)

    def base(self, k: int) -> int:
        """The base q_k, for k >= 1."""
        if k < 1:
            raise ValueError("bases are indexed from 1")
        if k <= len(self.head):
            return self.head[k - 1]
        return self.tail[(k - 1 - len(self.head)) % len(self.tail)]

    def Q(self, k: int) -> int:
        return _modulus(self, k)

    def bases_after(self, k: int) -> set[int]:
        """Every base q_m with m > k (finite, the sequence is eventually periodic)."""
        rest = set(self.tail)
        rest.update(self.head[k:])
        return rest

    def level_for(self, bound: int, start: int = 0) -> int:
        """Smallest level m >= start with Q(m) > bound."""
        m = start
        while self.Q(m) <= bound:
            m += 1
        return m

    def to_json(self) -> dict:
        return {"head": list(self.head), "tail": list(self.tail)}

    @classmethod
    def from_json(cls, data: dict) -> "Odometer":
        return cls(tuple(data.get("head", ())), tuple(data["tail"]))


@lru_cache(maxsize=None)
def _modulus(odo: Odometer, k: int) -> int:
    if k < 0:
        raise ValueError("level must be >= 0")
    if k == 0:
        return 1
    return _modulus(odo, k - 1) * odo.base(k)


DYADIC = Odometer((), (2,))


@dataclass(frozen=True)
class PointPrefix:
    """The cylinder of points whose first ``level`` digits encode ``residue``."""

    odometer: Odometer
    level: int
    residue: int

    def __post_init__(self):
        if self.level < 0 or not 0 <= self.residue < self.odometer.Q(self.level):
            raise PreconditionError(
                f"residue {self.residue} out of range at level {self.level}"
            )

    def to_json(self) -> dict:
        return {"level": self.level, "residue": self.residue}


@dataclass(frozen=True)
class ClopenSet:
    """A clopen set in canonical form: the coarsest level representing it.

    Build instances with :func:`canonicalize` (or the ``empty``/``full``
    helpers); the constructor trusts its input.
    """

    odometer: Odometer
    level: int
    residues: frozenset = field(default_factory=frozenset)

    @classmethod
    def empty(cls, odometer: Odometer = DYADIC) -> "ClopenSet":
        return cls(odometer, 0, frozenset())

    @classmethod
    def full(cls, odometer: Odometer = DYADIC) -> "ClopenSet":
        return cls(odometer, 0, frozenset({0}))

    @classmethod
    def cylinder(cls, odometer: Odometer, level: int, residue: int) -> "ClopenSet":
        return canonicalize(odometer, level, [residue])

    def is_empty(self) -> bool:
        return not self.residues

    def is_full(self) -> bool:
        return self.level == 0 and bool(self.residues)

    def sorted_residues(self) -> list[int]:
        return sorted(self.residues)

    def at_level(self, m: int) -> frozenset:
        return refine(self, m)[1]

    def contains_prefix(self, p: PointPrefix) -> bool:
        """True if the whole cylinder of ``p`` lies in the set."""
        if p.level >= self.level:
            return p.residue % self.odometer.Q(self.level) in self.residues
        cyl = ClopenSet(self.odometer, p.level, frozenset({p.residue}))
        return refine(cyl, self.level)[1] <= self.residues

    def issubset(self, other: "ClopenSet") -> bool:
        _check_same(self, other)
        m = max(self.level, other.level)
        return refine(self, m)[1] <= refine(other, m)[1]

    def isdisjoint(self, other: "ClopenSet") -> bool:
        return intersect(self, other).is_empty()

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __invert__(self):
        return complement(self)

    def __le__(self, other):
        return self.issubset(other)

    def __repr__(self):
        return f"ClopenSet(level={self.level}, residues={self.sorted_residues()})"

    def to_json(self) -> dict:
        return {"level": self.level, "residues": self.sorted_residues()}

    @classmethod
    def from_json(cls, data: dict, odometer: Odometer = DYADIC) -> "ClopenSet":
        return canonicalize(odometer, int(data["level"]), [int(r) for r in data["residues"]])


def _check_same(*sets) -> Odometer:
    odo = sets[0].odometer
    for s in sets[1:]:
        if s.odometer != odo:
            raise OdometerMismatch("operands live on different odometers")
    return odo


def canonicalize(odometer: Odometer, level: int, residues: Iterable[int]) -> ClopenSet:
    """Coarsest representation of the union of the given level-``level`` cylinders."""
    modulus = odometer.Q(level)
    res = set()
    for r in residues:
        r = int(r)
        if not 0 <= r < modulus:
            raise PreconditionError(f"residue {r} out of range [0, {modulus})")
        res.add(r)
    if not res:
        return ClopenSet(odometer, 0, frozenset())
    k = level
    while k > 0:
        coarse = odometer.Q(k - 1)
        counts: dict[int, int] = {}
        for r in res:
            counts[r % coarse] = counts.get(r % coarse, 0) + 1
        q = odometer.base(k)
        if any(c != q for c in counts.values()):
            break
        res = set(counts)
        k -= 1
    return ClopenSet(odometer, k, frozenset(res))


def refine(s: ClopenSet, m: int) -> tuple[int, frozenset]:
    """The residues of ``s`` at the finer level ``m``."""
    if m < s.level:
        raise PreconditionError(f"cannot refine level {s.level} set to coarser level {m}")
    if m == s.level:
        return m, s.residues
    step = s.odometer.Q(s.level)
    fibre = s.odometer.Q(m) // step
    return m, frozenset(r + j * step for r in s.residues for j in range(fibre))


def _binary(s: ClopenSet, t: ClopenSet, op) -> ClopenSet:
    odo = _check_same(s, t)
    m = max(s.level, t.level)
    return canonicalize(odo, m, op(refine(s, m)[1], refine(t, m)[1]))


def union(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    return _binary(s, t, frozenset.__or__)


def intersect(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    return _binary(s, t, frozenset.__and__)


def difference(s: ClopenSet, t: ClopenSet) -> ClopenSet:
    return _binary(s, t, frozenset.__sub__)


def complement(s: ClopenSet) -> ClopenSet:
    modulus = s.odometer.Q(s.level)
    return canonicalize(s.odometer, s.level, set(range(modulus)) - s.residues)


def union_all(sets: Iterable[ClopenSet], odometer: Odometer = DYADIC) -> ClopenSet:
    sets = list(sets)
    if not sets:
        return ClopenSet.empty(odometer)
    odo = _check_same(*sets)
    m = max(s.level for s in sets)
    res: set[int] = set()
    for s in sets:
        res |= refine(s, m)[1]
    return canonicalize(odo, m, res)


def translate(s: ClopenSet, n: int) -> ClopenSet:
    """Image of ``s`` under the n-th power of the odometer map."""
    modulus = s.odometer.Q(s.level)
    return canonicalize(s.odometer, s.level, ((r + n) % modulus for r in s.residues))


def measure(s: ClopenSet) -> Fraction:
    """Haar measure, the unique invariant probability of the odometer."""
    return Fraction(len(s.residues), s.odometer.Q(s.level))


def find_small_clopen(
    inside: ClopenSet,
    bound: Fraction,
    separation: Iterable[int] = (),
    element=None,
) -> ClopenSet:
    """A single cylinder A inside ``inside`` with measure(A) < bound and
    T^i(A) disjoint from A for every i in ``separation``.

    T is the odometer map, or ``element`` (a GroupElement) when given.
    """
    bound = Fraction(bound)
    separation = [int(i) for i in separation]
    if bound <= 0:
        raise PreconditionError("bound must be positive")
    if inside.is_empty():
        raise PreconditionError("cannot find a subset of the empty set")
    if 0 in separation:
        raise PreconditionError("A always meets T^0(A) = A")
    odo = inside.odometer
    m = inside.level if element is None else max(inside.level, element.level)
    limit = max((abs(i) for i in separation), default=0)
    m = max(m, odo.level_for(limit, m))
    while Fraction(1, odo.Q(m)) >= bound:
        m += 1
    while True:
        modulus = odo.Q(m)
        for r in sorted(refine(inside, m)[1]):
            if element is None:
                ok = all((r + i) % modulus != r for i in separation)
            else:
                ok = all(element.residue_power(r, m, i) != r for i in separation)
            if ok:
                return ClopenSet(odo, m, frozenset({r}))
        if element is None or m > inside.level + 64:
            raise PreconditionError("no separated cylinder found")
        m += 1

