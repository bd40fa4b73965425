"""The topological full group of the odometer.

An element g acts by g(x) = phi^{n(x)}(x) where the cocycle n is constant on
the cylinders of some level k; it is stored as the table of n on Z/Q(k).
Because phi is free the integer table (in canonical, coarsest form) is a
complete invariant of g, so equality is structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cantor_space import DYADIC, ClopenSet, Odometer, PointPrefix, canonicalize, refine
from .errors import NotBijective, NotMinimalOnSupport, OdometerMismatch, PreconditionError
from .permutation import FinitePermutation

__all__ = [
    "GroupElement",
    "PeriodClass",
    "PeriodSpectrum",
    "from_cocycle",
    "from_moves",
    "identity",
    "odometer_map",
    "compose",
    "compose_all",
    "inverse",
    "power",
    "equals",
    "conjugate",
    "commutator",
    "support",
    "index",
    "image_of_clopen",
    "apply_to_prefix",
    "residue_cycles",
    "period_spectrum",
    "is_periodic",
    "order",
    "is_minimal_on_support",
    "truncate",
    "restrict",
    "path_shifts",
]


@dataclass(frozen=True, eq=True)
class GroupElement:
    """Canonical cocycle table; build with :func:`from_cocycle`."""

    odometer: Odometer
    level: int
    cocycle: tuple

    def n(self, r: int) -> int:
        """Cocycle value on the cylinder of residue r at any level >= self.level."""
        return self.cocycle[r % self.odometer.Q(self.level)]

    def residue_map(self, m: int) -> list[int]:
        if m < self.level:
            raise PreconditionError(f"level {m} is coarser than the element's level {self.level}")
        modulus = self.odometer.Q(m)
        k = self.odometer.Q(self.level)
        tab = self.cocycle
        return [(a + tab[a % k]) % modulus for a in range(modulus)]

    def residue_power(self, r: int, m: int, i: int) -> int:
        """Residue at level m of g^i applied to the cylinder r."""
        g = self if i >= 0 else inverse(self)
        modulus = self.odometer.Q(m)
        for _ in range(abs(i)):
            r = (r + g.n(r)) % modulus
        return r

    def is_identity(self) -> bool:
        return self.level == 0 and self.cocycle == (0,)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __pow__(self, e: int) -> "GroupElement":
        return power(self, e)

    def __repr__(self):
        body = list(self.cocycle) if len(self.cocycle) <= 16 else f"<{len(self.cocycle)} entries>"
        return f"GroupElement(level={self.level}, cocycle={body})"

    def to_json(self) -> dict:
        return {"level": self.level, "cocycle": list(self.cocycle)}

    @classmethod
    def from_json(cls, data: dict, odometer: Odometer = DYADIC) -> "GroupElement":
        return from_cocycle(int(data["level"]), [int(v) for v in data["cocycle"]], odometer)


def _canonical(odometer: Odometer, level: int, table: Sequence[int]) -> GroupElement:
    table = list(table)
    k = level
    while k > 0:
        coarse = odometer.Q(k - 1)
        if any(table[a] != table[a % coarse] for a in range(coarse, len(table))):
            break
        table = table[:coarse]
        k -= 1
    return GroupElement(odometer, k, tuple(table))


def from_cocycle(level: int, table: Sequence[int], odometer: Odometer = DYADIC) -> GroupElement:
    """Validate that ``table`` defines a homeomorphism and canonicalize it.

    Injectivity of a -> a + n(a) on Z/Q(level) is enough: the cocycle is
    constant on the cylinders of this level, so the same holds at every finer
    level.
    """
    modulus = odometer.Q(level)
    table = [int(v) for v in table]
    if len(table) != modulus:
        raise PreconditionError(f"table of length {len(table)}, expected Q({level}) = {modulus}")
    seen = bytearray(modulus)
    for a, v in enumerate(table):
        b = (a + v) % modulus
        if seen[b]:
            raise NotBijective(f"residues collide at {b} (mod {modulus})")
        seen[b] = 1
    return _canonical(odometer, level, table)


def from_moves(odometer: Odometer, level: int, moves: dict) -> GroupElement:
    """Element shifting the level-``level`` cylinder r by moves[r], fixing the rest."""
    table = [0] * odometer.Q(level)
    for r, v in moves.items():
        table[r] = v
    return from_cocycle(level, table, odometer)


def identity(odometer: Odometer = DYADIC) -> GroupElement:
    return GroupElement(odometer, 0, (0,))


def odometer_map(odometer: Odometer = DYADIC, n: int = 1) -> GroupElement:
    """phi^n."""
    return GroupElement(odometer, 0, (n,))


def _same(*gs) -> Odometer:
    odo = gs[0].odometer
    for g in gs[1:]:
        if g.odometer != odo:
            raise OdometerMismatch("elements live on different odometers")
    return odo


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """g o h (h applied first); n_{g o h}(x) = n_h(x) + n_g(h(x))."""
    odo = _same(g, h)
    m = max(g.level, h.level)
    modulus = odo.Q(m)
    kg, kh = odo.Q(g.level), odo.Q(h.level)
    tg, th = g.cocycle, h.cocycle
    table = []
    for a in range(modulus):
        nh = th[a % kh]
        table.append(nh + tg[((a + nh) % modulus) % kg])
    return _canonical(odo, m, table)


def compose_all(elements: Iterable[GroupElement], odometer: Odometer | None = None) -> GroupElement:
    """Left-to-right product e_1 o e_2 o ... o e_r."""
    elements = list(elements)
    if not elements:
        return identity(odometer or DYADIC)
    result = elements[-1]
    for e in reversed(elements[:-1]):
        result = compose(e, result)
    return result


def inverse(g: GroupElement) -> GroupElement:
    modulus = g.odometer.Q(g.level)
    table = [0] * modulus
    for a, v in enumerate(g.cocycle):
        table[(a + v) % modulus] = -v
    return GroupElement(g.odometer, g.level, tuple(table))


def power(g: GroupElement, e: int) -> GroupElement:
    base = g if e >= 0 else inverse(g)
    e = abs(e)
    result = identity(g.odometer)
    while e:
        if e & 1:
            result = compose(result, base)
        base = compose(base, base)
        e >>= 1
    return result


def equals(g: GroupElement, h: GroupElement) -> bool:
    _same(g, h)
    return g.level == h.level and g.cocycle == h.cocycle


def conjugate(g: GroupElement, psi: GroupElement) -> GroupElement:
    """psi g psi^-1."""
    return compose(psi, compose(g, inverse(psi)))


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g h g^-1 h^-1."""
    return compose(compose(g, h), compose(inverse(g), inverse(h)))


def support(g: GroupElement) -> ClopenSet:
    return canonicalize(g.odometer, g.level, (a for a, v in enumerate(g.cocycle) if v != 0))


def index(g: GroupElement) -> Fraction:
    """Integral of the cocycle against the invariant measure."""
    return Fraction(sum(g.cocycle), g.odometer.Q(g.level))


def image_of_clopen(g: GroupElement, s: ClopenSet) -> ClopenSet:
    odo = _same(g, s)
    m = max(g.level, s.level)
    modulus = odo.Q(m)
    return canonicalize(odo, m, ((r + g.n(r)) % modulus for r in refine(s, m)[1]))


def apply_to_prefix(g: GroupElement, p: PointPrefix) -> PointPrefix:
    if p.odometer != g.odometer:
        raise OdometerMismatch("prefix and element live on different odometers")
    if p.level < g.level:
        raise PreconditionError(f"prefix level {p.level} is coarser than element level {g.level}")
    modulus = g.odometer.Q(p.level)
    return PointPrefix(g.odometer, p.level, (p.residue + g.n(p.residue)) % modulus)


def residue_cycles(g: GroupElement, m: int | None = None) -> list[tuple[list[int], list[int]]]:
    """Cycles of the residue permutation at level m, each with its cocycle values.

    Cycles start at their smallest residue and are listed in increasing order
    of that residue.
    """
    m = g.level if m is None else m
    images = g.residue_map(m)
    modulus = len(images)
    seen = bytearray(modulus)
    out = []
    for start in range(modulus):
        if seen[start]:
            continue
        cyc, vals = [], []
        a = start
        while not seen[a]:
            seen[a] = 1
            cyc.append(a)
            vals.append(g.n(a))
            a = images[a]
        out.append((cyc, vals))
    return out


@dataclass(frozen=True)
class PeriodClass:
    period: int
    points: ClopenSet
    base: ClopenSet


@dataclass(frozen=True)
class PeriodSpectrum:
    classes: tuple
    aperiodic: ClopenSet

    def is_periodic(self) -> bool:
        return self.aperiodic.is_empty()

    def order(self) -> int:
        return math.lcm(*(c.period for c in self.classes)) if self.classes else 1

    def by_period(self) -> dict:
        return {c.period: c for c in self.classes}


def period_spectrum(g: GroupElement) -> PeriodSpectrum:
    """Points of exact period n and the aperiodic part.

    A residue cycle of length L whose cocycle sum is 0 consists of points of
    period exactly L; a nonzero sum S means g^L = phi^S on those cylinders,
    and phi has no periodic points.
    """
    odo, k = g.odometer, g.level
    points: dict[int, list[int]] = {}
    bases: dict[int, list[int]] = {}
    aperiodic: list[int] = []
    for cyc, vals in residue_cycles(g):
        if sum(vals) == 0:
            points.setdefault(len(cyc), []).extend(cyc)
            bases.setdefault(len(cyc), []).append(cyc[0])
        else:
            aperiodic.extend(cyc)
    classes = tuple(
        PeriodClass(n, canonicalize(odo, k, points[n]), canonicalize(odo, k, bases[n]))
        for n in sorted(points)
    )
    return PeriodSpectrum(classes, canonicalize(odo, k, aperiodic))


def is_periodic(g: GroupElement) -> bool:
    return all(sum(vals) == 0 for _, vals in residue_cycles(g))


def order(g: GroupElement) -> int:
    spec = period_spectrum(g)
    if not spec.is_periodic():
        raise PreconditionError("an element with aperiodic points has infinite order")
    return spec.order()


def holonomy(g: GroupElement) -> int:
    """h = S/Q(k) for the single support cycle of g at its level."""
    cycles = [(c, v) for c, v in residue_cycles(g) if any(v)]
    if not cycles:
        raise NotMinimalOnSupport("empty support")
    if len(cycles) > 1:
        raise NotMinimalOnSupport("support splits into several residue cycles")
    return sum(cycles[0][1]) // g.odometer.Q(g.level)


def is_minimal_on_support(g: GroupElement) -> bool:
    """Decide whether every g-orbit in supp(g) is dense in supp(g).

    At the canonical level k the support must be one residue cycle, with
    cocycle sum S = h Q(k).  Over that cycle the return map is phi^{hQ(k)},
    which acts on each fibre Z/(Q(m)/Q(k)) as translation by h, so the cycle
    stays whole at level m exactly when gcd(h, Q(m)/Q(k)) = 1.
    """
    if not any(g.cocycle):
        raise NotMinimalOnSupport("empty support")
    try:
        h = holonomy(g)
    except NotMinimalOnSupport:
        return False
    return all(math.gcd(h, q) == 1 for q in g.odometer.bases_after(g.level))


def truncate(g: GroupElement, m: int) -> FinitePermutation:
    return FinitePermutation(m, tuple(g.residue_map(m)))


def path_shifts(g: GroupElement, cyc: Sequence[int]) -> list[int]:
    """Prefix sums P_j of the cocycle along a residue cycle, P_0 = 0.

    For a periodic cycle the phi-shift carrying floor j to floor i is
    P_i - P_j whichever way one travels.
    """
    out = [0]
    for a in cyc[:-1]:
        out.append(out[-1] + g.n(a))
    return out


def restrict(g: GroupElement, s: ClopenSet) -> GroupElement:
    """g on the g-invariant set s, identity elsewhere."""
    m = max(g.level, s.level)
    cells = refine(s, m)[1]
    moved = {r: g.n(r) for r in cells}
    modulus = g.odometer.Q(m)
    if {(r + v) % modulus for r, v in moved.items()} != cells:
        raise PreconditionError("restriction to a set that is not invariant")
    return from_moves(g.odometer, m, moved)
