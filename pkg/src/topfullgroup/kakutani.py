"""First-return maps, Kakutani-Rokhlin partitions and induced maps."""

from __future__ import annotations

from dataclasses import dataclass

from .cantor_space import ClopenSet, canonicalize, refine
from .errors import NotASubset, PreconditionError
from .full_group import (
    GroupElement,
    compose,
    from_cocycle,
    image_of_clopen,
    inverse,
    odometer_map,
    period_spectrum,
    support,
)

__all__ = [
    "Tower",
    "KRPartition",
    "first_return",
    "kr_partition",
    "induced_map",
    "periodic_quotient",
]


@dataclass(frozen=True)
class Tower:
    base: ClopenSet
    height: int

    def floors(self, g: GroupElement) -> list[ClopenSet]:
        out = [self.base]
        for _ in range(self.height - 1):
            out.append(image_of_clopen(g, out[-1]))
        return out

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "height": self.height}


@dataclass(frozen=True)
class KRPartition:
    towers: tuple
    over: ClopenSet

    def floors(self, g: GroupElement) -> list[ClopenSet]:
        return [f for t in self.towers for f in t.floors(g)]

    def to_json(self) -> dict:
        return {"towers": [t.to_json() for t in self.towers]}


def _returns(g: GroupElement, A: ClopenSet) -> tuple[int, dict]:
    """Return steps and accumulated phi-shift for each cylinder of A.

    Computed at level max(g.level, A.level), where both the return time and
    the shift are constant on cylinders.
    """
    if A.is_empty():
        raise PreconditionError("first return to the empty set")
    odo = g.odometer
    m = max(g.level, A.level)
    modulus = odo.Q(m)
    cells = refine(A, m)[1]
    out = {}
    for a in cells:
        steps, shift, r = 0, 0, a
        while True:
            v = g.n(r)
            shift += v
            r = (r + v) % modulus
            steps += 1
            if r in cells:
                break
        out[a] = (steps, shift)
    return m, out


def _check_inside(g: GroupElement, A: ClopenSet) -> None:
    if A.is_empty():
        raise PreconditionError("A must be nonempty")
    if not A.issubset(support(g)):
        raise NotASubset("A is not contained in supp(g)")


def first_return(g: GroupElement, A: ClopenSet) -> dict:
    """Map from the level-m cells of A to their first return time under g."""
    _check_inside(g, A)
    _, ret = _returns(g, A)
    return {a: steps for a, (steps, _) in ret.items()}


def kr_partition(g: GroupElement, A: ClopenSet) -> KRPartition:
    """Towers over A grouped by return time, in increasing height."""
    _check_inside(g, A)
    m, ret = _returns(g, A)
    by_height: dict[int, list[int]] = {}
    for a, (steps, _) in ret.items():
        by_height.setdefault(steps, []).append(a)
    towers = tuple(
        Tower(canonicalize(g.odometer, m, cells), h) for h, cells in sorted(by_height.items())
    )
    return KRPartition(towers, A)


def induced_map(g: GroupElement, A: ClopenSet) -> GroupElement:
    """g_A: first return of g to A on A, identity off A."""
    _check_inside(g, A)
    m, ret = _returns(g, A)
    table = [0] * g.odometer.Q(m)
    for a, (_, shift) in ret.items():
        table[a] = shift
    return from_cocycle(m, table, g.odometer)


def periodic_quotient(A: ClopenSet) -> GroupElement:
    """phi_A^-1 phi, which is periodic."""
    phi = odometer_map(A.odometer)
    q = compose(inverse(induced_map(phi, A)), phi)
    if not period_spectrum(q).is_periodic():
        raise AssertionError("phi_A^-1 phi has aperiodic points")
    return q
