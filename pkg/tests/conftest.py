from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from topfullgroup.cantor_space import DYADIC, ClopenSet, Odometer, canonicalize
from topfullgroup.full_group import GroupElement, from_cocycle, is_periodic

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ODOMETERS = [DYADIC, Odometer((), (3,)), Odometer((3,), (2,)), Odometer((), (2, 3))]


def lifts(d: int, modulus: int, bound: int = 32) -> list[int]:
    r = d % modulus
    out = [v for v in range(-bound, bound + 1) if (v - r) % modulus == 0]
    return out or [r if 2 * r <= modulus else r - modulus]


@st.composite
def elements(draw, odometer: Odometer = DYADIC, max_level: int = 4, bound: int = 32):
    k = draw(st.integers(0, max_level))
    Q = odometer.Q(k)
    images = draw(st.permutations(range(Q)))
    table = [draw(st.sampled_from(lifts(images[r] - r, Q, bound))) for r in range(Q)]
    return from_cocycle(k, table, odometer)


@st.composite
def periodic_elements(draw, odometer: Odometer = DYADIC, max_level: int = 4, bound: int = 32):
    k = draw(st.integers(0, max_level))
    Q = odometer.Q(k)
    images = draw(st.permutations(range(Q)))
    table = [0] * Q
    seen: set[int] = set()
    for start in range(Q):
        if start in seen:
            continue
        cyc = [start]
        while images[cyc[-1]] != start:
            cyc.append(images[cyc[-1]])
        seen.update(cyc)
        total = 0
        for r in cyc[:-1]:
            table[r] = draw(st.sampled_from(lifts(images[r] - r, Q, bound)))
            total += table[r]
        table[cyc[-1]] = -total
    g = from_cocycle(k, table, odometer)
    assert is_periodic(g)
    return g


@st.composite
def clopens(draw, odometer: Odometer = DYADIC, max_level: int = 4, nonempty: bool = False):
    k = draw(st.integers(0, max_level))
    Q = odometer.Q(k)
    cells = draw(st.sets(st.integers(0, Q - 1), min_size=1 if nonempty else 0))
    return canonicalize(odometer, k, cells)


def brute_points(s: ClopenSet, m: int) -> set[int]:
    """Oracle: residues mod Q(m) lying in s, by direct reduction."""
    q = s.odometer.Q(s.level)
    return {a for a in range(s.odometer.Q(m)) if a % q in s.residues}


def brute_map(g: GroupElement, m: int) -> list[int]:
    """Oracle: the level-m residue permutation, from the raw table."""
    Q = g.odometer.Q(m)
    qk = g.odometer.Q(g.level)
    return [(a + g.cocycle[a % qk]) % Q for a in range(Q)]


def brute_measure(s: ClopenSet, m: int) -> Fraction:
    return Fraction(len(brute_points(s, m)), s.odometer.Q(m))
