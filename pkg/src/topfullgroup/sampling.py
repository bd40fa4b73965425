"""Seeded random elements and clopen sets for tests and the self-test."""

from __future__ import annotations

import random

from .cantor_space import DYADIC, ClopenSet, Odometer, canonicalize
from .full_group import GroupElement, from_cocycle, period_spectrum

__all__ = ["random_element", "random_clopen", "random_periodic", "random_aperiodic"]


def _lift_choices(d: int, modulus: int, bound: int) -> list[int]:
    """Integers congruent to d with |n| <= bound; the least lift if none is."""
    r = d % modulus
    out = list(range(r - modulus * ((r + bound) // modulus), bound + 1, modulus))
    return out or [r if 2 * r <= modulus else r - modulus]


def _level(rng: random.Random, odometer: Odometer, max_level: int) -> int:
    return rng.randint(0, max_level)


def random_element(
    rng: random.Random,
    odometer: Odometer = DYADIC,
    max_level: int = 6,
    bound: int = 32,
) -> GroupElement:
    """Random residue permutation at a random level, each jump lifted to |n| <= bound."""
    k = _level(rng, odometer, max_level)
    Q = odometer.Q(k)
    images = list(range(Q))
    rng.shuffle(images)
    table = [rng.choice(_lift_choices(images[r] - r, Q, bound)) for r in range(Q)]
    return from_cocycle(k, table, odometer)


def random_clopen(
    rng: random.Random,
    odometer: Odometer = DYADIC,
    max_level: int = 5,
    nonempty: bool = True,
) -> ClopenSet:
    while True:
        k = _level(rng, odometer, max_level)
        Q = odometer.Q(k)
        cells = [r for r in range(Q) if rng.random() < 0.5]
        s = canonicalize(odometer, k, cells)
        if not (nonempty and s.is_empty()):
            return s


def random_periodic(
    rng: random.Random,
    odometer: Odometer = DYADIC,
    max_level: int = 5,
    bound: int = 32,
) -> GroupElement:
    """Random element whose every residue cycle has cocycle sum zero."""
    k = _level(rng, odometer, max_level)
    Q = odometer.Q(k)
    images = list(range(Q))
    rng.shuffle(images)
    table = [0] * Q
    seen = set()
    for start in range(Q):
        if start in seen:
            continue
        cyc = [start]
        while images[cyc[-1]] != start:
            cyc.append(images[cyc[-1]])
        seen.update(cyc)
        total = 0
        for r in cyc[:-1]:
            table[r] = rng.choice(_lift_choices(images[r] - r, Q, bound))
            total += table[r]
        # closing jump brings the cycle sum back to zero
        table[cyc[-1]] = -total
    return from_cocycle(k, table, odometer)


def random_aperiodic(
    rng: random.Random,
    odometer: Odometer = DYADIC,
    max_level: int = 5,
    bound: int = 32,
) -> GroupElement:
    """Random element with a nonempty aperiodic part."""
    while True:
        g = random_element(rng, odometer, max_level, bound)
        if not period_spectrum(g).aperiodic.is_empty():
            return g
