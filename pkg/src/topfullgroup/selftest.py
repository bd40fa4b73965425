"""Seeded invariant suites run by ``topfullgroup selftest``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cantor_space import DYADIC, Odometer, measure, translate
from .certificates import dumps, loads, verify
from .constructions import (
    glasner_weiss_eq,
    glasner_weiss_sub,
    periodic_commutator,
    periodic_two_involutions,
    small_generators,
    tower_lemma,
)
from .full_group import (
    compose,
    equals,
    identity,
    index,
    inverse,
    is_periodic,
    odometer_map,
    truncate,
)
from .errors import PreconditionError
from .kakutani import induced_map, periodic_quotient
from .sampling import random_clopen, random_element, random_periodic


@dataclass(frozen=True)
class Limits:
    odometer: Odometer = DYADIC
    max_level: int = 5
    max_cocycle: int = 32


def _group_axioms(rng, lim):
    f, g, h = (random_element(rng, lim.odometer, lim.max_level, lim.max_cocycle) for _ in range(3))
    e = identity(lim.odometer)
    return (
        equals(compose(compose(f, g), h), compose(f, compose(g, h)))
        and compose(f, inverse(f)).is_identity()
        and equals(compose(f, e), f)
        and equals(compose(e, f), f)
    )


def _index_hom(rng, lim):
    g, h = (random_element(rng, lim.odometer, lim.max_level, lim.max_cocycle) for _ in range(2))
    return index(compose(g, h)) == index(g) + index(h)


def _induced_map(rng, lim):
    A = random_clopen(rng, lim.odometer, lim.max_level)
    phi = odometer_map(lim.odometer)
    phi_A = induced_map(phi, A)
    return index(phi_A) == 1 and equals(compose(phi_A, periodic_quotient(A)), phi)


def _glasner_weiss(rng, lim):
    while True:
        A = random_clopen(rng, lim.odometer, lim.max_level)
        B = random_clopen(rng, lim.odometer, lim.max_level)
        if measure(B) != measure(A):
            break
    if measure(B) > measure(A):
        A, B = B, A
    moved = translate(B, rng.randint(1, 64))
    return verify(glasner_weiss_sub(B, A)).ok and verify(glasner_weiss_eq(B, moved)).ok


def _small_generators(rng, lim):
    g = random_element(rng, lim.odometer, min(lim.max_level, 3), lim.max_cocycle)
    delta = Fraction(1, rng.choice([4, 8, 16]))
    return verify(small_generators(g, delta)).ok


def _two_involutions(rng, lim):
    g = random_periodic(rng, lim.odometer, lim.max_level, lim.max_cocycle)
    return is_periodic(g) and verify(periodic_two_involutions(g)).ok


def _commutator(rng, lim):
    g = random_periodic(rng, lim.odometer, min(lim.max_level, 4), lim.max_cocycle)
    return verify(periodic_commutator(g)).ok


def _truncation(rng, lim):
    g, h = (random_element(rng, lim.odometer, lim.max_level, lim.max_cocycle) for _ in range(2))
    m = max(g.level, h.level) + rng.randint(0, 2)
    return truncate(compose(g, h), m) == truncate(g, m) * truncate(h, m) and truncate(
        inverse(g), m
    ) == truncate(g, m).inverse()


def _tower(rng, lim):
    return verify(tower_lemma(rng.randint(2, 18), lim.odometer)).ok


def _round_trip(rng, lim):
    g = random_periodic(rng, lim.odometer, lim.max_level, lim.max_cocycle)
    cert = periodic_two_involutions(g)
    text = dumps(cert)
    return dumps(loads(text)) == text and verify(loads(text)).ok


SUITES: dict[str, Callable[[random.Random, Limits], bool]] = {
    "group-axioms": _group_axioms,
    "index-homomorphism": _index_hom,
    "induced-map": _induced_map,
    "glasner-weiss": _glasner_weiss,
    "small-generators": _small_generators,
    "two-involutions": _two_involutions,
    "periodic-commutator": _commutator,
    "truncation": _truncation,
    "tower-lemma": _tower,
    "certificate-round-trip": _round_trip,
}


def run(cases: int, seed: int = 0, limits: Limits | None = None) -> tuple[list[str], bool]:
    """Report lines and overall success; identical inputs give identical lines."""
    lim = limits or Limits()
    lines, ok = [], True
    for name, suite in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        passed = skipped = 0
        for _ in range(cases):
            try:
                passed += bool(suite(rng, lim))
            except PreconditionError:  # e.g. no even base to split towers with
                skipped += 1
            except Exception:  # any other crash counts against the suite
                pass
        good = passed + skipped == cases
        ok &= good
        extra = f" ({skipped} skipped)" if skipped else ""
        lines.append(f"{name}: {passed}/{cases}{extra} {'ok' if good else 'FAIL'}")
    lines.append(f"selftest: {'ok' if ok else 'FAIL'}")
    return lines, ok
