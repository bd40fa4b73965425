from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfullgroup.cantor_space import DYADIC, ClopenSet, Odometer, PointPrefix, canonicalize, measure
from topfullgroup.errors import NotBijective, NotMinimalOnSupport, OdometerMismatch, PreconditionError
from topfullgroup.full_group import (
    apply_to_prefix,
    commutator,
    compose,
    conjugate,
    equals,
    from_cocycle,
    from_moves,
    identity,
    image_of_clopen,
    index,
    inverse,
    is_minimal_on_support,
    is_periodic,
    odometer_map,
    order,
    period_spectrum,
    power,
    restrict,
    support,
    truncate,
)
from topfullgroup.kakutani import induced_map
from topfullgroup.permutation import FinitePermutation

from conftest import ODOMETERS, brute_map, brute_points, clopens, elements, periodic_elements

D = DYADIC
PHI = odometer_map()
SWAP = from_cocycle(1, [1, -1])
EVENS = canonicalize(D, 1, [0])


def brute_compose(g, h, m):
    G, H = brute_map(g, m), brute_map(h, m)
    return [G[H[a]] for a in range(len(H))]


def brute_single_cycle(g, m) -> bool:
    """Oracle: supp(g) is one cycle of the level-m residue permutation."""
    images = brute_map(g, m)
    moved = brute_points(support(g), m)
    if not moved:
        return False
    start = min(moved)
    seen, a = {start}, images[start]
    while a != start:
        seen.add(a)
        a = images[a]
    return seen == moved


# -- frozen examples -----------------------------------------------------------


def test_from_cocycle_examples():
    assert equals(from_cocycle(0, [1]), PHI)
    with pytest.raises(NotBijective):
        from_cocycle(1, [0, 1])
    assert truncate(SWAP, 1).images == (1, 0)
    with pytest.raises(PreconditionError):
        from_cocycle(2, [0, 0, 0])


def test_canonical_level():
    assert equals(from_cocycle(1, [1, 1]), PHI)
    g = from_cocycle(2, [1, -1, 1, -1])
    assert g.level == 1 and g.cocycle == (1, -1)


def test_compose_inverse_power_examples():
    assert compose(PHI, PHI).cocycle == (2,) and compose(PHI, PHI).level == 0
    assert equals(inverse(SWAP), SWAP)
    q = compose(inverse(induced_map(PHI, EVENS)), PHI)
    assert q.level == 1 and q.cocycle == (1, -1)
    assert equals(power(PHI, -3), odometer_map(D, -3))


def test_compose_order_convention():
    # h applied first: (g o h)(x) = g(h(x))
    g = from_moves(D, 2, {0: 1, 1: -1})
    h = from_moves(D, 2, {1: 1, 2: -1})
    gh = compose(g, h)
    assert truncate(gh, 2).images == tuple(brute_compose(g, h, 2))
    assert truncate(gh, 2) == truncate(g, 2) * truncate(h, 2)


def test_equals_examples():
    assert equals(PHI, from_cocycle(1, [1, 1]))
    assert not equals(PHI, power(PHI, 2))


def test_commutator_examples():
    assert commutator(SWAP, SWAP).is_identity()
    assert commutator(PHI, power(PHI, 2)).is_identity()


def test_support_examples():
    assert support(identity()).is_empty()
    assert support(PHI).is_full()
    assert support(SWAP).is_full()


def test_index_examples():
    for m in (-3, 0, 1, 5):
        assert index(power(PHI, m)) == m
    assert index(SWAP) == 0


def test_image_examples():
    s = canonicalize(D, 2, [0])
    assert image_of_clopen(identity(), s) == s
    assert image_of_clopen(PHI, s) == canonicalize(D, 2, [1])
    assert apply_to_prefix(PHI, PointPrefix(D, 3, 7)) == PointPrefix(D, 3, 0)


def test_period_spectrum_examples():
    spec = period_spectrum(identity())
    assert spec.by_period()[1].points.is_full()
    spec = period_spectrum(SWAP)
    assert [c.period for c in spec.classes] == [2]
    assert spec.classes[0].points.is_full()
    assert spec.classes[0].base == EVENS
    assert period_spectrum(PHI).aperiodic.is_full()
    assert order(SWAP) == 2
    with pytest.raises(PreconditionError):
        order(PHI)


def test_minimality_examples():
    assert is_minimal_on_support(PHI)
    assert not is_minimal_on_support(power(PHI, 2))
    assert not brute_single_cycle(power(PHI, 2), 2)
    assert is_minimal_on_support(induced_map(PHI, canonicalize(D, 3, [1, 4, 6])))
    with pytest.raises(NotMinimalOnSupport):
        is_minimal_on_support(identity())


def test_minimality_on_mixed_base():
    # holonomy 2 is coprime to every later base of (3)(3)(3)...
    odo = Odometer((), (3,))
    assert is_minimal_on_support(odometer_map(odo, 2))
    assert not is_minimal_on_support(odometer_map(odo, 3))


def test_truncate_examples():
    assert truncate(PHI, 2).images == (1, 2, 3, 0)
    assert truncate(identity(), 3).is_identity()
    assert isinstance(truncate(PHI, 2), FinitePermutation)


def test_restrict():
    odd_swap = from_moves(D, 2, {1: 2, 3: -2})
    g = compose(odd_swap, from_moves(D, 2, {0: 2, 2: -2}))
    assert equals(restrict(g, canonicalize(D, 1, [1])), odd_swap)
    assert equals(restrict(PHI, ClopenSet.full()), PHI)
    with pytest.raises(PreconditionError):
        restrict(PHI, EVENS)


def test_odometer_mismatch():
    with pytest.raises(OdometerMismatch):
        compose(PHI, odometer_map(Odometer((), (3,))))


def test_json_round_trip():
    g = from_moves(D, 3, {0: 5, 5: -5})
    assert equals(type(g).from_json(g.to_json()), g)


# -- properties ------------------------------------------------------------------


@given(elements(), elements(), elements())
def test_group_axioms(f, g, h):
    e = identity()
    assert equals(compose(compose(f, g), h), compose(f, compose(g, h)))
    assert compose(f, inverse(f)).is_identity() and compose(inverse(f), f).is_identity()
    assert equals(compose(e, f), f) and equals(compose(f, e), f)


@given(elements(), elements())
def test_compose_matches_oracle(g, h):
    m = max(g.level, h.level) + 1
    assert truncate(compose(g, h), m).images == tuple(brute_compose(g, h, m))


@given(elements(), elements())
def test_index_homomorphism(g, h):
    assert index(compose(g, h)) == index(g) + index(h)
    assert index(commutator(g, h)) == 0
    assert index(conjugate(g, h)) == index(g)


@given(elements(), clopens())
def test_image_preserves_measure(g, s):
    img = image_of_clopen(g, s)
    assert measure(img) == measure(s)
    m = max(g.level, s.level)
    G = brute_map(g, m)
    assert brute_points(img, m) == {G[a] for a in brute_points(s, m)}


@given(elements(), st.integers(-5, 5), st.integers(-5, 5))
def test_power_law(g, a, b):
    assert equals(compose(power(g, a), power(g, b)), power(g, a + b))


@given(periodic_elements())
def test_periodic_order(g):
    assert is_periodic(g)
    assert power(g, order(g)).is_identity()
    spec = period_spectrum(g)
    for c in spec.classes:
        assert restrict(power(g, c.period), c.points).is_identity()


@given(elements())
def test_spectrum_partitions_space(g):
    spec = period_spectrum(g)
    total = sum((measure(c.points) for c in spec.classes), Fraction(0)) + measure(spec.aperiodic)
    assert total == 1


@given(st.sampled_from(ODOMETERS).flatmap(lambda o: elements(o, max_level=3)))
def test_minimality_matches_brute_force(g):
    """Decidable test against single-cycle checks at four extra levels."""
    if support(g).is_empty():
        return
    # every base of these odometers recurs within four levels
    assert is_minimal_on_support(g) == all(brute_single_cycle(g, g.level + j) for j in range(5))


@given(clopens(nonempty=True))
def test_induced_maps_are_minimal(A):
    phi_A = induced_map(PHI, A)
    assert is_minimal_on_support(phi_A) and support(phi_A) == A
    assert all(brute_single_cycle(phi_A, phi_A.level + j) for j in range(5))
