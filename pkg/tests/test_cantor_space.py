from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topfullgroup.cantor_space import (
    DYADIC,
    ClopenSet,
    Odometer,
    PointPrefix,
    canonicalize,
    complement,
    difference,
    find_small_clopen,
    intersect,
    measure,
    refine,
    translate,
    union,
)
from topfullgroup.errors import OdometerMismatch, PreconditionError

from conftest import ODOMETERS, brute_measure, brute_points, clopens

D = DYADIC
FULL = ClopenSet.full()
EVENS = canonicalize(D, 1, [0])
ODDS = canonicalize(D, 1, [1])


def cs(level, residues, odo=D):
    return canonicalize(odo, level, residues)


# -- odometer ----------------------------------------------------------------


def test_odometer_moduli():
    odo = Odometer((3,), (2, 5))
    assert [odo.Q(k) for k in range(5)] == [1, 3, 6, 30, 60]
    assert odo.bases_after(0) == {2, 3, 5}
    assert odo.bases_after(1) == {2, 5}


def test_odometer_normal_form():
    assert Odometer((), (2, 2)) == D
    assert Odometer((2,), (2,)) == D
    assert Odometer((5, 3), (2, 3)) == Odometer((5,), (3, 2))


def test_odometer_rejects_bad_bases():
    with pytest.raises(ValueError):
        Odometer((), ())
    with pytest.raises(ValueError):
        Odometer((1,), (2,))


def test_level_for():
    assert D.level_for(4) == 3
    assert D.level_for(324) == 9
    assert D.level_for(0, 2) == 2


def test_odometer_json_round_trip():
    odo = Odometer((3,), (2, 5))
    assert Odometer.from_json(odo.to_json()) == odo


# -- frozen examples -----------------------------------------------------------


def test_canonicalize_examples():
    assert cs(2, {0, 1, 2, 3}) == FULL
    assert cs(1, {0}) == ClopenSet(D, 1, frozenset({0}))
    assert cs(3, {0, 4, 1, 5, 2, 6, 3, 7}) == FULL
    assert cs(3, {0, 4}) == ClopenSet(D, 2, frozenset({0}))


def test_canonicalize_rejects_out_of_range():
    with pytest.raises(PreconditionError):
        cs(2, {4})


def test_refine_examples():
    assert refine(EVENS, 2) == (2, frozenset({0, 2}))
    assert refine(FULL, 2) == (2, frozenset({0, 1, 2, 3}))
    assert refine(cs(2, {3}), 3) == (3, frozenset({3, 7}))
    with pytest.raises(PreconditionError):
        refine(cs(2, {3}), 1)


def test_boolean_examples():
    assert union(EVENS, ODDS) == FULL
    assert intersect(EVENS, cs(2, {1, 3})).is_empty()
    assert difference(FULL, cs(2, {0})) == cs(2, {1, 2, 3})
    assert complement(EVENS) == ODDS
    assert (EVENS | ODDS) == FULL and (EVENS & ODDS).is_empty() and ~EVENS == ODDS


def test_translate_examples():
    assert translate(cs(2, {1}), 1) == cs(2, {2})
    assert translate(cs(2, {3}), 2) == cs(2, {1})
    s = cs(3, {1, 6})
    assert translate(s, 0) == s


def test_measure_examples():
    assert measure(FULL) == 1
    assert measure(cs(2, {3})) == Fraction(1, 4)
    assert measure(cs(3, {0, 4})) == Fraction(1, 4)
    assert measure(ClopenSet.empty()) == 0


def test_find_small_clopen_example():
    a = find_small_clopen(FULL, Fraction(1, 4), [1, 2, 3])
    assert a == cs(3, {0})


def test_find_small_clopen_is_strict():
    # measure must be strictly below the bound
    a = find_small_clopen(EVENS, Fraction(1, 2))
    assert measure(a) < Fraction(1, 2) and a.issubset(EVENS)
    b = find_small_clopen(FULL, Fraction(1, 1024))
    assert b.level == 11 and len(b.residues) == 1


def test_find_small_clopen_errors():
    with pytest.raises(PreconditionError):
        find_small_clopen(ClopenSet.empty(), Fraction(1, 2))
    with pytest.raises(PreconditionError):
        find_small_clopen(FULL, Fraction(1, 2), [0])
    with pytest.raises(PreconditionError):
        find_small_clopen(FULL, 0)


def test_contains_prefix():
    assert EVENS.contains_prefix(PointPrefix(D, 3, 4))
    assert not EVENS.contains_prefix(PointPrefix(D, 3, 5))
    assert cs(2, {0, 2}).contains_prefix(PointPrefix(D, 1, 0))
    assert not cs(2, {0}).contains_prefix(PointPrefix(D, 1, 0))


def test_point_prefix_range():
    with pytest.raises(PreconditionError):
        PointPrefix(D, 2, 4)


def test_mixed_odometers_rejected():
    with pytest.raises(OdometerMismatch):
        union(FULL, ClopenSet.full(Odometer((), (3,))))


def test_json_round_trip():
    s = cs(4, {1, 5, 9})
    assert ClopenSet.from_json(s.to_json()) == s


# -- properties against the brute-force oracle ------------------------------------


@given(st.sampled_from(ODOMETERS).flatmap(lambda o: st.tuples(clopens(o), clopens(o))))
def test_boolean_ops_match_oracle(pair):
    s, t = pair
    odo = s.odometer
    m = max(s.level, t.level) + 1
    S, T = brute_points(s, m), brute_points(t, m)
    assert brute_points(union(s, t), m) == S | T
    assert brute_points(intersect(s, t), m) == S & T
    assert brute_points(difference(s, t), m) == S - T
    assert brute_points(complement(s), m) == set(range(odo.Q(m))) - S
    assert s.issubset(t) == (S <= T)
    assert s.isdisjoint(t) == (not S & T)


@given(st.sampled_from(ODOMETERS).flatmap(clopens), st.integers(-50, 50))
def test_translate_matches_oracle(s, n):
    m = s.level + 2
    Q = s.odometer.Q(m)
    assert brute_points(translate(s, n), m) == {(a + n) % Q for a in brute_points(s, m)}
    assert measure(translate(s, n)) == measure(s)


@given(st.sampled_from(ODOMETERS).flatmap(clopens))
def test_canonical_form_is_coarsest_and_stable(s):
    assert measure(s) == brute_measure(s, s.level + 2)
    m, res = refine(s, s.level + 2)
    assert canonicalize(s.odometer, m, res) == s
    if s.level > 0:
        # not expressible one level up
        coarse = s.odometer.Q(s.level - 1)
        buckets = {}
        for r in s.residues:
            buckets.setdefault(r % coarse, set()).add(r)
        assert any(len(v) != s.odometer.base(s.level) for v in buckets.values())


@given(clopens(nonempty=True), st.sampled_from([Fraction(1, 2), Fraction(1, 8), Fraction(1, 33)]))
def test_find_small_clopen_properties(inside, bound):
    a = find_small_clopen(inside, bound, [1, 2, 3])
    assert a.issubset(inside) and measure(a) < bound
    for i in (1, 2, 3):
        assert translate(a, i).isdisjoint(a)
