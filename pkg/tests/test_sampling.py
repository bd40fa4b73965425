from __future__ import annotations

import random

import pytest

from topfullgroup.cantor_space import DYADIC, Odometer
from topfullgroup.full_group import is_periodic, period_spectrum
from topfullgroup.sampling import random_aperiodic, random_clopen, random_element, random_periodic


@pytest.mark.parametrize("odo", [DYADIC, Odometer((3,), (2,))])
def test_samplers_respect_contracts(odo):
    rng = random.Random(0)
    for _ in range(50):
        g = random_element(rng, odo, 4, 8)
        # jumps with no lift inside the bound fall back to the least lift
        assert g.level <= 4 and max(map(abs, g.cocycle)) <= max(8, odo.Q(g.level) // 2)
        assert is_periodic(random_periodic(rng, odo, 4))
        assert not period_spectrum(random_aperiodic(rng, odo, 4)).aperiodic.is_empty()
        assert not random_clopen(rng, odo, 4).is_empty()


def test_samplers_are_seeded():
    a = [random_element(random.Random(5)) for _ in range(3)]
    b = [random_element(random.Random(5)) for _ in range(3)]
    assert a == b
