"""Build and verify a few certificates: three involutions, a commutator expansion, a tower."""

from __future__ import annotations

from fractions import Fraction

from topfullgroup.certificates import verify
from topfullgroup.constructions import commutator_expansion, small_generators, tower_lemma
from topfullgroup.finite_approx import finite_three_involutions
from topfullgroup.cantor_space import measure
from topfullgroup.full_group import index, odometer_map, support

phi = odometer_map()

for m in (6, 8, 10):
    c = finite_three_involutions(m)
    print(f"Z/{2**m}: shift = i_1 i_2 i_3, route {c.side_data['route']}, checks ok {verify(c).ok}")

for n in (1, 3, 5):
    c = commutator_expansion(phi, n)
    res = c.factor("residual")
    print(f"{n} expansion steps: residual support measure {measure(support(res))}, index {index(res)}")

c = small_generators(phi, Fraction(1, 16))
print(f"small generators at delta 1/16: {len(c.factor_names())} factors, checks ok {verify(c).ok}")

c = tower_lemma(18)
print("tower for n = 18:", c.side_data["A"], "checks ok", verify(c).ok)
