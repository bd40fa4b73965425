"""Walk through the dyadic odometer: cocycle tables, index, induced maps."""

from __future__ import annotations

from topfullgroup.cantor_space import DYADIC, canonicalize, measure
from topfullgroup.full_group import compose, equals, index, inverse, odometer_map, period_spectrum, power, truncate
from topfullgroup.kakutani import induced_map, periodic_quotient

phi = odometer_map()
print("phi as a cocycle table at level 0:", phi.cocycle, "index", index(phi))
print("phi on Z/8:", truncate(phi, 3).images)

g = power(phi, 3)
print("phi^3 cocycle:", g.cocycle, "index", index(g))

A = canonicalize(DYADIC, 2, [0, 1])
phi_A = induced_map(phi, A)
print(f"A = level 2 residues {{0, 1}}, measure {measure(A)}")
print("induced map phi_A:", phi_A.level, phi_A.cocycle, "index", index(phi_A))
q = periodic_quotient(A)
print("phi_A^-1 phi periodic:", period_spectrum(compose(inverse(phi_A), phi)).aperiodic.is_empty())
print("phi_A q_A == phi:", equals(compose(phi_A, q), phi))
