"""Pearcey process gap probabilities and contour-deformation checks.

The Pearcey kernel lives on an X-shaped contour plus the imaginary
axis.  The apex offset delta of the X is a free deformation parameter:
determinants must not depend on it.
"""

import numpy as np

from gapdet import contour, pearcey
from gapdet.gap import equivalence_report, pearcey_gap_probability

print("one-point density along the real line (tau = 0):")
sys_ = contour.build_pearcey_system([0.0], m=120)
for x in np.linspace(-3.0, 3.0, 7):
    rho = pearcey.physical_entry(0, 0, float(x), float(x), sys_, [0.0])
    print(f"  rho({x:5.2f}) = {rho.real:.8f}")

print()
print("gap probability on [-1, 1], single time:")
for delta in (0.25, 0.5, 0.75):
    val = pearcey_gap_probability([0.0], [[-1.0, 1.0]], m=120,
                                  delta=delta).value.real
    print(f"  delta = {delta:4.2f}: det = {val:.12f}")

print()
print("two times, both representations:")
rep = equivalence_report("pearcey", [0.0, 1.0],
                         [[-1.0, 1.0], [-1.0, 1.0]], m=100)
print(f"  physical   = {rep['det_physical'].real:.12f}")
print(f"  integrable = {rep['det_iiks'].real:.12f}")
print(f"  |diff|     = {rep['abs_difference']:.2e}")
