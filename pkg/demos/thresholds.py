"""
When does subtraction produce a negative Wigner function?
=========================================================

Closed-form boundaries in the tap transmittivity and the homodyne
efficiency, checked against bisection on the exact Wigner value.
"""

import numpy as np

from psg import GaussianDiagState, from_exp2s
from psg.imperfections import efficiency_threshold, pure_efficiency_threshold
from psg.quasiprob import (
    negativity_T_threshold_any,
    negativity_T_threshold_single,
    origin_sign_boundary_single,
    origin_sign_boundary_threshold,
)

# A pure input goes negative for any T with an ideal detector; a click
# detector needs T > 1/3 whatever the squeezing
for e in (1.5, 2.36, 5.0):
    st = from_exp2s(e)
    print(f"exp(2s)={e}: single {negativity_T_threshold_single(st):.4f}, "
          f"click {negativity_T_threshold_any(st):.6f} (bisection {origin_sign_boundary_threshold(st):.6f})")

# Thermal noise on the input pushes the ideal-detector boundary above zero
mixed = GaussianDiagState(0.5, 2.5)
print(f"mixed input: T_min = {negativity_T_threshold_single(mixed):.6f}, "
      f"bisection {origin_sign_boundary_single(mixed):.6f}")

# Minimum homodyne efficiency for W(0,0) < 0, click detector, pure input
print(f"{'T':>5} {'eta_min':>9} {'(1+T)/4T':>9}")
for T in np.linspace(0.4, 0.99, 7):
    print(f"{T:5.2f} {efficiency_threshold(from_exp2s(2.36), T):9.6f} {pure_efficiency_threshold(T):9.6f}")
