"""
Cross-checking the closed forms with a truncated Fock simulation
================================================================

Everything in the library is exact Gaussian algebra.  An independent route
builds the same experiment as density matrices in the photon-number basis.
"""

from math import log

import numpy as np

from psg import beamsplit_with_vacuum, from_exp2s, subtract_threshold, wigner_eval
from psg import fock_oracle as fo

s = 0.5 * log(2.36)
T = 0.88

# Squeezed vacuum, beam splitter with vacuum, click on the tapped mode
rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(s, 0.0, 40), T)
rho, prob = fo.condition_mode2(rho2, fo.Outcome.AT_LEAST_ONE)
ana = subtract_threshold(beamsplit_with_vacuum(from_exp2s(2.36), T))

print(f"click probability: Fock {prob:.10f}, closed form {ana.success_prob:.10f}")
for x, p in ((0, 0), (0.5, 0), (0, 0.8), (1.2, -0.4)):
    print(f"W({x:+.1f}, {p:+.1f}): Fock {fo.wigner_parity(rho, x, p):+.10f}, "
          f"closed form {wigner_eval(ana.char, x, p):+.10f}")

# Second moments of the two-mode state against the correlation matrix
V = beamsplit_with_vacuum(from_exp2s(2.36), T)
m = fo.quadrature_moments(rho2)
for key in ("n1", "n2", "c1", "c2", "m1", "m2"):
    print(f"{key}: Fock {m[key]:+.8f}, matrix {getattr(V, key):+.8f}")

# Truncation: the photon-number tail of the heralded state
pops = rho.populations()
print(f"population above n=30: {np.sum(pops[30:]):.2e}")
