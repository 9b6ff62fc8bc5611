"""
Photon subtraction cannot create nonclassicality from nothing
=============================================================

Subtracting a photon from a classical Gaussian field leaves a state with a
positive P function.  A squeezed input, in contrast, yields a state with no
regular P function, and often a negative Wigner function too.
"""

import numpy as np

from psg import GaussianDiagState, beamsplit_with_vacuum, classify, subtract_single_photon

rng = np.random.default_rng(0)

print("thermal-like inputs (A, B > 1):")
for _ in range(4):
    st = GaussianDiagState(rng.uniform(1.05, 3), rng.uniform(1.05, 3))
    v = classify(subtract_single_photon(beamsplit_with_vacuum(st, 0.7)).char)
    print(f"  A={st.A:.2f} B={st.B:.2f} -> {v.verdict.value}")

print("squeezed inputs (A < 1):")
for A in (0.9, 0.6, 0.3):
    for purity in (1.0, 2.0):
        st = GaussianDiagState(A, purity / A)
        v = classify(subtract_single_photon(beamsplit_with_vacuum(st, 0.7)).char)
        print(f"  A={A:.2f} B={st.B:.2f} -> {v.verdict.value} (Wigner negative: {v.wigner_negative})")
