"""
Wigner surfaces under detector inefficiency and dark counts
===========================================================

A heralded state is only as useful as the homodyne detector that reads it
out.  Here loss and imperfect modal purity wash out the negative dip.
"""

import numpy as np

from psg import from_exp2s
from psg.imperfections import detected_wigner, wigner_grid

state = from_exp2s(2.36)
X, P = wigner_grid(-3, 3, 61)

# Three settings: perfect, 75% efficient, and 75% efficient with 30% of the
# heralds coming from uncorrelated modes
for eta, xi in ((1.0, 1.0), (0.75, 1.0), (0.75, 0.7)):
    W = detected_wigner(state, 0.88, "threshold", eta, xi, "physical", X, P)
    k = np.unravel_index(np.argmin(W), W.shape)
    print(f"eta={eta:4.2f} xi={xi:3.1f}: W(0,0) = {W[30, 30]:+.4f}, "
          f"min {W[k]:+.4f} at ({X[k]:+.1f}, {P[k]:+.1f})")

# Tomography that corrects for a known efficiency rescales phase space; the
# sign of W(0,0) is the same, only the depth changes
for conv in ("physical", "rescaled"):
    w0 = detected_wigner(state, 0.88, "threshold", 0.75, 1.0, conv, 0.0, 0.0)
    print(f"{conv:>9}: W(0,0) = {w0:+.4f}")

# A coarse text rendering of the perfect-detector surface
W = detected_wigner(state, 0.88, "threshold", 1.0, 1.0, "physical", X, P)
shades = " .:-=+*#"
for row in W[::4, ::2]:
    print("".join("@" if w < 0 else shades[min(int(w / 0.1), 7)] for w in row))
