"""
Cat-state fidelity of a photon-subtracted squeezed vacuum
=========================================================

Tap a little light off a squeezed vacuum, herald on a detector click, and
ask how close the remaining field is to an odd coherent-state superposition.
"""

import numpy as np

from psg import beamsplit_with_vacuum, from_exp2s, optimize_alpha, subtract_single_photon, subtract_threshold

# A pure squeezed vacuum with exp(2s) = 2.36, about 3.7 dB of squeezing
state = from_exp2s(2.36)
print(f"input widths A = {state.A:.4f}, B = {state.B:.4f}")

# For each tap transmittivity, find the cat amplitude that matches best.
# An ideal one-photon detector and a click/no-click detector are compared.
print(f"{'T':>6} {'alpha* ideal':>13} {'F ideal':>9} {'alpha* click':>13} {'F click':>9}")
for T in np.linspace(0.8, 0.999, 9):
    V = beamsplit_with_vacuum(state, T)
    a1, f1 = optimize_alpha(subtract_single_photon(V).char)
    a2, f2 = optimize_alpha(subtract_threshold(V).char)
    print(f"{T:6.3f} {a1:13.4f} {f1:9.5f} {a2:13.4f} {f2:9.5f}")

# The ideal detector stays above 99% across the range, while the click
# detector pays for multi-photon events at low T and falls below 90% there.
