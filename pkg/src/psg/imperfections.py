"""
Homodyne inefficiency, modal purity, and the resulting Wigner surfaces.
"""

from __future__ import annotations

import enum
from math import sqrt

import numpy as np

from .conditioning import Detector, condition, trace_out_mode2
from .errors import NoThresholdBelowOne, NotSqueezedInput
from .gaussian_core import GaussianDiagState, beamsplit_with_vacuum
from .quadgauss import QuadGaussSum
from .quasiprob import BISECT_TOL, find_sign_change, wigner_eval

# |W(0)| below this at eta = 1 counts as sitting exactly on the boundary
BOUNDARY_ATOL = 1e-12


class LossConvention(enum.Enum):
    PHYSICAL = "physical"
    RESCALED = "rescaled"


def apply_loss(char: QuadGaussSum, eta: float,
               convention: LossConvention | str = LossConvention.PHYSICAL) -> QuadGaussSum:
    """Detection with efficiency ``eta``, modeled as a vacuum beam splitter.

    PHYSICAL:  C(z) -> C(sqrt(eta) z) exp(-(1 - eta)|z|^2 / 2).
    RESCALED:  C(z) -> C(z) exp(-(1 - eta)|z|^2 / (2 eta)), the physical
    result with phase space stretched back by 1/sqrt(eta), as produced by
    efficiency-corrected tomography.
    """
    if not 0 < eta <= 1:
        raise ValueError(f"efficiency eta must lie in (0, 1], got {eta!r}")
    convention = LossConvention(convention)
    if eta == 1:
        return char
    if convention is LossConvention.PHYSICAL:
        return char.scale_argument(sqrt(eta)).times_gaussian(1 - eta)
    return char.times_gaussian((1 - eta) / eta)


def modal_mixture(sub_char: QuadGaussSum, sq_char: QuadGaussSum, xi: float) -> QuadGaussSum:
    """Convex mixture  xi * sub + (1 - xi) * sq  of two states."""
    if not 0 <= xi <= 1:
        raise ValueError(f"modal purity xi must lie in [0, 1], got {xi!r}")
    if xi == 1:
        return sub_char
    if xi == 0:
        return sq_char
    return xi * sub_char + (1 - xi) * sq_char


def detected_state(state: GaussianDiagState, T: float, detector: Detector | str = Detector.THRESHOLD,
                   eta: float = 1.0, xi: float = 1.0,
                   convention: LossConvention | str = LossConvention.PHYSICAL) -> QuadGaussSum:
    """Characteristic function seen by the homodyne detector.

    Beam splitter, herald, then loss on both the heralded state and the
    dark-count background (the unconditioned mode-1 Gaussian), then mixing
    with weight ``xi``.
    """
    V = beamsplit_with_vacuum(state, T)
    sub = condition(V, detector).char
    if xi == 1:
        return apply_loss(sub, eta, convention)
    sq = trace_out_mode2(V)
    return modal_mixture(apply_loss(sub, eta, convention), apply_loss(sq, eta, convention), xi)


def detected_wigner(state: GaussianDiagState, T: float, detector: Detector | str, eta: float, xi: float,
                     convention: LossConvention | str, x, p):
    """Wigner surface of :func:`detected_state` over ``(x, p)`` (broadcast)."""
    char = detected_state(state, T, detector, eta, xi, convention)
    return wigner_eval(char, x, p)


def _origin_after_loss(state: GaussianDiagState, T: float, eta: float) -> float:
    return detected_wigner(state, T, Detector.THRESHOLD, eta, 1.0, LossConvention.PHYSICAL, 0.0, 0.0)


def efficiency_threshold(state: GaussianDiagState, T: float, tol: float = BISECT_TOL) -> float:
    """Smallest homodyne efficiency for which the threshold-heralded state has W(0) < 0.

    Found by bisection on the exact Wigner value of the lossy state.
    """
    if not (state.A < 1 < state.B):
        raise NotSqueezedInput(f"requires A < 1 < B, got A={state.A!r}, B={state.B!r}")
    w_top = _origin_after_loss(state, T, 1.0)
    if abs(w_top) <= BOUNDARY_ATOL:
        return 1.0
    if w_top > 0:
        raise NoThresholdBelowOne(
            f"W(0) = {w_top:.6g} >= 0 even at eta = 1 for T = {T!r}; transmittivity too low"
        )
    return find_sign_change(lambda e: _origin_after_loss(state, T, e), 1e-9, 1.0, tol)


def efficiency_threshold_formula(state: GaussianDiagState, T: float) -> float:
    """Closed-form efficiency bound, -1/(2T(A-1)) - 1/(2T(B-1)) - R/(4T).

    Reduces to (1 + T)/(4T) for pure inputs; reported next to the bisection
    value, not used to decide anything.
    """
    A, B, R = state.A, state.B, 1 - T
    return -1 / (2 * T * (A - 1)) - 1 / (2 * T * (B - 1)) - R / (4 * T)


def pure_efficiency_threshold(T: float) -> float:
    return (1 + T) / (4 * T)


def approx_loss_origin_bracket(state: GaussianDiagState, T: float, eta: float) -> float:
    """Bracket of an approximate lossy-origin expression,

        1/sqrt(v w) - 1/sqrt((v - R(A-1)/2)(w - R(B-1)/2)),  v = T(A-1)eta + 1, w = T(B-1)eta + 1.

    Kept only as a discrepancy probe: its sign disagrees with the exact
    lossy Wigner value in the regime of interest.
    """
    A, B, R = state.A, state.B, 1 - T
    v = T * (A - 1) * eta + 1
    w = T * (B - 1) * eta + 1
    return 1 / sqrt(v * w) - 1 / sqrt((v - R * (A - 1) / 2) * (w - R * (B - 1) / 2))


def wigner_grid(xmin: float, xmax: float, n: int):
    g = np.linspace(xmin, xmax, n)
    return np.meshgrid(g, g, indexing="ij")
