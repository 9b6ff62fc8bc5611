"""
Wigner and P quasiprobabilities, and nonclassicality predicates.

Wigner convention:  W(x, p) = (1/pi^2) int C(z) exp(2i (p z_r - x z_i)) d^2z,
so the vacuum has W(0, 0) = 2/pi and the one-photon Fock state -2/pi.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.optimize import bisect

from .conditioning import subtract_single_photon, subtract_threshold
from .errors import NotSqueezedInput
from .gaussian_core import EPS_TOL, GaussianDiagState, TwoModeCorrelation, beamsplit_with_vacuum
from .quadgauss import QuadGaussSum, integrate_full_plane

__all__ = [
    "ClassicalityVerdict",
    "Verdict",
    "classify",
    "find_sign_change",
    "integrate_full_plane",
    "negativity_T_threshold_any",
    "negativity_T_threshold_single",
    "origin_sign_boundary_single",
    "origin_sign_boundary_threshold",
    "p_char",
    "p_function",
    "purity",
    "wigner_eval",
    "wigner_origin_single",
    "wigner_origin_threshold",
]

BISECT_TOL = 1e-9
# imaginary residue tolerated before a Wigner value is declared non-real
IMAG_TOL = 1e-10


def wigner_eval(char: QuadGaussSum, x, p):
    """Wigner function at phase-space point(s) ``(x, p)``; broadcasts."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    val = np.asarray(char.integrate(2 * p, -2 * x)) / pi**2
    scale = max(1.0, float(np.max(np.abs(val.real), initial=0.0)))
    if np.max(np.abs(val.imag), initial=0.0) > IMAG_TOL * scale:
        raise ValueError("characteristic function is not Hermitian: Wigner value has an imaginary part")
    out = val.real
    return float(out) if out.ndim == 0 else out


def wigner_origin_single(V: TwoModeCorrelation) -> float:
    return wigner_eval(subtract_single_photon(V).char, 0.0, 0.0)


def wigner_origin_threshold(V: TwoModeCorrelation) -> float:
    return wigner_eval(subtract_threshold(V).char, 0.0, 0.0)


def _require_squeezed(state: GaussianDiagState):
    if not (state.A < 1 and state.B > 1):
        raise NotSqueezedInput(
            f"requires A < 1 < B (input squeezed along the first quadrature), got A={state.A!r}, B={state.B!r}"
        )


def negativity_T_threshold_single(state: GaussianDiagState) -> float:
    """Transmittivity above which the one-photon-heralded state has W(0) < 0."""
    _require_squeezed(state)
    if state.is_pure:
        # AB = 1 up to rounding: the numerator vanishes identically
        return 0.0
    A, B = state.A, state.B
    return (A * B - 1) / ((1 - A) * (B - 1))


def negativity_T_threshold_any(state: GaussianDiagState) -> float:
    """Transmittivity above which the threshold-heralded state has W(0) < 0."""
    _require_squeezed(state)
    A, B = state.A, state.B
    return (4 - (A + 1) * (B + 1)) / (3 * (A - 1) * (B - 1))


def find_sign_change(f, lo: float, hi: float, tol: float = BISECT_TOL) -> float:
    """Bisection for a sign change of ``f`` on ``[lo, hi]``."""
    return bisect(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=200)


def p_char(char: QuadGaussSum) -> QuadGaussSum:
    """Characteristic function of the Glauber P representation."""
    return char.times_gaussian(-1.0, -1.0)


def p_function(char: QuadGaussSum, x, p):
    """P function on a grid, same Fourier convention as :func:`wigner_eval`.

    Raises :class:`DivergentIntegral` when the P characteristic function is
    not integrable.
    """
    return wigner_eval(p_char(char), x, p)


class Verdict(enum.Enum):
    CLASSICAL = "Classical"
    NONCLASSICAL_NO_P = "NonclassicalNoP"
    WIGNER_NEGATIVE = "WignerNegative"


@dataclass(frozen=True)
class ClassicalityVerdict:
    p_exists: bool
    p_positive: bool | None
    wigner_negative: bool
    verdict: Verdict


P_GRID_HALFWIDTH = 4.0
P_GRID_POINTS = 201
P_NEG_THRESHOLD = -1e-9


def classify(char: QuadGaussSum) -> ClassicalityVerdict:
    """Decide between a positive P function, no P function, and Wigner negativity.

    The P function exists when every term of the P characteristic function
    decays strictly; delta-like boundary cases (coherent states) count as
    non-existent.  Positivity is checked on a dense grid, and Wigner
    negativity at the origin, which is the minimum for every state built here.
    """
    pc = p_char(char)
    p_exists = all(t.a > EPS_TOL and t.b > EPS_TOL for t in pc.terms)
    p_positive = None
    if p_exists:
        g = np.linspace(-P_GRID_HALFWIDTH, P_GRID_HALFWIDTH, P_GRID_POINTS)
        X, P = np.meshgrid(g, g, indexing="ij")
        p_positive = bool(np.min(wigner_eval(pc, X, P)) >= P_NEG_THRESHOLD)
    wigner_negative = wigner_eval(char, 0.0, 0.0) < 0
    if wigner_negative:
        verdict = Verdict.WIGNER_NEGATIVE
    elif p_exists and p_positive:
        verdict = Verdict.CLASSICAL
    else:
        verdict = Verdict.NONCLASSICAL_NO_P
    return ClassicalityVerdict(p_exists, p_positive, wigner_negative, verdict)


def purity(char: QuadGaussSum) -> float:
    """Tr rho^2 from the characteristic function."""
    return float((char.product(char.adjoint().reflected()).integrate() / pi).real)


def origin_sign_boundary_single(state: GaussianDiagState, tol: float = BISECT_TOL) -> float:
    """Locate, by bisection in T, where W(0) of the one-photon-heralded state changes sign."""
    return find_sign_change(
        lambda T: wigner_origin_single(beamsplit_with_vacuum(state, T)), 1e-6, 1 - 1e-6, tol
    )


def origin_sign_boundary_threshold(state: GaussianDiagState, tol: float = BISECT_TOL) -> float:
    """Same as :func:`origin_sign_boundary_single` for the threshold herald."""
    return find_sign_change(
        lambda T: wigner_origin_threshold(beamsplit_with_vacuum(state, T)), 1e-6, 1 - 1e-6, tol
    )
