"""
Conditional mode-1 states after a photodetection on the beam-splitter tap.

Herald probabilities are computed from the two-mode characteristic function
by an exact Gaussian integral over the mode-2 argument,

    P(outcome) = (1/pi) int d^2k  C_out(0, -k) <outcome| D(k) |outcome>,

and are carried alongside the closed-form normalizations so the two can be
compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import pi, sqrt

from .errors import ZeroProbabilityHerald
from .gaussian_core import EPS_TOL, TwoModeCorrelation
from .quadgauss import GaussTerm, QuadGaussSum


class Detector(enum.Enum):
    SINGLE_PHOTON = "ideal"
    THRESHOLD = "threshold"
    NONE = "none"


@dataclass(frozen=True)
class ConditionedState:
    char: QuadGaussSum
    success_prob: float
    detector: Detector
    closed_form_prob: float | None = None


def _mode2_marginal(V: TwoModeCorrelation) -> QuadGaussSum:
    return QuadGaussSum.gaussian(V.m1, V.m2)


# <n|D(k)|n> for n = 0, 1 as QuadGaussSums
_VAC_OVERLAP = QuadGaussSum.gaussian(1.0, 1.0)
_ONE_OVERLAP = QuadGaussSum((GaussTerm(1.0, [[1.0, 0.0, -1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]], 1.0, 1.0),))


def herald_probability(V: TwoModeCorrelation, n: int) -> float:
    """Probability of finding exactly ``n`` (0 or 1) photons in mode 2."""
    overlap = {0: _VAC_OVERLAP, 1: _ONE_OVERLAP}[n]
    # mode-2 marginal is even, so C_out(0, -k) = C_out(0, k)
    return float((_mode2_marginal(V).product(overlap).integrate() / pi).real)


def single_photon_norm(V: TwoModeCorrelation) -> float:
    """Closed-form inverse herald probability for exactly one photon."""
    return ((V.m1 + 1) * (V.m2 + 1)) ** 1.5 / (2 * (V.m1 * V.m2 - 1))


def threshold_norm(V: TwoModeCorrelation) -> float:
    """Closed-form inverse herald probability for a threshold click."""
    g = sqrt((V.m1 + 1) * (V.m2 + 1))
    return g / (g - 2)


def _vacuum_herald_rates(V: TwoModeCorrelation) -> tuple[float, float]:
    return V.n1 - V.c1**2 / (V.m1 + 1), V.n2 - V.c2**2 / (V.m2 + 1)


def subtract_single_photon(V: TwoModeCorrelation) -> ConditionedState:
    """Mode-1 state conditioned on exactly one photon in mode 2."""
    if V.m1 * V.m2 - 1 <= EPS_TOL:
        raise ZeroProbabilityHerald(
            f"one-photon herald has zero probability (m1*m2 - 1 = {V.m1 * V.m2 - 1:.3g}); "
            "the input carries no photons to subtract"
        )
    d = V.m1 * V.m2 - 1
    qr = V.c1**2 * (V.m2 + 1) / ((V.m1 + 1) * d)
    qi = V.c2**2 * (V.m1 + 1) / ((V.m2 + 1) * d)
    a, b = _vacuum_herald_rates(V)
    poly = [[1.0, 0.0, -qi], [0.0, 0.0, 0.0], [-qr, 0.0, 0.0]]
    char = QuadGaussSum((GaussTerm(1.0, poly, a, b),))
    return ConditionedState(
        char=char,
        success_prob=herald_probability(V, 1),
        detector=Detector.SINGLE_PHOTON,
        closed_form_prob=1 / single_photon_norm(V),
    )


def trace_out_mode2(V: TwoModeCorrelation) -> QuadGaussSum:
    """Unconditional mode-1 state; a Gaussian with rates (n1, n2)."""
    return QuadGaussSum.gaussian(V.n1, V.n2)


def herald_no_click(V: TwoModeCorrelation) -> ConditionedState:
    """Mode-1 state conditioned on the vacuum in mode 2."""
    a, b = _vacuum_herald_rates(V)
    return ConditionedState(
        char=QuadGaussSum.gaussian(a, b),
        success_prob=herald_probability(V, 0),
        detector=Detector.NONE,
        closed_form_prob=2 / sqrt((V.m1 + 1) * (V.m2 + 1)),
    )


def subtract_threshold(V: TwoModeCorrelation) -> ConditionedState:
    """Mode-1 state conditioned on a click (one or more photons) in mode 2."""
    g = sqrt((V.m1 + 1) * (V.m2 + 1))
    if g <= 2 + EPS_TOL:
        raise ZeroProbabilityHerald(
            f"threshold herald has zero probability (sqrt((m1+1)(m2+1)) = {g:.15g}); "
            "the input carries no photons to subtract"
        )
    p0 = herald_probability(V, 0)
    prob = 1 - p0
    a, b = _vacuum_herald_rates(V)
    # (rho_t - <0|rho_out|0>) / P(click), written as a difference of two Gaussians
    char = QuadGaussSum((
        GaussTerm(1 / prob, [[1.0]], V.n1, V.n2),
        GaussTerm(-p0 / prob, [[1.0]], a, b),
    ))
    return ConditionedState(
        char=char,
        success_prob=prob,
        detector=Detector.THRESHOLD,
        closed_form_prob=1 / threshold_norm(V),
    )


def condition(V: TwoModeCorrelation, detector: Detector | str) -> ConditionedState:
    detector = Detector(detector)
    if detector is Detector.SINGLE_PHOTON:
        return subtract_single_photon(V)
    if detector is Detector.THRESHOLD:
        return subtract_threshold(V)
    return ConditionedState(trace_out_mode2(V), 1.0, Detector.NONE, 1.0)
