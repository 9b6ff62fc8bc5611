"""
Single-mode diagonal Gaussian states and their beam-split correlation data.

A state is the pair (A, B) in  C(z) = exp(-A z_r^2/2 - B z_i^2/2);  A = B = 1
is the vacuum.  Squeezing by ``s`` maps to A = exp(-2s), B = exp(2s).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, log, sqrt

import numpy as np

from .errors import DegenerateSplitter, InvalidState
from .quadgauss import QuadGaussSum

EPS_TOL = 1e-12


@dataclass(frozen=True)
class GaussianDiagState:
    A: float
    B: float

    def __post_init__(self):
        if not (self.A > 0 and self.B > 0):
            raise InvalidState(f"A and B must be positive, got A={self.A!r}, B={self.B!r}")
        if self.A * self.B < 1 - EPS_TOL:
            raise InvalidState(
                f"uncertainty relation violated: A*B = {self.A * self.B!r} < 1"
            )

    @property
    def is_squeezed(self) -> bool:
        return self.A < 1 or self.B < 1

    @property
    def is_pure(self) -> bool:
        return abs(self.A * self.B - 1) <= EPS_TOL

    def squeezed_thermal_params(self) -> tuple[float, float]:
        """Inverse of :func:`from_squeezed_thermal`: return ``(s, nbar)``."""
        return 0.25 * log(self.B / self.A), 0.5 * (sqrt(self.A * self.B) - 1)


def from_squeezing(s: float) -> GaussianDiagState:
    """Pure squeezed vacuum, A = exp(-2s), B = exp(2s)."""
    return GaussianDiagState(exp(-2 * s), exp(2 * s))


def from_exp2s(exp2s: float) -> GaussianDiagState:
    """Pure squeezed vacuum given the factor exp(2s) directly."""
    if not exp2s > 0:
        raise InvalidState(f"exp(2s) must be positive, got {exp2s!r}")
    return GaussianDiagState(1 / exp2s, exp2s)


def from_squeezed_thermal(s: float, nbar: float) -> GaussianDiagState:
    if nbar < 0:
        raise InvalidState(f"thermal photon number must be >= 0, got {nbar!r}")
    g = 2 * nbar + 1
    return GaussianDiagState(exp(-2 * s) * g, exp(2 * s) * g)


def char_fn(state: GaussianDiagState) -> QuadGaussSum:
    return QuadGaussSum.gaussian(state.A, state.B)


@dataclass(frozen=True)
class TwoModeCorrelation:
    """Correlation matrix entries of the two beam-splitter output modes.

    Mode 1 is the transmitted signal, mode 2 the reflected tap that gets
    measured.  The two-mode characteristic function is

        exp(-(n1 h_r^2 + 2 c1 h_r k_r + m1 k_r^2 + n2 h_i^2 + 2 c2 h_i k_i + m2 k_i^2) / 2)

    for mode-1 argument h and mode-2 argument k.
    """

    n1: float
    n2: float
    c1: float
    c2: float
    m1: float
    m2: float
    T: float

    @property
    def R(self) -> float:
        return 1 - self.T

    def char_fn(self, eta_r, eta_i, xi_r, xi_i):
        """Evaluate the two-mode characteristic function (numpy-broadcasting)."""
        q = (self.n1 * eta_r**2 + 2 * self.c1 * eta_r * xi_r + self.m1 * xi_r**2
             + self.n2 * eta_i**2 + 2 * self.c2 * eta_i * xi_i + self.m2 * xi_i**2)
        return np.exp(-0.5 * q)


def beamsplit_with_vacuum(state: GaussianDiagState, T: float) -> TwoModeCorrelation:
    if not 0 < T < 1:
        raise DegenerateSplitter(f"transmittivity T must lie strictly inside (0, 1), got T={T!r}")
    R = 1 - T
    tr = sqrt(T * R)
    A, B = state.A, state.B
    return TwoModeCorrelation(
        n1=T * A + R,
        n2=T * B + R,
        c1=tr * (A - 1),
        c2=tr * (B - 1),
        m1=R * A + T,
        m2=R * B + T,
        T=T,
    )
