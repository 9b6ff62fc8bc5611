"""
Odd coherent-state superpositions and their fidelity with heralded states.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, expm1, pi, sqrt

import numpy as np
from scipy.optimize import minimize_scalar

from .quadgauss import GaussTerm, QuadGaussSum

ALPHA_MIN = 1e-4
ALPHA_MAX_DEFAULT = 3.0
COARSE_POINTS = 64
ALPHA_TOL = 1e-6


@dataclass(frozen=True)
class CatSpec:
    """Odd cat  N (|alpha> - |-alpha>)  with real amplitude ``alpha > 0``."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"cat amplitude must be positive, got {self.alpha!r}")

    @property
    def norm(self) -> float:
        # <psi|psi> = 2 N^2 (1 - exp(-2 alpha^2))
        return 1 / sqrt(-2 * expm1(-2 * self.alpha**2))


def cat_char_fn(spec: CatSpec) -> QuadGaussSum:
    """Weyl characteristic function of the odd cat.

    Diagonal overlaps <+-alpha|D(z)|+-alpha> give phases exp(+-2i alpha z_i);
    the cross overlaps give real factors exp(-2 alpha^2 +- 2 alpha z_r), stored
    as imaginary linear frequencies.
    """
    al = spec.alpha
    n2 = spec.norm**2
    damp = exp(-2 * al**2)
    one = [[1.0]]
    return QuadGaussSum((
        GaussTerm(n2, one, 1.0, 1.0, 0.0, 2 * al),
        GaussTerm(n2, one, 1.0, 1.0, 0.0, -2 * al),
        GaussTerm(-n2 * damp, one, 1.0, 1.0, -2j * al, 0.0),
        GaussTerm(-n2 * damp, one, 1.0, 1.0, 2j * al, 0.0),
    ))


def overlap_fidelity(pure_char: QuadGaussSum, rho_char: QuadGaussSum) -> float:
    """Tr[|phi><phi| rho] = (1/pi) int C_phi(z) C_rho(-z) d^2z."""
    return float((pure_char.product(rho_char.reflected()).integrate() / pi).real)


def cat_fidelity(rho_char: QuadGaussSum, alpha: float) -> float:
    return overlap_fidelity(cat_char_fn(CatSpec(alpha)), rho_char)


def optimize_alpha(rho_char: QuadGaussSum, alpha_max: float = ALPHA_MAX_DEFAULT) -> tuple[float, float]:
    """Cat amplitude maximizing the fidelity with ``rho_char``.

    A coarse scan locates the global peak; golden-section search then
    refines it inside the bracketing scan cell.
    """
    if not alpha_max > ALPHA_MIN:
        raise ValueError(f"alpha_max must exceed {ALPHA_MIN}, got {alpha_max!r}")
    grid = np.linspace(ALPHA_MIN, alpha_max, COARSE_POINTS)
    vals = np.array([cat_fidelity(rho_char, a) for a in grid])
    k = int(np.argmax(vals))
    if k == 0 or k == len(grid) - 1:
        return float(grid[k]), float(vals[k])
    res = minimize_scalar(
        lambda a: -cat_fidelity(rho_char, a),
        bracket=(grid[k - 1], grid[k], grid[k + 1]),
        method="golden",
        tol=ALPHA_TOL,
    )
    alpha_star = float(res.x)
    return alpha_star, cat_fidelity(rho_char, alpha_star)
