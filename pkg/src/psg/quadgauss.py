"""
Exact representation of characteristic functions as sums of Gaussian terms.

Every state the package builds has a Weyl characteristic function of the form

    C(z) = sum_k c_k * P_k(z_r, z_i) * exp(-a_k z_r^2/2 - b_k z_i^2/2 + i u_k z_r + i v_k z_i)

with P_k a real polynomial.  The set is closed under argument scaling,
multiplication by Gaussians, linear combination and pointwise products, and
its full-plane integral is known in closed form, so Fourier transforms and
trace overlaps never need numerical quadrature.

The linear frequencies u, v may be complex: a purely imaginary frequency
encodes a real exponential factor such as exp(2 alpha z_r), which appears in
the cross terms of a coherent-state superposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt, pi

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DivergentIntegral


def _double_factorial_odd(n: int) -> int:
    # (n-1)!! for even n, i.e. the n-th moment of a standard normal
    out = 1
    for k in range(n - 1, 0, -2):
        out *= k
    return out


def gaussian_moment_integral(k: int, a: float, u: ArrayLike) -> NDArray[np.complex128]:
    """Closed form of  int x^k exp(-a x^2/2 + i u x) dx  over the real line.

    Completing the square gives a Gaussian with complex mean i u / a and
    variance 1 / a, so the integral is sqrt(2 pi / a) exp(-u^2 / 2a) times
    the k-th raw moment of that Gaussian.  Valid for complex ``u``.
    """
    if not a > 0:
        raise DivergentIntegral(f"Gaussian decay rate must be positive, got {a!r}")
    u = np.asarray(u, dtype=complex)
    mean = 1j * u / a
    moment = np.zeros_like(u)
    for j in range(0, k + 1, 2):
        moment = moment + comb(k, j) * mean ** (k - j) * a ** (-j / 2) * _double_factorial_odd(j)
    return sqrt(2 * pi / a) * np.exp(-(u**2) / (2 * a)) * moment


@dataclass(frozen=True)
class GaussTerm:
    """One summand ``coeff * poly * gaussian * linear phase``.

    ``poly[i, j]`` is the coefficient of ``z_r**i * z_i**j``.
    """

    coeff: complex
    poly: NDArray[np.float64]
    a: float
    b: float
    u: complex = 0.0
    v: complex = 0.0

    def __post_init__(self):
        poly = np.atleast_2d(np.asarray(self.poly, dtype=float))
        poly.setflags(write=False)
        object.__setattr__(self, "poly", poly)

    def __call__(self, zr, zi):
        zr = np.asarray(zr, dtype=float)
        zi = np.asarray(zi, dtype=float)
        return (
            self.coeff
            * np.polynomial.polynomial.polyval2d(zr, zi, self.poly)
            * np.exp(-0.5 * self.a * zr**2 - 0.5 * self.b * zi**2 + 1j * self.u * zr + 1j * self.v * zi)
        )

    def integrate(self, du: ArrayLike = 0.0, dv: ArrayLike = 0.0) -> NDArray[np.complex128]:
        u = self.u + np.asarray(du, dtype=complex)
        v = self.v + np.asarray(dv, dtype=complex)
        u, v = np.broadcast_arrays(u, v)
        ir = [gaussian_moment_integral(i, self.a, u) for i in range(self.poly.shape[0])]
        iv = [gaussian_moment_integral(j, self.b, v) for j in range(self.poly.shape[1])]
        total = np.zeros(u.shape, dtype=complex)
        for i, j in zip(*np.nonzero(self.poly)):
            total = total + self.poly[i, j] * ir[i] * iv[j]
        return self.coeff * total


def _poly_scale(poly: NDArray[np.float64], kr: float, ki: float) -> NDArray[np.float64]:
    i = np.arange(poly.shape[0])[:, None]
    j = np.arange(poly.shape[1])[None, :]
    return poly * kr**i * ki**j


@dataclass(frozen=True)
class QuadGaussSum:
    """Finite sum of :class:`GaussTerm` objects, evaluated pointwise."""

    terms: tuple[GaussTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def gaussian(cls, a: float, b: float, coeff: complex = 1.0) -> QuadGaussSum:
        """Single term ``coeff * exp(-a z_r^2/2 - b z_i^2/2)``."""
        return cls((GaussTerm(coeff, [[1.0]], a, b),))

    def __call__(self, zr, zi):
        out = 0j
        for t in self.terms:
            out = out + t(zr, zi)
        return out

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: QuadGaussSum) -> QuadGaussSum:
        return QuadGaussSum(self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, QuadGaussSum):
            return self.product(other)
        return QuadGaussSum(tuple(
            GaussTerm(t.coeff * other, t.poly, t.a, t.b, t.u, t.v) for t in self.terms
        ))

    __rmul__ = __mul__

    def product(self, other: QuadGaussSum) -> QuadGaussSum:
        """Pointwise product; polynomial degrees add."""
        terms = []
        for s in self.terms:
            for t in other.terms:
                pr =np.zeros((s.poly.shape[0] + t.poly.shape[0] - 1,
                               s.poly.shape[1] + t.poly.shape[1] - 1))
                for i, j in zip(*np.nonzero(s.poly)):
                    pr[i:i + t.poly.shape[0], j:j + t.poly.shape[1]] += s.poly[i, j] * t.poly
                terms.append(GaussTerm(s.coeff * t.coeff, pr, s.a + t.a, s.b + t.b, s.u + t.u, s.v + t.v))
        return QuadGaussSum(tuple(terms))

    def scale_argument(self, kr: float, ki: float | None = None) -> QuadGaussSum:
        """Return ``z -> C(kr z_r + i ki z_i)``."""
        ki = kr if ki is None else ki
        return QuadGaussSum(tuple(
            GaussTerm(t.coeff, _poly_scale(t.poly, kr, ki), t.a * kr**2, t.b * ki**2, t.u * kr, t.v * ki)
            for t in self.terms
        ))

    def times_gaussian(self, gr: float, gi: float | None = None) -> QuadGaussSum:
        """Multiply by ``exp(-gr z_r^2/2 - gi z_i^2/2)``; negative rates allowed."""
        gi = gr if gi is None else gi
        return QuadGaussSum(tuple(
            GaussTerm(t.coeff, t.poly, t.a + gr, t.b + gi, t.u, t.v) for t in self.terms
        ))

    def times_phase(self, du: complex, dv: complex) -> QuadGaussSum:
        """Multiply by ``exp(i du z_r + i dv z_i)``."""
        return QuadGaussSum(tuple(
            GaussTerm(t.coeff, t.poly, t.a, t.b, t.u + du, t.v + dv) for t in self.terms
        ))

    def reflected(self) -> QuadGaussSum:
        """Return ``z -> C(-z)``."""
        return self.scale_argument(-1.0)

    def adjoint(self) -> QuadGaussSum:
        """Return ``z -> conj(C(-z))``; equals ``self`` for a Hermitian operator."""
        return QuadGaussSum(tuple(
            GaussTerm(np.conj(t.coeff), _poly_scale(t.poly, -1.0, -1.0), t.a, t.b, np.conj(t.u), np.conj(t.v))
            for t in self.terms
        ))

    def integrable(self) -> bool:
        return all(t.a > 0 and t.b > 0 for t in self.terms)

    def integrate(self, du: ArrayLike = 0.0, dv: ArrayLike = 0.0) -> NDArray[np.complex128] | complex:
        """Full-plane integral of ``C(z) exp(i du z_r + i dv z_i)``.

        ``du`` and ``dv`` broadcast, so a whole grid of Fourier frequencies is
        evaluated in one call.
        """
        for t in self.terms:
            if not (t.a > 0 and t.b > 0):
                raise DivergentIntegral(
                    f"term with decay rates a={t.a!r}, b={t.b!r} is not integrable"
                )
        du, dv = np.broadcast_arrays(np.asarray(du, dtype=complex), np.asarray(dv, dtype=complex))
        total = np.zeros(du.shape, dtype=complex)
        for t in self.terms:
            total = total + t.integrate(du, dv)
        if total.ndim == 0:
            return complex(total)
        return total


def integrate_full_plane(f: QuadGaussSum) -> complex:
    """Exact value of the integral of ``f`` over the whole complex plane."""
    return f.integrate()
