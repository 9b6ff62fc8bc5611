"""
Brute-force truncated Fock-space counterpart of the analytic phase-space
calculus.  Nothing here uses characteristic-function algebra: states are
density matrices, the beam splitter and squeezer are matrix exponentials of
their generators, and the Wigner function comes from displaced parity.

Operators that do not conserve photon number (squeezing, displacement) are
exponentiated in a padded space and then sliced, so the retained matrix
elements are free of truncation artifacts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import ceil, pi

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import eigh_tridiagonal, expm
from scipy.special import gammaln

from .cat_fidelity import CatSpec
from .errors import DegenerateSplitter, UnderTruncated, ZeroProbabilityHerald

DEFAULT_DIM = 40
TAIL_TOL = 1e-8
HERM_TOL = 1e-12
TRACE_TOL = 1e-10
EIG_TOL = 1e-10


def annihilation(dim: int) -> NDArray[np.float64]:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def _tail_rows(dim: int) -> int:
    return max(1, ceil(0.1 * dim))


def tail_mass(populations: NDArray[np.float64]) -> float:
    return float(np.sum(populations[-_tail_rows(len(populations)):]))


@dataclass(frozen=True)
class FockDensityMatrix:
    """Density matrix truncated to photon numbers ``0 .. dim-1`` per mode.

    Two-mode matrices are indexed ``(n1 * dim + n2, n1' * dim + n2')``.
    """

    dim: int
    modes: int
    entries: NDArray[np.complex128]

    def __post_init__(self):
        if self.modes not in (1, 2):
            raise ValueError("only one- and two-mode states are supported")
        size = self.dim**self.modes
        rho = np.asarray(self.entries, dtype=complex)
        if rho.shape != (size, size):
            raise ValueError(f"expected a {size}x{size} matrix, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > HERM_TOL * max(1.0, np.max(np.abs(rho))):
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(rho).real
        if not tr > 0:
            raise ValueError("density matrix has non-positive trace")
        rho = rho / tr
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def tensor(self) -> NDArray[np.complex128]:
        d = self.dim
        return self.entries.reshape(d, d, d, d) if self.modes == 2 else self.entries

    def populations(self, mode: int = 0) -> NDArray[np.float64]:
        if self.modes == 1:
            return np.diag(self.entries).real
        t = self.tensor
        return (np.einsum("ijij->i", t) if mode == 0 else np.einsum("ijij->j", t)).real

    @property
    def under_truncated(self) -> bool:
        return any(tail_mass(self.populations(m)) >= TAIL_TOL for m in range(self.modes))

    def check_truncation(self):
        if self.under_truncated:
            raise UnderTruncated(
                f"more than {TAIL_TOL:g} of the population sits in the top photon numbers at dim={self.dim}"
            )

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.entries)[0])

    def is_valid(self) -> bool:
        return self.min_eigenvalue() >= -EIG_TOL and not self.under_truncated

    def purity(self) -> float:
        return float(np.real(np.trace(self.entries @ self.entries)))

    def partial_trace(self, keep: int = 0) -> FockDensityMatrix:
        if self.modes != 2:
            raise ValueError("partial trace needs a two-mode state")
        t = self.tensor
        red = np.einsum("ijkj->ik", t) if keep == 0 else np.einsum("ijil->jl", t)
        return FockDensityMatrix(self.dim, 1, red)


def fock_state(n: int, dim: int) -> FockDensityMatrix:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[n, n] = 1
    return FockDensityMatrix(dim, 1, rho)


def _padding(dim: int, radius: float = 0.0) -> int:
    return max(40, dim) + int(12 * radius**2)


def squeezed_thermal_rho(s: float, nbar: float, dim: int = DEFAULT_DIM) -> FockDensityMatrix:
    """S(s) rho_thermal S(s)^+ with S(s) = exp(s (a^+2 - a^2) / 2).

    Characteristic widths are (e^-2s (2 nbar + 1), e^2s (2 nbar + 1)).
    """
    if nbar < 0:
        raise ValueError("nbar must be >= 0")
    big = dim + _padding(dim, abs(s))
    n = np.arange(big)
    if nbar == 0:
        pops = (n == 0).astype(float)
    else:
        pops = (nbar / (nbar + 1)) ** n / (nbar + 1)
    a = annihilation(big + _padding(big, abs(s)))
    S = expm(0.5 * s * (a.T @ a.T - a @ a))[:dim, :big]
    rho = S @ np.diag(pops) @ S.conj().T
    out = FockDensityMatrix(dim, 1, rho)
    out.check_truncation()
    return out


@lru_cache(maxsize=16)
def _quadrature_eigensystem(size: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    # X = a + a^+ is real symmetric tridiagonal
    off = np.sqrt(np.arange(1, size, dtype=float))
    w, v = eigh_tridiagonal(np.zeros(size), off)
    w.setflags(write=False)
    v.setflags(write=False)
    return w, v


def displacement(zeta: complex, rows: int, cols: int | None = None) -> NDArray[np.complex128]:
    """Block ``[:rows, :cols]`` of D(zeta) = exp(zeta a^+ - conj(zeta) a).

    Uses D(i y) = exp(i y X) with X = a + a^+ diagonalized once per size, and
    the phase rotation  D(zeta) = R D(i |zeta|) R^+,  R = exp(i theta n),
    theta = arg(zeta) - pi/2.  The exponential is taken in a padded space.
    """
    cols = rows if cols is None else cols
    big = max(rows, cols) + _padding(max(rows, cols), abs(zeta))
    w, v = _quadrature_eigensystem(big)
    y = abs(zeta)
    block = (v[:rows] * np.exp(1j * y * w)) @ v[:cols].T
    theta = np.angle(zeta) - pi / 2 if zeta != 0 else 0.0
    return np.exp(1j * theta * np.arange(rows))[:, None] * block * np.exp(-1j * theta * np.arange(cols))[None, :]


def beamsplitter_isometry(T: float, dim: int, cache: dict | None = None) -> NDArray[np.float64]:
    """Map |n>|0> -> U_BS |n>|0> as a (dim*dim, dim) matrix.

    U_BS = exp(theta (a b^+ - a^+ b)), cos(theta) = sqrt(T); this phase
    choice gives mode correlations c_i = +sqrt(TR)(A_i - 1).  The generator
    conserves total photon number, so each N-photon block (every state is
    representable when the second input is vacuum) is exponentiated exactly.
    """
    if not 0 < T < 1:
        raise DegenerateSplitter(f"transmittivity T must lie strictly inside (0, 1), got T={T!r}")
    key = (T, dim)
    if cache is not None and key in cache:
        return cache[key]
    theta = np.arccos(np.sqrt(T))
    iso = np.zeros((dim * dim, dim))
    for N in range(dim):
        # basis |k, N-k>, k = 0..N
        k = np.arange(N)
        G = np.zeros((N + 1, N + 1))
        # a^+ b |k, N-k> = sqrt((k+1)(N-k)) |k+1, N-k-1>
        G[k + 1, k] = np.sqrt((k + 1) * (N - k))
        G = theta * (G.T - G)
        col = expm(G)[:, N]
        ks = np.arange(N + 1)
        iso[ks * dim + (N - ks), N] = col
    if cache is not None:
        cache[key] = iso
    return iso


def beamsplitter_apply(rho: FockDensityMatrix, T: float, cache: dict | None = None) -> FockDensityMatrix:
    """Mix a one-mode state with vacuum on a beam splitter of transmittivity T."""
    if rho.modes != 1:
        raise ValueError("beamsplitter_apply expects a one-mode state")
    iso = beamsplitter_isometry(T, rho.dim, cache)
    out = FockDensityMatrix(rho.dim, 2, iso @ rho.entries @ iso.T)
    out.check_truncation()
    return out


class Outcome(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    AT_LEAST_ONE = "at_least_one"
    NONE = "none"


def condition_mode2(rho2: FockDensityMatrix, outcome: Outcome | str) -> tuple[FockDensityMatrix, float]:
    """Project mode 2 onto a photodetection outcome; return mode-1 state and probability."""
    outcome = Outcome(outcome)
    t = rho2.tensor
    slices = np.einsum("injn->nij", t)  # <n|rho|n>_2 for each n
    if outcome is Outcome.ZERO:
        block = slices[0]
    elif outcome is Outcome.ONE:
        block = slices[1]
    elif outcome is Outcome.AT_LEAST_ONE:
        block = slices[1:].sum(axis=0)
    else:
        block = slices.sum(axis=0)
    prob = float(np.trace(block).real)
    if prob <= 1e-12:
        raise ZeroProbabilityHerald(f"outcome {outcome.value!r} has probability {prob:.3g}")
    return FockDensityMatrix(rho2.dim, 1, block / prob), prob


def loss_apply(rho: FockDensityMatrix, eta: float) -> FockDensityMatrix:
    """Amplitude damping with transmission ``eta`` via its Kraus operators."""
    if not 0 < eta <= 1:
        raise ValueError(f"eta must lie in (0, 1], got {eta!r}")
    if eta == 1:
        return rho
    d = rho.dim
    n = np.arange(d)
    out = np.zeros((d, d), dtype=complex)
    for k in range(d):
        # E_k |n> = sqrt(C(n, k)) eta^((n-k)/2) (1-eta)^(k/2) |n-k>
        m = n[k:]
        logc = gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1)
        amp = np.exp(0.5 * logc + 0.5 * (m - k) * np.log(eta) + 0.5 * k * np.log1p(-eta))
        E = np.zeros((d, d))
        E[m - k, m] = amp
        out += E @ rho.entries @ E.T
    return FockDensityMatrix(d, 1, out)


def char_value(rho: FockDensityMatrix, zeta: complex) -> complex:
    """Weyl characteristic function Tr[D(zeta) rho]."""
    if rho.modes != 1:
        raise ValueError("char_value expects a one-mode state")
    rho.check_truncation()
    D = displacement(zeta, rho.dim)
    return complex(np.sum(D * rho.entries.T))


def char_value_two_mode(rho: FockDensityMatrix, eta: complex, xi: complex) -> complex:
    """Two-mode characteristic function Tr[D_1(eta) D_2(xi) rho]."""
    rho.check_truncation()
    D1 = displacement(eta, rho.dim)
    D2 = displacement(xi, rho.dim)
    return complex(np.einsum("ki,lj,ijkl->", D1, D2, rho.tensor))


def wigner_parity(rho: FockDensityMatrix, x: float, p: float) -> float:
    """W(x, p) = (2/pi) Tr[rho D(alpha) Parity D(alpha)^+],  alpha = x + i p."""
    alpha = complex(x, p)
    d = rho.dim
    big = d + _padding(d, abs(alpha))
    D = displacement(alpha, d, big)  # <n|D(alpha)|m>, n < d, m < big
    shifted = D.conj().T @ rho.entries @ D  # D^+ rho D on the padded space
    pops = np.diag(shifted).real
    if tail_mass(pops) >= TAIL_TOL:
        raise UnderTruncated(f"displacement |alpha|={abs(alpha):.3g} leaves the truncated space")
    parity = (-1.0) ** np.arange(big)
    return float(2 / pi * np.sum(parity * pops))


def cat_vector(cat: CatSpec, dim: int) -> NDArray[np.float64]:
    n = np.arange(dim)
    al = cat.alpha
    logmag = -0.5 * al**2 + n * np.log(al) - 0.5 * gammaln(n + 1)
    vec = np.where(n % 2 == 1, 2 * cat.norm * np.exp(logmag), 0.0)
    return vec


def fidelity_pure(rho: FockDensityMatrix, cat: CatSpec) -> float:
    """<psi_cat| rho |psi_cat> from the Fock expansion of the odd cat."""
    vec = cat_vector(cat, rho.dim)
    if 1 - vec @ vec > TAIL_TOL:
        raise UnderTruncated(f"cat with alpha={cat.alpha} not representable at dim={rho.dim}")
    return float(np.real(vec @ rho.entries @ vec))


def quadrature_moments(rho: FockDensityMatrix) -> dict[str, float]:
    """Second moments in the characteristic-width convention.

    With X = a + a^+ and Y = i(a^+ - a), a one-mode state has A = <Y^2>,
    B = <X^2>.  For two modes this returns the correlation entries
    n1, n2, c1, c2, m1, m2.
    """
    d = rho.dim
    a = annihilation(d)
    X = a + a.T
    Y = 1j * (a.T - a)
    if rho.modes == 1:
        return {
            "A": float(np.trace(rho.entries @ Y @ Y).real),
            "B": float(np.trace(rho.entries @ X @ X).real),
        }
    t = rho.tensor

    def ev(op1, op2):
        # <op1 (x) op2>, with either factor possibly the identity (None)
        o1 = np.eye(d) if op1 is None else op1
        o2 = np.eye(d) if op2 is None else op2
        return float(np.einsum("ki,lj,ijkl->", o1, o2, t).real)

    return {
        "n1": ev(Y @ Y, None), "n2": ev(X @ X, None),
        "c1": ev(Y, Y), "c2": ev(X, X),
        "m1": ev(None, Y @ Y), "m2": ev(None, X @ X),
    }
