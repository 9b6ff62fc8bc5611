"""
Cross-checks of the analytic phase-space results against the Fock oracle,
plus the known-discrepancy probes.

Hard checks decide the exit status.  INFO probes record values that differ
from reference numbers for understood reasons and never fail the run.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import log

import numpy as np

from . import conditioning
from . import fock_oracle as fo
from .cat_fidelity import CatSpec, optimize_alpha
from .gaussian_core import GaussianDiagState, beamsplit_with_vacuum, from_exp2s, from_squeezed_thermal
from .imperfections import (
    LossConvention,
    apply_loss,
    efficiency_threshold,
    detected_wigner,
    pure_efficiency_threshold,
    approx_loss_origin_bracket,
)
from .quasiprob import (
    negativity_T_threshold_any,
    negativity_T_threshold_single,
    origin_sign_boundary_single,
    origin_sign_boundary_threshold,
    wigner_eval,
)

CHAR_TOL = 1e-4
WIGNER_TOL = 1e-4
PROB_TOL = 1e-5
FIDELITY_TOL = 1e-5
DRIFT_TOL = 1e-6
SEED = 20040101

REF_EXP2S = 2.36
REF_T = 0.88

# (exp(2s), nbar, T) for the oracle-equivalence sweep
ORACLE_GRID = [
    (2.36, 0.0, 0.88),
    (2.36, 0.0, 0.5),
    (2.36, 0.0, 0.95),
    (1.5, 0.0, 0.7),
    (3.0, 0.0, 0.8),
    (2.0, 0.05, 0.6),
    (2.5, 0.1, 0.9),
    (1.8, 0.02, 0.3),
    (2.36, 0.059, 0.88),
    (2.8, 0.0, 0.2),
]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    hard: bool = True
    values: dict = field(default_factory=dict)


@dataclass
class VerifyReport:
    dim: int
    reference_dim: int
    checks: list[Check]
    runtime_s: float = 0.0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.hard and not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "reference_dim": self.reference_dim,
            "ok": self.ok,
            "runtime_s": round(self.runtime_s, 3),
            "checks": [asdict(c) for c in self.checks],
        }

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            tag = "INFO" if not c.hard else ("PASS" if c.passed else "FAIL")
            lines.append(f"[{tag}] {c.name}: {c.detail}")
        lines.append(f"{len(self.failures)} hard check(s) failed; runtime {self.runtime_s:.1f} s")
        return "\n".join(lines)


def thread_count() -> int | None:
    env = os.environ.get("PSG_THREADS")
    if env:
        return max(1, int(env))
    return None


def _state(exp2s: float, nbar: float) -> GaussianDiagState:
    return from_squeezed_thermal(0.5 * log(exp2s), nbar)


def _random_points(rng, n: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    phi = rng.uniform(0, 2 * np.pi, n)
    return r * np.exp(1j * phi)


def oracle_point(exp2s: float, nbar: float, T: float, dim: int, seed: int) -> dict:
    """All analytic-vs-oracle discrepancies at one parameter point."""
    rng = np.random.default_rng(seed)
    state = _state(exp2s, nbar)
    V = beamsplit_with_vacuum(state, T)
    single = conditioning.subtract_single_photon(V)
    thresh = conditioning.subtract_threshold(V)
    traced = conditioning.trace_out_mode2(V)

    rho = fo.squeezed_thermal_rho(0.5 * log(exp2s), nbar, dim)
    rho2 = fo.beamsplitter_apply(rho, T)
    r1, p1 = fo.condition_mode2(rho2, fo.Outcome.ONE)
    ra, pa = fo.condition_mode2(rho2, fo.Outcome.AT_LEAST_ONE)
    rt, _ = fo.condition_mode2(rho2, fo.Outcome.NONE)
    lossy = fo.loss_apply(ra, 0.75)
    lossy_char = apply_loss(thresh.char, 0.75)

    char_err = 0.0
    for z in _random_points(rng, 20, 3.0):
        D = fo.displacement(z, dim)
        for rh, ch in ((r1, single.char), (ra, thresh.char), (rt, traced), (lossy, lossy_char)):
            val = complex(np.sum(D * rh.entries.T))
            char_err = max(char_err, abs(val - ch(z.real, z.imag)))

    g = np.linspace(-1.5, 1.5, 5)
    wig_err = 0.0
    for x in g:
        for p in g:
            for rh, ch in ((r1, single.char), (ra, thresh.char)):
                wig_err = max(wig_err, abs(fo.wigner_parity(rh, x, p) - wigner_eval(ch, x, p)))

    prob_err = max(abs(p1 - single.success_prob), abs(pa - thresh.success_prob))
    closed_form_err = max(abs(p1 - single.closed_form_prob), abs(pa - thresh.closed_form_prob))

    fid_err = 0.0
    for rh, ch in ((r1, single.char), (ra, thresh.char)):
        alpha, f_an = optimize_alpha(ch)
        f_or = fo.fidelity_pure(rh, CatSpec(alpha))
        fid_err = max(fid_err, abs(f_an - f_or))

    return {
        "params": {"exp2s": exp2s, "nbar": nbar, "T": T},
        "char": char_err,
        "wigner": wig_err,
        "prob": prob_err,
        "closed_form_prob": closed_form_err,
        "fidelity": fid_err,
    }


def _oracle_scalars(dim: int) -> dict:
    s = 0.5 * log(REF_EXP2S)
    rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(s, 0.0, dim), REF_T)
    ra, pa = fo.condition_mode2(rho2, fo.Outcome.AT_LEAST_ONE)
    r1, p1 = fo.condition_mode2(rho2, fo.Outcome.ONE)
    return {
        "W_threshold_origin": fo.wigner_parity(ra, 0.0, 0.0),
        "W_single_origin": fo.wigner_parity(r1, 0.0, 0.0),
        "p_one": p1,
        "p_click": pa,
        "fidelity_single_alpha1.08": fo.fidelity_pure(r1, CatSpec(1.08)),
        "fidelity_threshold_alpha1.08": fo.fidelity_pure(ra, CatSpec(1.08)),
    }


def run_verify(dim: int = fo.DEFAULT_DIM, reference_dim: int = 60, threads: int | None = None) -> VerifyReport:
    t0 = time.perf_counter()
    checks: list[Check] = []
    threads = threads if threads is not None else thread_count()
    pure = from_exp2s(REF_EXP2S)

    # reference negativity at the origin, both routes
    V = beamsplit_with_vacuum(pure, REF_T)
    w_an = wigner_eval(conditioning.subtract_threshold(V).char, 0.0, 0.0)
    rho2 = fo.beamsplitter_apply(fo.squeezed_thermal_rho(0.5 * log(REF_EXP2S), 0.0, dim), REF_T)
    w_or = fo.wigner_parity(fo.condition_mode2(rho2, fo.Outcome.AT_LEAST_ONE)[0], 0.0, 0.0)
    checks.append(Check(
        "reference_origin",
        abs(w_an + 0.52) <= 0.01 and abs(w_or + 0.52) <= 0.01,
        f"analytic W(0,0) = {w_an:.6f}, oracle = {w_or:.6f}, reference -0.52",
        values={"analytic": w_an, "oracle": w_or, "reference": -0.52},
    ))

    # oracle equivalence sweep
    with ThreadPoolExecutor(max_workers=threads) as ex:
        rows = list(ex.map(
            lambda args: oracle_point(*args[1], dim=dim, seed=SEED + args[0]),
            enumerate(ORACLE_GRID),
        ))
    worst = {k: max(r[k] for r in rows) for k in ("char", "wigner", "prob", "closed_form_prob", "fidelity")}
    for key, tol in (("char", CHAR_TOL), ("wigner", WIGNER_TOL), ("prob", PROB_TOL), ("fidelity", FIDELITY_TOL)):
        checks.append(Check(
            f"oracle_{key}",
            worst[key] <= tol,
            f"max |analytic - oracle| = {worst[key]:.3e} over {len(rows)} points (tol {tol:g})",
            values={"max_error": worst[key], "tol": tol},
        ))
    checks.append(Check(
        "closed_form_herald_normalizations",
        worst["closed_form_prob"] <= PROB_TOL,
        f"closed-form herald probabilities vs oracle: max error {worst['closed_form_prob']:.3e}",
        hard=False,
        values={"max_error": worst["closed_form_prob"]},
    ))

    # thresholds: formula vs bisection
    rng = np.random.default_rng(SEED)
    t_err = 0.0
    for _ in range(5):
        st = from_exp2s(float(rng.uniform(1.2, 4.0)))
        t_err = max(t_err, abs(origin_sign_boundary_threshold(st) - negativity_T_threshold_any(st)))
    mixed = GaussianDiagState(0.5, 2.5)
    t_err = max(t_err, abs(origin_sign_boundary_single(mixed) - negativity_T_threshold_single(mixed)))
    t_err = max(t_err, abs(origin_sign_boundary_threshold(mixed) - negativity_T_threshold_any(mixed)))
    checks.append(Check(
        "transmittivity_thresholds",
        t_err <= 1e-6,
        f"bisection vs closed form, max deviation {t_err:.2e}",
        values={"max_error": t_err},
    ))
    eta_err = 0.0
    for T in rng.uniform(0.34, 0.99, 5):
        eta_err = max(eta_err, abs(efficiency_threshold(pure, float(T)) - pure_efficiency_threshold(float(T))))
    eta_088 = efficiency_threshold(pure, REF_T)
    checks.append(Check(
        "efficiency_threshold",
        eta_err <= 1e-6 and abs(eta_088 - 0.534) <= 0.002,
        f"eta_min(T=0.88) = {eta_088:.6f} (reference 0.534); bisection vs (1+T)/4T max deviation {eta_err:.2e}",
        values={"eta_min_088": eta_088, "max_error": eta_err},
    ))

    # truncation convergence
    if reference_dim != dim:
        a = _oracle_scalars(dim)
        b = _oracle_scalars(reference_dim)
        drift = max(abs(a[k] - b[k]) for k in a)
        checks.append(Check(
            "truncation_convergence",
            drift < DRIFT_TOL,
            f"max scalar drift dim {dim} -> {reference_dim}: {drift:.2e}",
            values={"drift": drift, "at_dim": a, "at_reference_dim": b},
        ))

    checks.extend(discrepancy_probes())
    return VerifyReport(dim, reference_dim, checks, time.perf_counter() - t0)


def _origin(eta: float, xi: float, convention: LossConvention) -> float:
    return detected_wigner(from_exp2s(REF_EXP2S), REF_T, "threshold", eta, xi, convention, 0.0, 0.0)


def discrepancy_probes() -> list[Check]:
    """Reference values the exact model does not reproduce; signs are still checked."""
    out = []
    pure = from_exp2s(REF_EXP2S)
    bracket = approx_loss_origin_bracket(pure, REF_T, 0.75)
    exact = _origin(0.75, 1.0, LossConvention.PHYSICAL)
    out.append(Check(
        "approx_lossy_origin_formula",
        bracket > 0 and exact < 0,
        f"approximate bracket at (T=0.88, eta=0.75) = {bracket:+.6f} (predicts W >= 0); exact W(0) = {exact:+.6f}",
        hard=False,
        values={"approx_bracket": bracket, "exact": exact},
    ))

    for label, eta, xi, reference, sign in (
        ("lossy_origin", 0.75, 1.0, -0.15, -1),
        ("lossy_mixed_origin", 0.75, 0.7, 0.075, +1),
        ("improve_eta", 0.9, 0.7, -0.044, -1),
        ("improve_xi", 0.75, 0.9, -0.073, -1),
    ):
        phys = _origin(eta, xi, LossConvention.PHYSICAL)
        resc = _origin(eta, xi, LossConvention.RESCALED)
        out.append(Check(
            f"{label}_sign",
            np.sign(phys) == sign and np.sign(resc) == sign,
            f"W(0) at eta={eta}, xi={xi}: physical {phys:+.4f}, rescaled {resc:+.4f}, reference {reference:+.3f}",
            values={"physical": phys, "rescaled": resc, "reference": reference},
        ))
    return out
