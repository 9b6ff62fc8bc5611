"""
``psg`` command line: Wigner surfaces, fidelity sweeps, thresholds, verification.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 zero-probability herald, 4 input not squeezed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from .cat_fidelity import ALPHA_MAX_DEFAULT, cat_fidelity, optimize_alpha
from .conditioning import Detector, condition
from .errors import (
    DegenerateSplitter,
    InvalidState,
    NoThresholdBelowOne,
    NotSqueezedInput,
    ZeroProbabilityHerald,
)
from .gaussian_core import GaussianDiagState, beamsplit_with_vacuum, from_exp2s
from .imperfections import (
    LossConvention,
    detected_state,
    efficiency_threshold,
    efficiency_threshold_formula,
)
from .quasiprob import (
    negativity_T_threshold_any,
    negativity_T_threshold_single,
    origin_sign_boundary_single,
    origin_sign_boundary_threshold,
    wigner_eval,
    wigner_origin_single,
    wigner_origin_threshold,
)
from .verify import run_verify, thread_count

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_HERALD, EXIT_NOT_SQUEEZED = 0, 1, 2, 3, 4
FLOAT_FMT = ".15g"
DETECTORS = {"ideal": Detector.SINGLE_PHOTON, "threshold": Detector.THRESHOLD}


@dataclass
class SweepRecord:
    exp2s: float
    T: float
    detector: str
    eta: float
    xi: float
    convention: str
    alpha_star: float
    fidelity: float
    success_prob: float
    W_origin: float

    @classmethod
    def header(cls) -> str:
        return ",".join(f.name for f in fields(cls))

    def to_csv(self) -> str:
        return ",".join(_fmt(v) for v in asdict(self).values())


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, FLOAT_FMT)
    return str(v)


def _range(text: str, what: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        out = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must look like lo:hi:n, got {text!r}") from None
    if out[2] < 1:
        raise argparse.ArgumentTypeError(f"{what} needs n >= 1, got {out[2]}")
    return out


def _grid(text):
    return _range(text, "--grid")


def _trange(text):
    return _range(text, "--T-range")


def _comment(command: str, params: dict) -> str:
    items = " ".join(f"{k}={_fmt(v)}" for k, v in params.items())
    return f"# psg {__version__} {command} {items}"


def _open_out(path):
    return open(path, "w", newline="") if path and path != "-" else None


def _state_from_args(args) -> GaussianDiagState:
    if getattr(args, "A", None) is not None or getattr(args, "B", None) is not None:
        if args.A is None or args.B is None:
            raise InvalidState("--A and --B must be given together")
        return GaussianDiagState(args.A, args.B)
    return from_exp2s(args.exp2s)


def cmd_wigner(args) -> int:
    state = _state_from_args(args)
    xmin, xmax, n = args.grid
    char = detected_state(state, args.T, DETECTORS[args.detector], args.eta, args.xi, args.convention)
    g = np.linspace(xmin, xmax, n)
    X, P = np.meshgrid(g, g, indexing="ij")
    W = wigner_eval(char, X, P)

    params = {"exp2s": args.exp2s, "A": state.A, "B": state.B, "T": args.T, "detector": args.detector,
              "eta": args.eta, "xi": args.xi, "convention": args.convention, "grid": f"{xmin}:{xmax}:{n}"}
    lines = [_comment("wigner", params), "x,p,W"]
    lines += [f"{_fmt(float(x))},{_fmt(float(p))},{_fmt(float(w))}" for x, p, w in zip(X.ravel(), P.ravel(), W.ravel())]
    text = "\n".join(lines) + "\n"
    fh = _open_out(args.out)
    report = sys.stdout if fh else sys.stderr
    if fh:
        with fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    k = int(np.argmin(W))
    print(f"min W = {_fmt(float(W.ravel()[k]))} at x = {_fmt(float(X.ravel()[k]))}, p = {_fmt(float(P.ravel()[k]))}",
          file=report)
    print(f"W(0,0) = {_fmt(wigner_eval(char, 0.0, 0.0))}", file=report)
    return EXIT_OK


def _fidelity_row(state, exp2s, T, detector, optimize, alpha) -> SweepRecord:
    cond = condition(beamsplit_with_vacuum(state, T), DETECTORS[detector])
    if optimize:
        a_star, f_star = optimize_alpha(cond.char, ALPHA_MAX_DEFAULT)
    else:
        a_star, f_star = alpha, cat_fidelity(cond.char, alpha)
    return SweepRecord(exp2s, float(T), detector, 1.0, 1.0, "physical", float(a_star), float(f_star),
                       float(cond.success_prob), wigner_eval(cond.char, 0.0, 0.0))


def _crossing(Ts, Fs, level: float) -> float | None:
    for i in range(len(Ts) - 1):
        if (Fs[i] - level) * (Fs[i + 1] - level) <= 0 and Fs[i] != Fs[i + 1]:
            return Ts[i] + (level - Fs[i]) * (Ts[i + 1] - Ts[i]) / (Fs[i + 1] - Fs[i])
    return None


def cmd_fidelity(args) -> int:
    state = _state_from_args(args)
    lo, hi, n = args.T_range
    Ts = np.linspace(lo, hi, n)
    for T in Ts:
        beamsplit_with_vacuum(state, float(T))  # fail fast on a bad range
    with ThreadPoolExecutor(max_workers=thread_count()) as ex:
        rows = list(ex.map(
            lambda T: _fidelity_row(state, args.exp2s, float(T), args.detector, args.optimize_alpha, args.alpha), Ts
        ))
    params = {"exp2s": args.exp2s, "A": state.A, "B": state.B, "detector": args.detector,
              "T_range": f"{lo}:{hi}:{n}", "optimize_alpha": args.optimize_alpha, "alpha": args.alpha}
    text = "\n".join([_comment("fidelity", params), SweepRecord.header()] + [r.to_csv() for r in rows]) + "\n"
    fh = _open_out(args.out)
    report = sys.stdout if fh else sys.stderr
    if fh:
        with fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    fids = [r.fidelity for r in rows]
    print(f"fidelity range [{_fmt(min(fids))}, {_fmt(max(fids))}]", file=report)
    cross = _crossing([r.T for r in rows], fids, 0.9)
    if cross is not None:
        print(f"fidelity crosses 0.9 at T = {_fmt(cross)}", file=report)
    return EXIT_OK


def _bisect_or_none(fn, state):
    try:
        return fn(state)
    except ValueError:
        # no sign change inside (0, 1)
        return None


def cmd_thresholds(args) -> int:
    state = _state_from_args(args)
    t_single = negativity_T_threshold_single(state)
    t_any = negativity_T_threshold_any(state)

    def boundary(formula, origin_fn, search):
        # negative already at T -> 0: every T works
        if origin_fn(beamsplit_with_vacuum(state, 1e-6)) < 0:
            return 0.0
        return _bisect_or_none(search, state)

    report = {
        "input": {"A": state.A, "B": state.B, "pure": state.is_pure},
        "T_min_single": {"formula": t_single,
                         "bisection": boundary(t_single, wigner_origin_single, origin_sign_boundary_single)},
        "T_min_threshold": {"formula": t_any,
                            "bisection": boundary(t_any, wigner_origin_threshold, origin_sign_boundary_threshold)},
    }
    if args.T is not None:
        beamsplit_with_vacuum(state, args.T)
        try:
            eta = efficiency_threshold(state, args.T)
        except NoThresholdBelowOne:
            eta = None
        report["eta_min"] = {"T": args.T, "formula": efficiency_threshold_formula(state, args.T), "bisection": eta}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    fh = _open_out(args.out)
    if fh:
        with fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verify(dim=args.dim, reference_dim=args.reference_dim)
    print(report.to_text())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True, default=float)
            fh.write("\n")
    if not report.ok:
        print("failing checks: " + ", ".join(c.name for c in report.failures), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psg", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"psg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def state_flags(p, exp2s_default=2.36):
        p.add_argument("--exp2s", type=float, default=exp2s_default,
                       help="squeezing factor exp(2s) of a pure input (default %(default)s)")
        p.add_argument("--A", type=float, help="x-width of a general (mixed) input; needs --B")
        p.add_argument("--B", type=float, help="p-width of a general (mixed) input; needs --A")

    p = sub.add_parser("wigner", help="Wigner surface on a square grid (CSV)")
    state_flags(p)
    p.add_argument("--T", type=float, default=0.88)
    p.add_argument("--detector", choices=sorted(DETECTORS), default="threshold")
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--convention", choices=[c.value for c in LossConvention], default="physical")
    p.add_argument("--grid", type=_grid, default=(-3.0, 3.0, 61), help="xmin:xmax:n")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("fidelity", help="cat-state fidelity sweep over T (CSV)")
    state_flags(p)
    p.add_argument("--detector", choices=sorted(DETECTORS), default="ideal")
    p.add_argument("--T-range", dest="T_range", type=_trange, default=(0.8, 0.999, 21), help="lo:hi:n")
    p.add_argument("--optimize-alpha", dest="optimize_alpha", action="store_true",
                   help="maximize over the cat amplitude (otherwise use --alpha)")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("thresholds", help="negativity thresholds in T and eta (JSON)")
    state_flags(p)
    p.add_argument("--T", type=float, help="also report the minimal homodyne efficiency at this T")
    p.add_argument("--out", help="JSON path (default: stdout)")
    p.set_defaults(func=cmd_thresholds)

    p = sub.add_parser("verify", help="run analytic-vs-Fock-oracle cross-checks")
    p.add_argument("--dim", type=int, default=40)
    p.add_argument("--reference-dim", dest="reference_dim", type=int, default=60)
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotSqueezedInput as exc:
        print(f"psg: not a squeezed input: {exc}", file=sys.stderr)
        return EXIT_NOT_SQUEEZED
    except ZeroProbabilityHerald as exc:
        print(f"psg: zero-probability herald: {exc}", file=sys.stderr)
        return EXIT_HERALD
    except DegenerateSplitter as exc:
        print(f"psg: error: DegenerateSplitter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidState, ValueError) as exc:
        print(f"psg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
