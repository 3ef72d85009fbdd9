"""``mlfilt`` command line: apply, kernel, mlf, bench.

Exit status: 0 success, 2 input or usage error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .csvio import format_table, manifest_line, read_signal_csv
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    MLFilterError,
    NumericalError,
    SizeError,
)
from .filter_engine import Signal, apply_filter
from .kernels import KernelSpec, sample_kernel
from .mlf_core import DEFAULT_ACCURACY, EvalAccuracy, MLOrder, ml_eval
from .testbench import DEFAULT_NOISE_STD, PUBLISHED_PAIRS, BenchConfig, run_bench, seed_sweep, published_config

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (NumericalError, SizeError, ConvergenceError, AccuracyError)


def _accuracy(tol):
    return DEFAULT_ACCURACY if tol is None else EvalAccuracy(tol=tol)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _floats(raw: str) -> list[float]:
    try:
        return [float(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {raw!r}") from None


def cmd_apply(args) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    t, y, dt = read_signal_csv(text, default_dt=args.dt)
    spec = KernelSpec(args.sigma, args.alpha, args.beta, half_width=args.half_width, dt=dt)
    try:
        out = apply_filter(Signal(float(t[0]), dt, y), spec, _accuracy(args.tol))
    except NumericalError as exc:
        print(f"error: sigma={args.sigma} alpha={args.alpha} beta={args.beta} "
              f"half_width={spec.half_width}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    params = {"sigma": args.sigma, "alpha": args.alpha, "beta": args.beta,
              "half_width": spec.half_width, "dt": dt, "tol": _accuracy(args.tol).tol}
    manifest = manifest_line("apply", params, inputs=str(args.input), outputs=args.out)
    _emit(format_table(["t", "y"], [t, out.signal.y], [manifest]), args.out)
    return EXIT_OK


def cmd_kernel(args) -> int:
    spec = KernelSpec(args.sigma, args.alpha, args.beta, half_width=args.half_width, dt=args.dt)
    k = sample_kernel(spec, _accuracy(args.tol))
    params = {"sigma": args.sigma, "alpha": args.alpha, "beta": args.beta,
              "half_width": spec.half_width, "dt": args.dt, "tol": _accuracy(args.tol).tol}
    manifest = manifest_line("kernel", params, outputs=args.out)
    _emit(format_table(["offset", "weight"], [k.offsets, k.weights], [manifest]), args.out)
    return EXIT_OK


def cmd_mlf(args) -> int:
    value = ml_eval(MLOrder(args.alpha, args.beta), args.z, _accuracy(args.tol))
    print(f"{value:.15g}")
    return EXIT_OK


def cmd_bench(args) -> int:
    sid = args.signal
    calibrated = []
    if args.noise_std is None:
        calibrated.append("noise_std")
    if args.t_start is None or args.t_end is None:
        calibrated.append("time_window")
    base = published_config(sid, seed=args.seed,
                         noise_std=DEFAULT_NOISE_STD if args.noise_std is None else args.noise_std,
                         t_start=args.t_start, t_end=args.t_end, half_width=args.half_width)
    extra = []
    if args.sweep_alpha or args.sweep_beta:
        sigma = base.ml_spec.sigma
        for a in args.sweep_alpha or [base.ml_spec.alpha]:
            for b in args.sweep_beta or [base.ml_spec.beta]:
                spec = KernelSpec(sigma, a, b, half_width=args.half_width, dt=base.dt)
                extra.append((f"sweep_a{a:g}_b{b:g}", spec))
    cfg = BenchConfig(sid, base.gaussian_spec, base.ml_spec, t_start=base.t_start,
                      t_end=base.t_end, dt=base.dt, noise_std=base.noise_std,
                      seed=base.seed, extra_specs=tuple(extra))
    acc = _accuracy(args.tol)
    try:
        report = run_bench(cfg, acc)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    params = {"signal": sid, "seed": cfg.seed, "noise_std": cfg.noise_std,
              "t_start": cfg.t_start, "t_end": cfg.t_end, "dt": cfg.dt, "tol": acc.tol,
              "filters": {label: [s.sigma, s.alpha, s.beta, s.half_width]
                          for label, s in cfg.specs().items()}}
    manifest = manifest_line("bench", params, outputs=args.out, calibrated=calibrated)
    _emit(manifest + "\n" + report.to_csv(), args.out)

    if args.traces:
        labels = list(cfg.specs())
        cols = [report.traces["t"], report.traces["clean"], report.traces["noisy"]]
        cols += [report.traces[label] for label in labels]
        header = ["t", "clean", "noisy"] + ["gauss" if lb == "gaussian" else lb for lb in labels]
        tmanifest = manifest_line("bench", params, outputs=args.traces, calibrated=calibrated)
        Path(args.traces).write_text(format_table(header, cols, [tmanifest]))

    if args.seeds > 1:
        sweep = seed_sweep(sid, range(cfg.seed, cfg.seed + args.seeds),
                           noise_std=cfg.noise_std, t_start=cfg.t_start, t_end=cfg.t_end,
                           half_width=args.half_width)
        # keep stdout clean when the report itself goes there
        print(sweep.summary(), file=sys.stdout if args.out not in (None, "-") else sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlfilt", description="Mittag-Leffler low-pass filter tools")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True):
        sp.add_argument("--tol", type=float, default=None,
                        help="absolute accuracy of E_{alpha,beta} (default 1e-9)")
        sp.add_argument("--half-width", type=float, default=None,
                        help="kernel half window in time units (default 6 sigma, 12 sigma if alpha < 1)")
        if out:
            sp.add_argument("--out", default=None, help="output CSV path (default stdout)")

    sp = sub.add_parser("apply", help="filter a t,y CSV signal")
    sp.add_argument("input")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--dt", type=float, default=None, help="step for single-sample inputs")
    common(sp)
    sp.set_defaults(func=cmd_apply)

    sp = sub.add_parser("kernel", help="dump a sampled kernel as offset,weight CSV")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--dt", type=float, default=0.01)
    common(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("mlf", help="evaluate E_{alpha,beta}(z) for z <= 0")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--z", type=float, required=True)
    sp.add_argument("--tol", type=float, default=None)
    sp.set_defaults(func=cmd_mlf)

    sp = sub.add_parser("bench", help="Gaussian vs Mittag-Leffler MSE on a noisy test signal")
    sp.add_argument("--signal", choices=sorted(PUBLISHED_PAIRS), required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--noise-std", type=float, default=None, help="default 0.1 (calibrated)")
    sp.add_argument("--t-start", type=float, default=None)
    sp.add_argument("--t-end", type=float, default=None)
    sp.add_argument("--sweep-alpha", type=_floats, default=None, help="e.g. 0.8,1.0,1.2")
    sp.add_argument("--sweep-beta", type=_floats, default=None)
    sp.add_argument("--traces", default=None, help="write t,clean,noisy,gauss,ml CSV here")
    sp.add_argument("--seeds", type=int, default=1,
                    help="also report the ML win fraction over this many consecutive seeds")
    common(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _NUMERIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, MLFilterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
