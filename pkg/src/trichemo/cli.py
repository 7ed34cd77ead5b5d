"""Command-line front end.

Subcommands: run (configured run from a TOML file), case1/case2 (the two
preset experiments), fit (recompute decay fits from a stored diagnostics
file), stability (print the explicit-step advisory for a grid).

Exit codes: 0 success, 1 other runtime failure, 2 bad arguments,
3 config or input file not found, 4 configuration schema violation,
5 snapshot/cadence time misaligned with the step grid, 6 numerical
blowup (non-finite values produced).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

from . import runner
from .diagnostics import fit_exponential_rate
from .grid import make_grid
from .runner import AlignmentError, ConfigError
from .stepping import BlowupError, StepConfig, check_stability

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_SCHEMA = 4
EXIT_MISALIGNED = 5
EXIT_BLOWUP = 6

_OVERRIDE_FLAGS = [
    # (flag, config key, type)
    ("--chi1", "chi1", float),
    ("--chi2", "chi2", float),
    ("--mu1", "mu1", float),
    ("--mu2", "mu2", float),
    ("--r", "r", float),
    ("--k", "k", float),
    ("--nx", "nx", int),
    ("--ny", "ny", int),
    ("--lx", "lx", float),
    ("--ly", "ly", float),
    ("--dt", "dt", float),
    ("--t-end", "t_end", float),
    ("--floor", "floor", float),
    ("--seed", "seed", int),
    ("--u0", "u0", float),
    ("--v0", "v0", float),
    ("--w0", "w0", float),
    ("--sigma", "sigma", float),
    ("--diag-interval", "diag_interval", float),
    ("--out-dir", "out_dir", str),
]


def _parse_time_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of times: {text!r}")


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"window must be two comma-separated times, got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be two comma-separated times, got {text!r}")


def _add_override_flags(p: argparse.ArgumentParser) -> None:
    for flag, key, typ in _OVERRIDE_FLAGS:
        p.add_argument(flag, dest=key, type=typ, default=None)
    p.add_argument("--snapshots", dest="snapshot_times", type=_parse_time_list, default=None,
                   help="comma-separated snapshot times, e.g. 10,20,60")
    p.add_argument("--upwind", dest="upwind", action="store_true", default=None,
                   help="upwind density averaging at faces (default: centered)")


def _collect_overrides(args: argparse.Namespace) -> dict:
    keys = [key for _, key, _ in _OVERRIDE_FLAGS] + ["snapshot_times", "upwind"]
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trichemo",
        description="Simulate a three-component chemotaxis system on a rectangle "
        "and monitor its convergence to equilibrium.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a run from a TOML configuration file")
    p_run.add_argument("--config", required=True, help="path to the configuration file")
    _add_override_flags(p_run)

    for name, help_text in (
        ("case1", "preset: weakly singular sensitivity (k = 0.8), t_end = 1000"),
        ("case2", "preset: classical sensitivity (k = 1), t_end = 1600"),
    ):
        p_case = sub.add_parser(name, help=help_text)
        _add_override_flags(p_case)

    p_fit = sub.add_parser("fit", help="recompute decay fits from a diagnostics file")
    p_fit.add_argument("--diagnostics", required=True, help="path to diagnostics.jsonl")
    p_fit.add_argument("--window", required=True, type=_parse_window,
                       help="fit window as t_lo,t_hi")

    p_st = sub.add_parser("stability", help="print the explicit-step advisory for a grid")
    p_st.add_argument("--dt", required=True, type=float)
    p_st.add_argument("--nx", required=True, type=int)
    p_st.add_argument("--lx", required=True, type=float)
    p_st.add_argument("--ny", type=int, default=None, help="defaults to nx")
    p_st.add_argument("--ly", type=float, default=None, help="defaults to lx")

    return parser


def _announce(cfg: runner.RunConfig, defaults_used: bool) -> None:
    p = cfg.params
    if defaults_used:
        print(
            f"note: sensitivities chi1={p.chi1:g} chi2={p.chi2:g} are package defaults, "
            "not part of the preset; override with --chi1/--chi2"
        )
    print(
        f"run: k={p.k:g} chi=({p.chi1:g}, {p.chi2:g}) grid {cfg.nx}x{cfg.ny} "
        f"dt={cfg.dt:g} t_end={cfg.t_end:g} seed={cfg.seed} -> {cfg.out_dir}"
    )


def _execute(cfg: runner.RunConfig, defaults_used: bool) -> int:
    _announce(cfg, defaults_used)
    record = runner.run(cfg)
    final = record.final_diagnostics
    print(
        f"done in {record.duration_s:.2f}s: "
        f"linf distances ({final.linf_u:.3e}, {final.linf_v:.3e}, {final.linf_w:.3e}) "
        f"at t={final.t:g}"
    )
    for name, f in record.fits.items():
        if f is not None:
            print(f"fit {name}: rate={f.rate:.6g} amplitude={f.c_amp:.6g} residual={f.residual:.3g}")
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = runner.load_config(args.config)
    overrides = _collect_overrides(args)
    if overrides:
        flat = runner.config_to_flat_dict(cfg)
        flat.update(overrides)
        cfg = runner.config_from_flat_dict(flat)
    return _execute(cfg, defaults_used=False)


def _cmd_case(args: argparse.Namespace, make_preset) -> int:
    overrides = _collect_overrides(args)
    out_dir = overrides.pop("out_dir", f"runs/{args.command}")
    if "t_end" in overrides and "snapshot_times" not in overrides:
        # keep the preset snapshots that still fit the shortened run
        probe = make_preset(out_dir)
        kept = [t for t in probe.snapshot_times if t <= overrides["t_end"]]
        overrides["snapshot_times"] = kept
    cfg = make_preset(out_dir, **overrides)
    defaults_used = "chi1" not in overrides and "chi2" not in overrides
    return _execute(cfg, defaults_used)


def _cmd_fit(args: argparse.Namespace) -> int:
    records = runner.read_diagnostics(args.diagnostics)
    times = [r.t for r in records]
    series = {
        "sqrt_dissipation_E": [math.sqrt(r.dissipation_E) for r in records],
        "linf_u": [r.linf_u for r in records],
        "linf_v": [r.linf_v for r in records],
        "linf_w": [r.linf_w for r in records],
    }
    out = {}
    for name, ys in series.items():
        try:
            out[name] = runner._fit_to_dict(fit_exponential_rate(times, ys, args.window))
        except ValueError as e:
            out[name] = {"error": str(e)}
    print(json.dumps(out, indent=2))
    if all("error" in entry for entry in out.values()):
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_stability(args: argparse.Namespace) -> int:
    ny = args.ny if args.ny is not None else args.nx
    ly = args.ly if args.ly is not None else args.lx
    grid = make_grid(args.nx, ny, args.lx, ly)
    advisory = check_stability(StepConfig(dt=args.dt), grid)
    print(json.dumps(asdict(advisory), indent=2))
    if not advisory.passed:
        print(advisory.message, file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "case1":
            return _cmd_case(args, runner.case1_config)
        if args.command == "case2":
            return _cmd_case(args, runner.case2_config)
        if args.command == "fit":
            return _cmd_fit(args)
        if args.command == "stability":
            return _cmd_stability(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_FOUND
    except AlignmentError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISALIGNED
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    except BlowupError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BLOWUP
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
