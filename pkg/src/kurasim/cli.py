"""Command-line front end: simulate, sweep, thresholds, fixedpoint, serve."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .fixed_point import solve_fixed_point
from .scenario import ConfigError, build_scenario, load_config, run_scenario, sweep
from .service import serve
from .thresholds import threshold_report


def _apply_seed_override(cfg, seed: int | None):
    """--seed N retunes random draws: omega gets N, theta0 gets N + 1.

    Distinct values keep the two draws on unrelated streams; explicit
    (non-random) specs are left untouched.
    """
    if seed is None:
        return cfg
    omega = cfg.omega if cfg.omega.kind == "explicit" else replace(cfg.omega, seed=int(seed))
    theta0 = cfg.theta0 if cfg.theta0.kind == "explicit" else replace(cfg.theta0, seed=int(seed) + 1)
    return replace(cfg, omega=omega, theta0=theta0)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, metavar="PATH", help="scenario config (TOML)")
    parser.add_argument("--out", metavar="DIR", default=None, help="directory for output files")
    parser.add_argument("--seed", type=int, default=None, help="override random seeds (omega: N, theta0: N+1)")
    parser.add_argument("--quiet", action="store_true", help="suppress stdout summaries")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kurasim", description="Coupled-oscillator simulation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one scenario and summarize it")
    _add_common(p_sim)

    p_sweep = sub.add_parser("sweep", help="run a scenario across parameter values")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", choices=("K", "n"), default="K", help="parameter to vary")
    p_sweep.add_argument("--values", required=True, help="comma-separated values, e.g. 0.5,1,2,3")
    p_sweep.add_argument("--workers", type=int, default=1, help="concurrent rows")

    p_thr = sub.add_parser("thresholds", help="print analytic coupling bounds for a scenario's network")
    _add_common(p_thr)
    p_thr.add_argument("--epsilon", type=float, default=None, help="arc half-margin for the invariance bound")

    p_fp = sub.add_parser("fixedpoint", help="solve for a phase-locked state")
    _add_common(p_fp)

    p_serve = sub.add_parser("serve", help="stream a live steerable session over TCP")
    _add_common(p_serve)
    p_serve.add_argument("--port", type=int, default=0, help="port to bind (0 picks a free one)")
    p_serve.add_argument("--no-pace", action="store_true", help="run flat out instead of ~30 frames/s")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _apply_seed_override(load_config(args.config), args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "simulate":
            _, summary = run_scenario(cfg, out_dir=args.out)
            if not args.quiet:
                print(summary.to_json(), end="")
            return 0

        if args.command == "sweep":
            values = [float(v) if args.param == "K" else int(v) for v in args.values.split(",") if v.strip()]
            rows = sweep(cfg, args.param, values, workers=args.workers, out_dir=args.out)
            text = json.dumps(rows, indent=2) + "\n"
            if args.out is not None:
                out = Path(args.out)
                out.mkdir(parents=True, exist_ok=True)
                (out / "sweep_summary.json").write_text(text, encoding="utf-8")
            if not args.quiet:
                print(text, end="")
            return 0

        if args.command == "thresholds":
            network, _ = build_scenario(cfg)
            epsilon = args.epsilon if args.epsilon is not None else cfg.epsilon
            report = threshold_report(network, epsilon=epsilon)
            if not args.quiet:
                print(json.dumps(report.to_dict(), indent=2))
            return 0

        if args.command == "fixedpoint":
            network, _ = build_scenario(cfg)
            result = solve_fixed_point(network)
            if not args.quiet:
                print(json.dumps(result.to_dict(), indent=2))
            return 0 if result.converged else 1

        if args.command == "serve":
            session = serve(cfg, port=args.port, pace=not args.no_pace)
            host, port = session.host, session._listener.getsockname()[1]
            print(json.dumps({"type": "listening", "host": host, "port": port}), flush=True)
            session.wait()
            return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())
