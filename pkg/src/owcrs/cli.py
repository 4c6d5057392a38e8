"""Command-line front end for the sweep experiments and self-checks.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
"""

import argparse
import os
import sys

import numpy as np

from .channel import ChannelMatrix
from .harness import ConfigError, ExperimentConfig, SCHEMES, emit_chart, load_config, \
    run_snr_sweep, run_waist_sweep, write_csv
from .rsma import rs_sum_rate
from .validate import run_all_checks

__all__ = ["cli_main", "main"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _add_sweep_args(parser):
    parser.add_argument("--config", metavar="FILE", help="flat key=value config file")
    parser.add_argument("--drops", type=int, metavar="N", help="Monte-Carlo drops")
    parser.add_argument("--seed", type=int, metavar="S", help="master seed")
    parser.add_argument("--out", metavar="DIR", help="output directory")
    parser.add_argument("--schemes", metavar="A,B,C",
                        help=f"comma-separated subset of {','.join(SCHEMES)}")
    parser.add_argument("--no-shot-noise", action="store_true",
                        help="thermal noise only")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="parallel drop workers (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="owcrs",
        description="Rate-splitting simulator for VCSEL optical wireless downlinks")
    sub = parser.add_subparsers(dest="command", required=True)

    snr = sub.add_parser("sweep-snr", help="mean sum rate vs transmit SNR")
    _add_sweep_args(snr)
    waist = sub.add_parser("sweep-waist", help="mean sum rate vs beam waist")
    _add_sweep_args(waist)

    ev = sub.add_parser("eval", help="rates of one power split on the built-in "
                                     "identity-channel fixture")
    ev.add_argument("--alpha", type=float, default=0.5,
                    help="private power fraction in [0, 1] (default 0.5)")
    ev.add_argument("--ptot", type=float, default=10.0,
                    help="total transmit power (default 10)")

    sub.add_parser("validate", help="run the built-in oracle checks")
    return parser


def _load_sweep_config(args, sweep: str) -> ExperimentConfig:
    from dataclasses import replace

    if args.config:
        cfg = load_config(args.config)
        if cfg.sweep != sweep:
            cfg = replace(cfg, sweep=sweep, grid=None, channel_mode=None)
    else:
        cfg = ExperimentConfig(sweep=sweep)
    if args.drops is not None:
        cfg = replace(cfg, drops=args.drops)
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.out is not None:
        cfg = replace(cfg, out_dir=args.out)
    if args.schemes is not None:
        schemes = tuple(s.strip() for s in args.schemes.split(",") if s.strip())
        cfg = replace(cfg, schemes=schemes)
    if args.no_shot_noise:
        cfg = replace(cfg, noise=replace(cfg.noise, include_shot=False))
    cfg.validate()
    return cfg


def _run_sweep(args, sweep: str) -> int:
    cfg = _load_sweep_config(args, sweep)
    if sweep == "snr":
        result = run_snr_sweep(cfg, jobs=args.jobs)
        stem = "snr_sweep"
    else:
        result = run_waist_sweep(cfg, jobs=args.jobs)
        stem = "waist_sweep"
    os.makedirs(cfg.out_dir, exist_ok=True)
    csv_path = os.path.join(cfg.out_dir, f"{stem}.csv")
    svg_path = os.path.join(cfg.out_dir, f"{stem}.svg")
    write_csv(result, csv_path)
    emit_chart(result, svg_path)
    print(f"{cfg.drops} drops, seed {cfg.seed}, config {result.provenance['config_hash']}")
    for row in result.rows:
        print(f"  {row.scheme:8s} {result.sweep_param}={row.sweep_value:g}: "
              f"{row.mean_sum_rate:.4f} +- {row.stderr:.4f} bits/s/Hz")
    print(f"wrote {csv_path}")
    print(f"wrote {svg_path}")
    return EXIT_OK


def _run_eval(args) -> int:
    if not 0.0 <= args.alpha <= 1.0:
        print("error: --alpha must lie in [0, 1]", file=sys.stderr)
        return EXIT_VALIDATION
    if args.ptot <= 0:
        print("error: --ptot must be positive", file=sys.stderr)
        return EXIT_VALIDATION
    cm = ChannelMatrix(h=np.eye(2), sigma2=1.0)
    ev = rs_sum_rate(cm, args.alpha, args.ptot)
    print(f"identity 2x2 channel, sigma2 = 1, P_T = {args.ptot:g}, alpha = {args.alpha:g}")
    print(f"R_c  = {ev.rate_common:.4f} bits/s/Hz")
    print(f"R_p  = {ev.rate_private:.4f} bits/s/Hz")
    print(f"R_RS = {ev.sum_rate:.4f} bits/s/Hz")
    return EXIT_OK


def _run_validate() -> int:
    results, all_passed = run_all_checks()
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.name}: {res.detail}")
    return EXIT_OK if all_passed else EXIT_VALIDATION


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "sweep-snr":
            return _run_sweep(args, "snr")
        if args.command == "sweep-waist":
            return _run_sweep(args, "waist")
        if args.command == "eval":
            return _run_eval(args)
        if args.command == "validate":
            return _run_validate()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # e.g. a degenerate drop (all-zero channel) under fixed_beam gains
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


def main():
    sys.exit(cli_main())
