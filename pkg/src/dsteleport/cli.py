"""Command-line driver.

Subcommands::

    verify [--config PATH] [--tolerance T] [--nmax N] [--json PATH]
    fig2   [--config PATH] --out PATH [--plot PATH] [--tolerance T] [--nmax N]
    sweep  [--config PATH] --out PATH [--plot PATH] [--tolerance T] [--nmax N]
    cavity [--config PATH] --out PATH [--plot PATH]

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 output I/O error.

``--tolerance`` means the oracle-match bound for ``verify`` (0 is allowed
there and guarantees failure) and the truncation tail tolerance for the
sweep commands.  ``--nmax`` pins the Fock cutoff instead of deriving it
from the tail bound.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import Config, load_config
from .errors import ConfigError
from .sweeps import (
    CAVITY_HEADER,
    FIG2_HEADER,
    SWEEP_HEADER,
    cavity_rows,
    fig2_rows,
    sweep_rows,
    write_csv,
)
from .verify import run_verification

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsteleport",
        description="Teleportation fidelity in an expanding background: "
                    "verification suite and parameter sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run every oracle-equivalence check")
    verify.add_argument("--config", help="configuration file (defaults built in)")
    verify.add_argument("--tolerance", type=float,
                        help="override the oracle-match tolerance (0 forces failure)")
    verify.add_argument("--nmax", type=int, help="pin the Fock cutoff")
    verify.add_argument("--json", dest="json_path",
                        help="also write the machine-readable report here")

    for name, help_text in (
        ("fig2", "fidelity curves: closed form and brute force per grid point"),
        ("sweep", "squeezing diagnostics over the same grid"),
        ("cavity", "entangling amplitudes and channel fidelity vs expansion rate"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="configuration file (defaults built in)")
        cmd.add_argument("--out", required=True, help="output CSV path")
        cmd.add_argument("--plot", help="also render a figure (PNG/PDF by extension)")
        if name != "cavity":
            cmd.add_argument("--tolerance", type=float,
                             help="override the truncation tail tolerance")
            cmd.add_argument("--nmax", type=int, help="pin the Fock cutoff")
    return parser


def _apply_sweep_overrides(cfg: Config, args) -> Config:
    sweep = cfg.sweep
    if getattr(args, "tolerance", None) is not None:
        if not (0.0 < args.tolerance < 1.0):
            raise ConfigError(
                f"truncation tolerance must be in (0, 1), got {args.tolerance}"
            )
        sweep = replace(sweep, tolerance=args.tolerance)
    if getattr(args, "nmax", None) is not None:
        if args.nmax < 1:
            raise ConfigError(f"--nmax must be >= 1, got {args.nmax}")
        sweep = replace(sweep, n_max=args.nmax)
    return replace(cfg, sweep=sweep)


def _run_verify(cfg: Config, args) -> int:
    if args.tolerance is not None and args.tolerance < 0.0:
        raise ConfigError(f"--tolerance must be >= 0, got {args.tolerance}")
    if args.nmax is not None and args.nmax < 1:
        raise ConfigError(f"--nmax must be >= 1, got {args.nmax}")
    report = run_verification(cfg, oracle_tolerance=args.tolerance,
                              n_max_override=args.nmax)
    print(report.format_table())
    if args.json_path:
        try:
            with open(args.json_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(report.to_json() + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.json_path}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _run_table(cfg: Config, args, command: str) -> int:
    if command == "fig2":
        header, rows = FIG2_HEADER, fig2_rows(cfg)
    elif command == "sweep":
        header, rows = SWEEP_HEADER, sweep_rows(cfg)
    else:
        header, rows = CAVITY_HEADER, cavity_rows(cfg)
    try:
        write_csv(args.out, header, rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.plot:
        from . import plotting

        try:
            if command == "cavity":
                plotting.plot_cavity_sweep(rows, args.plot)
            else:
                plotting.plot_fidelity_curves(rows, args.plot)
        except OSError as exc:
            print(f"error: cannot write {args.plot}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.command in ("fig2", "sweep"):
            cfg = _apply_sweep_overrides(cfg, args)
        if args.command == "verify":
            return _run_verify(cfg, args)
        return _run_table(cfg, args, args.command)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
