"""Command-line front end.

Subcommands: lifetime (single point), sweep (generic), fig2 and fig3
(distance- and skin-depth-scan presets), overlay (model vs measured data).
Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 data-file error.
"""

import argparse
import sys
from pathlib import Path

from .config import ConfigError, ConfigMissingKeyError, parse_config, with_overrides
from .layered_green import GreenAccuracyError
from .sweep import (DataFileError, ResultRow, ResultTable, SweepSpec,
                    emit_overlay, emit_table, evaluate_point,
                    load_experiment_points, overlay_points, run_sweep,
                    sweep_spec_from_context)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinflip",
        description="Spin-flip lifetimes of trapped atoms above layered "
                    "conducting films.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True, plot=True):
        p.add_argument("--config", type=Path, required=config_required,
                       help="key-value configuration file")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", type=Path, default=None,
                       help="output file (default: stdout)")
        p.add_argument("--tol", type=float, default=None,
                       help="relative quadrature tolerance override")
        if plot:
            p.add_argument("--plot", type=Path, default=None,
                           help="also render a figure to this file")

    p = sub.add_parser("lifetime", help="single-point lifetime")
    add_common(p, plot=False)

    p = sub.add_parser("sweep", help="sweep the variable configured in the file")
    add_common(p)

    p = sub.add_parser("fig2", help="distance-scan preset (thin film on "
                                    "substrate); requires a background rate")
    add_common(p, config_required=True)
    p.add_argument("--data", type=Path, default=None,
                   help="measured points (d_um,tau_s[,err_s]) drawn on the plot")

    p = sub.add_parser("fig3", help="skin-depth-scan preset at fixed height")
    add_common(p, config_required=False)
    p.add_argument("--variant", choices=("thick", "thin", "both"),
                   default="both", help="film variant(s); thin uses h = 1 um")

    p = sub.add_parser("overlay", help="model/measurement ratios per data point")
    add_common(p)
    p.add_argument("--data", type=Path, required=True,
                   help="measured points (d_um,tau_s[,err_s])")
    return parser


def _read_config(path) -> str:
    if path is None:
        return ""
    try:
        return path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _read_data(path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataFileError(f"cannot read data file {path}: {exc}") from exc
    return load_experiment_points(text)


def _apply_tol(ctx, args):
    if args.tol is not None:
        if args.tol <= 0:
            raise ConfigError("--tol must be positive")
        ctx = with_overrides(ctx, tol=args.tol)
    return ctx


def _write(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _single_point_table(ctx) -> ResultTable:
    if ctx.d is None or ctx.material is None:
        raise ConfigMissingKeyError("d", "the lifetime command needs a fully "
                                         "fixed geometry")
    row = evaluate_point(ctx, ctx.d, ctx.material, ctx.h, ctx.omega, ctx.T,
                         swept_value=ctx.d, strict=True)
    return ResultTable(swept_name="distance", rows=(row,))


def _cmd_lifetime(args) -> int:
    ctx = _apply_tol(parse_config(_read_config(args.config)), args)
    _write(emit_table(_single_point_table(ctx), args.format), args.out)
    return 0


def _cmd_sweep(args, preset=None, require_background=False, data=None,
               h_override=None, label="") -> int:
    ctx = parse_config(_read_config(args.config), preset=preset,
                       require_background=require_background)
    ctx = _apply_tol(ctx, args)
    if h_override is not None:
        ctx = with_overrides(ctx, h=h_override)
    if ctx.grid is None:
        raise ConfigError("no sweep configured; set sweep_variable, "
                          "sweep_min, sweep_max, sweep_points")
    table = run_sweep(sweep_spec_from_context(ctx))
    _write(emit_table(table, args.format), args.out)
    if args.plot is not None:
        from . import plotting
        points = _read_data(data) if data is not None else None
        plotting.save_sweep_figure({label: table} if label else table,
                                   args.plot, points=points)
    return 0


def _cmd_fig3(args) -> int:
    import math
    variants = {"thick": math.inf, "thin": 1e-6}
    wanted = list(variants) if args.variant == "both" else [args.variant]
    tables = {}
    for name in wanted:
        ctx = parse_config(_read_config(args.config), preset="fig3")
        ctx = _apply_tol(with_overrides(ctx, h=variants[name]), args)
        tables[name] = run_sweep(sweep_spec_from_context(ctx))
    if args.out is None:
        for name in wanted:
            sys.stdout.write(emit_table(tables[name], args.format))
            sys.stdout.write("\n")
    elif len(wanted) == 1:
        _write(emit_table(tables[wanted[0]], args.format), args.out)
    else:
        for name in wanted:
            target = args.out.with_name(
                f"{args.out.stem}_{name}{args.out.suffix}")
            target.write_text(emit_table(tables[name], args.format))
    if args.plot is not None:
        from . import plotting
        plotting.save_sweep_figure(tables, args.plot, y="tau_flip")
    return 0


def _cmd_overlay(args) -> int:
    ctx = parse_config(_read_config(args.config), preset="fig2",
                       require_background=True)
    ctx = _apply_tol(ctx, args)
    points = _read_data(args.data)
    rows = overlay_points(ctx, points)
    _write(emit_overlay(rows, args.format), args.out)
    if args.plot is not None:
        from . import plotting
        table = None
        if ctx.grid is not None:
            table = run_sweep(sweep_spec_from_context(ctx))
        plotting.save_overlay_figure(rows, args.plot, table=table)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "lifetime":
            return _cmd_lifetime(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "fig2":
            return _cmd_sweep(args, preset="fig2", require_background=True,
                              data=args.data)
        if args.command == "fig3":
            return _cmd_fig3(args)
        if args.command == "overlay":
            return _cmd_overlay(args)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except GreenAccuracyError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return 3
    except DataFileError as exc:
        print(f"data-file error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
