"""Parameter sweeps over the flip-rate model and tabular (CSV/JSON) emission."""

import io
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .asymptotics import Regime, asymptotic_lifetime, classify_regime
from .config import GridSpec, RunContext
from .layered_green import GreenAccuracyError, im_curlcurl_scattered
from .quadrature import QuadratureSpec
from .quantities import Material, material_skin_depth
from .spin_flip import flip_rate_from_green, free_space_lifetime, trap_loss_rate

CSV_COLUMNS = ("swept_name", "swept_value_si", "gamma_flip", "tau_flip",
               "tau_loss", "tau_asymptotic", "regime", "quad_error")


class DataFileError(Exception):
    """Malformed experimental data file."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    grid: GridSpec
    fixed: RunContext


@dataclass(frozen=True)
class ResultRow:
    swept_value: float
    gamma_flip: float
    tau_flip: float
    tau_loss: float
    tau_asymptotic: Optional[float]
    regime: str
    quad_error: float


@dataclass(frozen=True)
class ResultTable:
    swept_name: str
    rows: tuple


@dataclass(frozen=True)
class ExperimentPoint:
    d: float              # [m]
    tau_measured: float   # [s]
    err: Optional[float] = None

    def __post_init__(self):
        if self.d <= 0 or self.tau_measured <= 0:
            raise DataFileError("distances and lifetimes must be positive")
        if self.err is not None and self.err < 0:
            raise DataFileError("error bars must be non-negative")


def sweep_spec_from_context(ctx: RunContext) -> SweepSpec:
    if ctx.grid is None:
        raise ValueError("context has no sweep grid configured")
    return SweepSpec(variable=ctx.grid.variable, grid=ctx.grid, fixed=ctx)


def grid_values(grid: GridSpec) -> np.ndarray:
    if grid.spacing == "log":
        return np.geomspace(grid.minimum, grid.maximum, grid.points)
    return np.linspace(grid.minimum, grid.maximum, grid.points)


def _point_parameters(spec: SweepSpec, value: float):
    """Resolve (d, film, h, omega, T) for one grid point."""
    ctx = spec.fixed
    d, film, h, omega, T = ctx.d, ctx.material, ctx.h, ctx.omega, ctx.T
    if spec.variable == "distance":
        d = value
    elif spec.variable == "skin_depth":
        film = Material.skin_depth_defined(value, omega)
    elif spec.variable == "thickness":
        h = value
    elif spec.variable == "temperature":
        T = value
    elif spec.variable == "frequency":
        omega = 2.0 * math.pi * value
    else:
        raise ValueError(f"unknown sweep variable {spec.variable!r}")
    return d, film, h, omega, T


def evaluate_point(ctx: RunContext, d: float, film: Material, h: float,
                   omega: float, T: float, swept_value: float,
                   strict: bool = False) -> ResultRow:
    """One full-model evaluation.

    Quadrature non-convergence is recorded in-row (best estimate, error bound
    in quad_error) unless strict=True, which re-raises GreenAccuracyError.
    """
    transition = ctx.transition(omega)
    stack = ctx.stack(film=film, h=h)
    quad = QuadratureSpec(rel_tol=ctx.tol)
    try:
        green = im_curlcurl_scattered(d, omega, stack, quad)
    except GreenAccuracyError as exc:
        if strict:
            raise
        green = exc.best
    gamma = flip_rate_from_green(transition, green, T)
    tau_flip = 1.0 / gamma
    tau_loss = 1.0 / trap_loss_rate(gamma, ctx.loss)

    delta = material_skin_depth(film, omega)
    tau_asym = None
    regime = Regime.CROSSOVER
    if delta is not None:
        inputs = ctx.regime_inputs(d=d, delta=delta, h=h, omega=omega,
                                   tau0=free_space_lifetime(transition))
        regime = classify_regime(inputs)
        if regime is not Regime.CROSSOVER:
            tau_asym = asymptotic_lifetime(inputs, regime)
    return ResultRow(
        swept_value=swept_value, gamma_flip=gamma, tau_flip=tau_flip,
        tau_loss=tau_loss, tau_asymptotic=tau_asym, regime=regime.value,
        quad_error=green.abs_error_estimate)


def run_sweep(spec: SweepSpec) -> ResultTable:
    """Evaluate the model on every grid point, in order, never aborting.

    A point that fails outright is recorded as a row of NaNs with regime
    "error"; quadrature non-convergence keeps the best estimate with its
    error bound in quad_error.
    """
    rows = []
    for value in grid_values(spec.grid):
        value = float(value)
        try:
            d, film, h, omega, T = _point_parameters(spec, value)
            row = evaluate_point(spec.fixed, d, film, h, omega, T, value)
        except Exception:
            row = ResultRow(value, math.nan, math.nan, math.nan, None,
                            "error", math.nan)
        rows.append(row)
    return ResultTable(swept_name=spec.variable, rows=tuple(rows))


def _fmt(x: Optional[float]) -> str:
    if x is None:
        return ""
    return format(x, ".17e")


def emit_table(table: ResultTable, fmt: str = "csv") -> str:
    """Serialize a table; CSV columns are fixed, JSON mirrors them exactly."""
    if not table.rows:
        raise ValueError("cannot emit an empty table")
    if fmt == "csv":
        out = io.StringIO()
        out.write(",".join(CSV_COLUMNS) + "\n")
        for r in table.rows:
            out.write(",".join([
                table.swept_name, _fmt(r.swept_value), _fmt(r.gamma_flip),
                _fmt(r.tau_flip), _fmt(r.tau_loss), _fmt(r.tau_asymptotic),
                r.regime, _fmt(r.quad_error)]) + "\n")
        return out.getvalue()
    if fmt == "json":
        rows = [{
            "swept_name": table.swept_name,
            "swept_value_si": r.swept_value,
            "gamma_flip": r.gamma_flip,
            "tau_flip": r.tau_flip,
            "tau_loss": r.tau_loss,
            "tau_asymptotic": r.tau_asymptotic,
            "regime": r.regime,
            "quad_error": r.quad_error,
        } for r in table.rows]
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}; use 'csv' or 'json'")


def table_from_json(doc: str) -> ResultTable:
    """Rebuild a ResultTable from emit_table(..., 'json') output."""
    rows = json.loads(doc)
    if not rows:
        raise ValueError("empty table document")
    return ResultTable(
        swept_name=rows[0]["swept_name"],
        rows=tuple(ResultRow(r["swept_value_si"], r["gamma_flip"],
                             r["tau_flip"], r["tau_loss"],
                             r["tau_asymptotic"], r["regime"],
                             r["quad_error"]) for r in rows))


def load_experiment_points(text: str) -> list:
    """Parse measured lifetimes: header d_um,tau_s[,err_s], sorted by distance."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise DataFileError("empty data file; expected header d_um,tau_s[,err_s]")
    header = [c.strip() for c in lines[0].split(",")]
    if header not in (["d_um", "tau_s"], ["d_um", "tau_s", "err_s"]):
        raise DataFileError(f"bad header {lines[0]!r}; expected "
                            "d_um,tau_s[,err_s]")
    ncols = len(header)
    points = []
    for rowno, line in enumerate(lines[1:], start=2):
        fields = [c.strip() for c in line.split(",")]
        if len(fields) != ncols:
            raise DataFileError(f"row {rowno}: expected {ncols} columns, got "
                                f"{len(fields)}")
        try:
            values = [float(c) for c in fields]
        except ValueError:
            raise DataFileError(f"row {rowno}: non-numeric field in {line!r}") \
                from None
        try:
            points.append(ExperimentPoint(
                d=values[0] * 1e-6, tau_measured=values[1],
                err=values[2] if ncols == 3 else None))
        except DataFileError as exc:
            raise DataFileError(f"row {rowno}: {exc}") from None
    points.sort(key=lambda p: p.d)
    return points


@dataclass(frozen=True)
class OverlayRow:
    d: float
    tau_measured: float
    tau_model: float
    ratio: float               # tau_model / tau_measured
    err: Optional[float] = None


def overlay_points(ctx: RunContext, points: list) -> list:
    """Pair each measured point with the model loss lifetime at its distance."""
    rows = []
    for p in points:
        row = evaluate_point(ctx, p.d, ctx.material, ctx.h, ctx.omega, ctx.T,
                             swept_value=p.d)
        rows.append(OverlayRow(d=p.d, tau_measured=p.tau_measured,
                               tau_model=row.tau_loss,
                               ratio=row.tau_loss / p.tau_measured, err=p.err))
    return rows


def emit_overlay(rows: list, fmt: str = "csv") -> str:
    if not rows:
        raise ValueError("cannot emit an empty overlay")
    if fmt == "csv":
        out = io.StringIO()
        out.write("d_si,tau_measured,tau_model,ratio_model_over_measured,err_s\n")
        for r in rows:
            out.write(",".join([_fmt(r.d), _fmt(r.tau_measured),
                                _fmt(r.tau_model), _fmt(r.ratio),
                                _fmt(r.err)]) + "\n")
        return out.getvalue()
    if fmt == "json":
        return json.dumps([{
            "d_si": r.d, "tau_measured": r.tau_measured,
            "tau_model": r.tau_model, "ratio_model_over_measured": r.ratio,
            "err_s": r.err} for r in rows], indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}; use 'csv' or 'json'")
