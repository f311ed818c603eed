import json
import math

import numpy as np
import pytest

from spinflip.config import GridSpec, parse_config, with_overrides
from spinflip.sweep import (CSV_COLUMNS, DataFileError, ExperimentPoint,
                            ResultTable, SweepSpec, emit_overlay, emit_table,
                            load_experiment_points, overlay_points, run_sweep,
                            sweep_spec_from_context, table_from_json)

BASE = "delta = 20 um\nd = 50 um\nf = 560 kHz\nT = 300 K\n"


def small_sweep(points=3, lo=10e-6, hi=100e-6, variable="distance",
                extra=""):
    ctx = parse_config(BASE + extra)
    grid = GridSpec(variable, lo, hi, points, "log")
    ctx = with_overrides(ctx, grid=grid)
    return run_sweep(sweep_spec_from_context(ctx))


class TestRunSweep:
    def test_rows_ordered_by_swept_value(self):
        table = small_sweep(points=5)
        values = [r.swept_value for r in table.rows]
        assert values == sorted(values)
        assert len(table.rows) == 5

    def test_near_degenerate_two_point_sweep(self):
        table = small_sweep(points=2, lo=50e-6, hi=50.0001e-6)
        a, b = table.rows
        assert np.isclose(a.gamma_flip, b.gamma_flip, rtol=1e-3)
        assert np.isclose(a.tau_flip, b.tau_flip, rtol=1e-3)

    def test_lifetimes_positive_and_consistent(self):
        table = small_sweep(points=4)
        for r in table.rows:
            assert r.tau_flip > 0
            assert r.tau_loss > 0
            assert np.isclose(r.gamma_flip * r.tau_flip, 1.0, rtol=1e-12)

    def test_skin_depth_sweep_classifies_regimes(self):
        text = ("d = 50 um\nf = 560 kHz\nT = 300 K\n"
                "sweep_variable = skin_depth\nsweep_min = 0.5 um\n"
                "sweep_max = 2000 um\nsweep_points = 7\n")
        table = run_sweep(sweep_spec_from_context(parse_config(text)))
        regimes = [r.regime for r in table.rows]
        assert regimes[0] == "thick_small_delta"
        assert regimes[-1] == "thick_large_delta"
        assert "crossover" in regimes
        for r in table.rows:
            if r.regime == "crossover":
                assert r.tau_asymptotic is None
            else:
                assert r.tau_asymptotic > 0

    def test_failures_recorded_in_row_never_abort(self):
        # no film material resolvable at fixed points -> every row errors,
        # but the sweep still returns one row per grid value in order
        text = ("d = 50 um\nf = 560 kHz\nT = 300 K\n"
                "sweep_variable = skin_depth\nsweep_min = 1 um\n"
                "sweep_max = 10 um\nsweep_points = 3\n")
        ctx = parse_config(text)
        bad = with_overrides(ctx, grid=GridSpec("thickness", 1e-6, 2e-6, 3))
        table = run_sweep(sweep_spec_from_context(bad))
        assert len(table.rows) == 3
        assert all(r.regime == "error" for r in table.rows)
        assert all(math.isnan(r.gamma_flip) for r in table.rows)

    def test_skin_depth_scan_is_u_shaped(self):
        text = ("d = 50 um\nf = 560 kHz\nT = 300 K\n"
                "sweep_variable = skin_depth\nsweep_min = 0.1 um\n"
                "sweep_max = 1000 um\nsweep_points = 13\n")
        table = run_sweep(sweep_spec_from_context(parse_config(text)))
        taus = np.array([r.tau_flip for r in table.rows])
        signs = np.sign(np.diff(taus))
        # lifetime falls to a single interior minimum and rises again
        assert signs[0] < 0
        assert signs[-1] > 0
        assert np.sum(np.diff(signs) != 0) == 1

    def test_temperature_and_frequency_sweeps_run(self):
        t_table = small_sweep(points=3, lo=100.0, hi=500.0,
                              variable="temperature")
        rates = [r.gamma_flip for r in t_table.rows]
        assert np.all(np.diff(rates) > 0)
        f_table = small_sweep(points=3, lo=200e3, hi=800e3,
                              variable="frequency")
        assert all(r.gamma_flip > 0 for r in f_table.rows)


class TestEmitTable:
    def test_csv_header_and_shape(self):
        table = small_sweep(points=3)
        doc = emit_table(table, "csv")
        lines = doc.strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 4
        assert lines[1].startswith("distance,")

    def test_crossover_field_empty_in_csv_null_in_json(self):
        text = ("d = 50 um\nf = 560 kHz\nT = 300 K\n"
                "sweep_variable = skin_depth\nsweep_min = 40 um\n"
                "sweep_max = 60 um\nsweep_points = 2\n")
        table = run_sweep(sweep_spec_from_context(parse_config(text)))
        assert all(r.regime == "crossover" for r in table.rows)
        csv_doc = emit_table(table, "csv")
        row = csv_doc.strip().split("\n")[1].split(",")
        assert row[CSV_COLUMNS.index("tau_asymptotic")] == ""
        json_rows = json.loads(emit_table(table, "json"))
        assert all(r["tau_asymptotic"] is None for r in json_rows)

    def test_json_round_trip_bit_exact(self):
        table = small_sweep(points=4)
        doc = emit_table(table, "json")
        assert table_from_json(doc) == table

    def test_deterministic_byte_identical(self):
        t1 = small_sweep(points=3)
        t2 = small_sweep(points=3)
        assert emit_table(t1, "csv") == emit_table(t2, "csv")
        assert emit_table(t1, "json") == emit_table(t2, "json")

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            emit_table(ResultTable("distance", ()), "csv")

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="format"):
            emit_table(small_sweep(points=2), "xml")

    def test_full_precision_scientific_notation(self):
        doc = emit_table(small_sweep(points=2), "csv")
        cell = doc.strip().split("\n")[1].split(",")[1]
        assert "e" in cell
        assert float(cell) == 1e-5  # 10 um grid start, exact round trip


class TestExperimentPoints:
    def test_header_only_gives_empty_list(self):
        assert load_experiment_points("d_um,tau_s\n") == []

    def test_well_formed_points_sorted(self):
        rows = ["d_um,tau_s,err_s"] + \
            [f"{d},{t},0.5" for d, t in
             [(30, 12.0), (5, 3.0), (80, 13.0), (2, 0.4), (10, 9.0),
              (50, 12.5), (4, 2.0), (20, 11.0), (7, 6.0), (60, 13.1)]]
        points = load_experiment_points("\n".join(rows) + "\n")
        assert len(points) == 10
        ds = [p.d for p in points]
        assert ds == sorted(ds)
        assert points[0].d == 2e-6
        assert points[0].err == 0.5

    def test_negative_lifetime_rejected_with_row(self):
        with pytest.raises(DataFileError, match="row 3"):
            load_experiment_points("d_um,tau_s\n5,1.0\n7,-2.0\n")

    def test_bad_header(self):
        with pytest.raises(DataFileError, match="header"):
            load_experiment_points("distance,lifetime\n5,1\n")

    def test_non_numeric_field(self):
        with pytest.raises(DataFileError, match="row 2"):
            load_experiment_points("d_um,tau_s\nfive,1.0\n")

    def test_wrong_column_count(self):
        with pytest.raises(DataFileError, match="row 2"):
            load_experiment_points("d_um,tau_s\n5,1.0,0.1\n")

    def test_empty_file(self):
        with pytest.raises(DataFileError):
            load_experiment_points("")


class TestOverlay:
    def test_ratios(self):
        ctx = parse_config(BASE + "background_lifetime = 13 s\n")
        points = [ExperimentPoint(20e-6, 5.0), ExperimentPoint(50e-6, 10.0)]
        rows = overlay_points(ctx, points)
        assert len(rows) == 2
        for row, p in zip(rows, points):
            assert row.d == p.d
            assert np.isclose(row.ratio, row.tau_model / p.tau_measured,
                              rtol=1e-15)

    def test_emit_formats(self):
        ctx = parse_config(BASE)
        rows = overlay_points(ctx, [ExperimentPoint(20e-6, 5.0, 0.4)])
        csv_doc = emit_overlay(rows, "csv")
        assert csv_doc.startswith("d_si,tau_measured,tau_model,"
                                  "ratio_model_over_measured,err_s\n")
        json_rows = json.loads(emit_overlay(rows, "json"))
        assert json_rows[0]["err_s"] == 0.4
        with pytest.raises(ValueError):
            emit_overlay([], "csv")
