"""Render sweep and overlay results to figure files.

Import order matters: the Agg backend is selected before pyplot so the CLI
works headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_AXIS_LABELS = {
    "distance": "atom-surface distance d (m)",
    "skin_depth": "skin depth (m)",
    "thickness": "film thickness h (m)",
    "temperature": "temperature (K)",
    "frequency": "frequency (Hz)",
}

_RC = {
    "figure.figsize": (5.0, 3.6),
    "figure.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
}


def save_sweep_figure(tables, path, y="tau_loss", logx=True, logy=True,
                      points=None, title=None):
    """Plot lifetime curves from one or more ResultTables and write `path`.

    `tables` is a mapping label -> ResultTable (or a single ResultTable).
    `y` selects the row field to plot ("tau_loss" or "tau_flip"). Optional
    `points` (ExperimentPoint list) are drawn as markers with error bars.
    """
    if not isinstance(tables, dict):
        tables = {"": tables}
    styles = ["-", ":", "--", "-."]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        swept = None
        for (label, table), style in zip(tables.items(), styles * 8):
            swept = table.swept_name
            x = [r.swept_value for r in table.rows]
            vals = [getattr(r, y) for r in table.rows]
            ax.plot(x, vals, style, label=label or None)
        if points:
            ax.errorbar([p.d for p in points], [p.tau_measured for p in points],
                        yerr=[p.err or 0.0 for p in points], fmt="o", ms=4,
                        color="k", capsize=2, label="measured")
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(_AXIS_LABELS.get(swept, swept or ""))
        ax.set_ylabel("lifetime (s)" if y.startswith("tau") else y)
        if title:
            ax.set_title(title)
        if any(tables.keys()) or points:
            ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def save_overlay_figure(rows, path, table=None, title=None):
    """Plot measured points against the model curve and write `path`.

    `rows` are OverlayRows; the optional `table` adds a continuous model
    curve (tau_loss vs distance) behind the points.
    """
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        if table is not None:
            ax.plot([r.swept_value for r in table.rows],
                    [r.tau_loss for r in table.rows], "-", label="model")
        ax.errorbar([r.d for r in rows], [r.tau_measured for r in rows],
                    yerr=[r.err or 0.0 for r in rows], fmt="o", ms=4,
                    color="k", capsize=2, label="measured")
        ax.plot([r.d for r in rows], [r.tau_model for r in rows], "x",
                color="C1", label="model at data points")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel(_AXIS_LABELS["distance"])
        ax.set_ylabel("lifetime (s)")
        if title:
            ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
