"""Rendering of the four figure kinds.

Figures are written as PNG with a pinned style so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import (
    TrajectoryTable,
    read_fit_file,
    read_trajectory_csv,
    read_verdict_csv,
)
from .spec import FigureSpec

STYLE = {
    "figure.figsize": (6.4, 4.2),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "fracwave",
}


def _pick_column(table: TrajectoryTable, column: str | None) -> str:
    if column is not None:
        if column not in table.columns:
            raise KeyError(
                f"{table.path}: column {column!r} not found; "
                f"available: {', '.join(table.columns)}"
            )
        return column
    norms = table.norm_columns()
    if not norms:
        raise KeyError(f"{table.path}: no norm columns (H...) to plot")
    return norms[0]


def _envelope(fit: dict[str, str], t: np.ndarray) -> tuple[np.ndarray, str]:
    model = fit["model"]
    B = float(fit["exponent"])
    C = float(np.exp(float(fit.get("log_prefactor", "0.0"))))
    if model == "power":
        return C * (1.0 + np.abs(t)) ** B, f"{C:.3g}(1+t)^{B:.3g}"
    if model == "exp_t":
        return C * np.exp(B * np.abs(t)), f"{C:.3g}e^({B:.3g}t)"
    if model == "exp_t2":
        return C * np.exp(B * t**2), f"{C:.3g}e^({B:.3g}t^2)"
    raise ValueError(f"unknown fit model {model!r}")


def _alpha_label(table: TrajectoryTable) -> str:
    a = table.metadata.get("alpha")
    return f"alpha = {a}" if a is not None else table.metadata.get("variant", "")


def _group_tables(spec: FigureSpec) -> dict[str, list[TrajectoryTable]]:
    """Tables grouped by the alpha recorded in their metadata preamble."""
    groups: dict[str, list[TrajectoryTable]] = {}
    for path in spec.inputs:
        table = read_trajectory_csv(path)
        key = table.metadata.get("alpha", "?")
        groups.setdefault(key, []).append(table)
    return groups


def _save(fig, spec: FigureSpec) -> str:
    out_dir = os.path.dirname(spec.out_path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    fig.savefig(spec.out_path, dpi=spec.dpi, metadata={"Software": "fracwave-plots"})
    plt.close(fig)
    return spec.out_path


def _render_trajectories(spec: FigureSpec, loglog: bool) -> str:
    groups = _group_tables(spec)
    keys = sorted(groups, key=lambda k: (k == "?", k))
    n = len(keys) if spec.group_by_alpha else 1
    ncols = min(n, 3)
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, squeeze=False,
        figsize=(6.4 * ncols / max(1, min(n, 2)), 4.2 * nrows),
    )
    flat_axes = axes.ravel()

    fit = read_fit_file(spec.fit_path) if spec.fit_path else None
    column = None
    panels = (
        [(k, groups[k]) for k in keys]
        if spec.group_by_alpha
        else [(None, [t for k in keys for t in groups[k]])]
    )
    for ax, (key, tables) in zip(flat_axes, panels):
        for table in tables:
            column = _pick_column(table, spec.column)
            t, y = table.times, table.column(column)
            if loglog:
                keep = t > 0
                t, y = t[keep], y[keep]
                if t.size == 0:
                    raise ValueError(
                        f"{table.path}: no positive times for a log-log plot"
                    )
            label = (
                f"seed {table.metadata['seed']}"
                if spec.group_by_alpha and "seed" in table.metadata
                else _alpha_label(table)
            )
            ax.plot(t, y, label=label)
        if fit is not None:
            tt = np.concatenate([table.times for table in tables])
            tt = np.unique(tt[tt > 0] if loglog else tt)
            env, env_label = _envelope(fit, tt)
            ax.plot(tt, env, "k--", label=f"bound {env_label}")
        if loglog:
            ax.set_xscale("log")
            ax.set_yscale("log")
        else:
            ax.set_xscale(spec.xscale)
            ax.set_yscale(spec.yscale)
        ax.set_xlabel("t")
        ax.set_ylabel(column or "")
        if key is not None:
            ax.set_title(f"alpha = {key}")
        if ax.get_legend_handles_labels()[1]:
            ax.legend(loc="best", fontsize=7)
    for ax in flat_axes[len(panels):]:
        ax.set_visible(False)
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    return _save(fig, spec)


def _render_dispersion_ratio(spec: FigureSpec) -> str:
    fig, ax = plt.subplots()
    for path in spec.inputs:
        table = read_verdict_csv(path)
        N = table.resolution_values()
        order = np.argsort(N)
        label = table.parameters[0] if table.parameters else os.path.basename(path)
        ax.plot(N[order], table.ratio[order], marker="o", label=label)
    ax.set_xscale("log", base=2)
    ax.set_yscale(spec.yscale)
    ax.set_xlabel("N (dyadic block)")
    ax.set_ylabel("sup|kappa_N| t^{1/2} / N^{1-alpha/2}")
    ax.legend(loc="best", fontsize=7)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    return _save(fig, spec)


def _render_ratio_histogram(spec: FigureSpec) -> str:
    fig, ax = plt.subplots()
    for path in spec.inputs:
        table = read_verdict_csv(path)
        label = f"{table.lemma[0]} ({len(table.ratio)} samples)"
        ax.hist(table.ratio, bins=30, alpha=0.6, label=label)
    ax.set_xlabel("lhs / rhs ratio")
    ax.set_ylabel("count")
    ax.legend(loc="best", fontsize=7)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    return _save(fig, spec)


def render(spec: FigureSpec) -> str:
    """Render the figure described by ``spec``; returns the output path."""
    with plt.rc_context(STYLE):
        if spec.kind == "norm_vs_time":
            return _render_trajectories(spec, loglog=False)
        if spec.kind == "loglog_growth":
            return _render_trajectories(spec, loglog=True)
        if spec.kind == "dispersion_ratio":
            return _render_dispersion_ratio(spec)
        if spec.kind == "lemma_ratio_histogram":
            return _render_ratio_histogram(spec)
        raise ValueError(f"unknown plot kind {spec.kind!r}")
