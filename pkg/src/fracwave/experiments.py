"""Experiment orchestration: seeded runs, CSV persistence, growth fitting.

Determinism contract: a fixed config (including seed) produces byte-identical
CSV files on one platform.  Numbers are written with Python's repr, the
shortest round-trip decimal form of binary64; the random stream comes from
the counter-based Philox generator seeded from the config.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .config import ExperimentConfig
from .dynamics import (
    BlowupError,
    EvolutionSpec,
    PairField,
    Variant,
    conserved_quantities,
    evolve,
    pair_conserved,
    szego_energy,
)
from .energies import modified_energy
from .field import TorusField, from_modes, linf_norm, random_decaying_field, sobolev_norm


@dataclass
class TrajectoryRecord:
    """Tabular record of one run: a header naming every column plus rows."""

    columns: list[str]
    rows: list[list[float]]
    metadata: dict[str, str]

    def column(self, name: str) -> np.ndarray:
        try:
            j = self.columns.index(name)
        except ValueError:
            raise KeyError(
                f"column {name!r} not in record (have {self.columns})"
            ) from None
        return np.array([row[j] for row in self.rows])

    @property
    def times(self) -> np.ndarray:
        return self.column("t")


def initial_field(config: ExperimentConfig) -> TorusField:
    if config.initial_coeffs is not None:
        return from_modes(config.max_mode, dict(config.initial_coeffs))
    return random_decaying_field(
        config.max_mode, config.sigma, config.amplitude, seed=config.seed
    )


def initial_state(config: ExperimentConfig):
    if config.variant is Variant.QUADRATIC_PAIR:
        u1 = random_decaying_field(
            config.max_mode, config.sigma, config.amplitude, seed=config.seed
        )
        u2 = random_decaying_field(
            config.max_mode, config.sigma, config.amplitude, seed=config.seed + 1
        )
        return PairField(u1, u2)
    from .field import szego_project

    u0 = initial_field(config)
    if config.variant is Variant.SZEGO:
        u0 = szego_project(u0)
    return u0


def _columns_for(config: ExperimentConfig) -> list[str]:
    cols = ["t"]
    if config.variant is Variant.QUADRATIC_PAIR:
        for s in config.norms:
            cols.append(f"H{s:g}_u1")
            cols.append(f"H{s:g}_u2")
        cols += ["Linf_u1", "Linf_u2", "Qtilde", "Htilde"]
    else:
        cols += [f"H{s:g}" for s in config.norms]
        cols += ["Linf", "Q", "M", "H"]
        for a, n in config.energies:
            cols.append(f"E_a{a:g}_n{n}")
    return cols


def _row_for(t: float, state, config: ExperimentConfig) -> list[float]:
    row = [t]
    if isinstance(state, PairField):
        for s in config.norms:
            row.append(sobolev_norm(state.u1, s))
            row.append(sobolev_norm(state.u2, s))
        row.append(linf_norm(state.u1))
        row.append(linf_norm(state.u2))
        rep = pair_conserved(state)
        row += [rep.Qtilde, rep.Htilde]
    else:
        for s in config.norms:
            row.append(sobolev_norm(state, s))
        row.append(linf_norm(state))
        if config.variant is Variant.SZEGO:
            rep = conserved_quantities(state, 1.0)
            row += [rep.Q, rep.M, szego_energy(state)]
        else:
            rep = conserved_quantities(state, config.alpha)
            row += [rep.Q, rep.M, rep.H]
        for a, n in config.energies:
            row.append(modified_energy(state, a, n).E)
    return row


def run_experiment(
    config: ExperimentConfig, out_path: str | None = None
) -> TrajectoryRecord:
    """Deterministic run; writes the CSV and returns the in-memory record.

    On solver blow-up the partial CSV is retained with a truncation marker
    and the error is re-raised.
    """
    out_path = out_path or config.out_path
    spec = EvolutionSpec(
        config.variant,
        config.alpha if config.variant is Variant.FRACTIONAL_NLS else None,
    )
    state0 = initial_state(config)
    columns = _columns_for(config)
    metadata = dict(config.to_mapping())
    metadata["fracwave_version"] = __version__
    metadata["numpy_version"] = np.__version__

    rows: list[list[float]] = []
    record = TrajectoryRecord(columns=columns, rows=rows, metadata=metadata)
    try:
        traj = evolve(state0, spec, config.T, config.dt, config.sample_every)
        for t, state in zip(traj.times, traj.states):
            rows.append(_row_for(t, state, config))
    except BlowupError as err:
        partial = getattr(err, "trajectory", None)
        if partial is not None:
            for t, state in zip(partial.times, partial.states):
                rows.append(_row_for(t, state, config))
        if out_path:
            write_csv(record, out_path, truncated_at=err.last_valid_time)
        raise
    if out_path:
        write_csv(record, out_path)
    return record


def write_csv(
    record: TrajectoryRecord, path: str, truncated_at: float | None = None
) -> None:
    lines = [f"# {k} = {v}" for k, v in sorted(record.metadata.items())]
    lines.append(",".join(record.columns))
    for row in record.rows:
        lines.append(",".join(repr(float(v)) for v in row))
    if truncated_at is not None:
        lines.append(f"# TRUNCATED: solver blow-up, last valid t = {truncated_at!r}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path: str) -> TrajectoryRecord:
    metadata: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body and not body.startswith("TRUNCATED"):
                    k, v = body.split("=", 1)
                    metadata[k.strip()] = v.strip()
                continue
            if not line:
                continue
            if columns is None:
                columns = line.split(",")
            else:
                rows.append([float(v) for v in line.split(",")])
    if columns is None:
        raise ValueError(f"{path}: no header row found")
    return TrajectoryRecord(columns=columns, rows=rows, metadata=metadata)


@dataclass(frozen=True)
class GrowthFit:
    model: str  # power | exp_t | exp_t2
    exponent: float
    log_prefactor: float
    residual: float  # rms residual of the least-squares fit in log space


def fit_growth(record: TrajectoryRecord, s: float, model: str) -> GrowthFit:
    """Least-squares fit of log ||u(t)||_{H^s} against the model's regressor.

    power:  log y ~ A log(1+t);  exp_t: log y ~ B t;  exp_t2: log y ~ B t^2.
    The fitted exponent is an observation, never a claim that the matching
    a-priori upper bound is attained.
    """
    cols = record.columns
    name = f"H{s:g}" if f"H{s:g}" in cols else f"H{s:g}_u1"
    y = record.column(name)
    t = record.times
    tpos = t[t > 0]
    spans_decades = tpos.size >= 2 and tpos.max() / tpos.min() >= 100.0
    if len(t) < 100 and not spans_decades:
        raise ValueError("record too short: need >= 100 samples or 2 decades of t")
    if np.any(y <= 0):
        raise ValueError("norms must be positive to fit in log space")
    regressors = {
        "power": np.log1p(np.abs(t)),
        "exp_t": np.abs(t),
        "exp_t2": t**2,
    }
    if model not in regressors:
        raise ValueError(f"unknown model {model!r}")
    x = regressors[model]
    coef, res = np.polyfit(x, np.log(y), 1, full=True)[:2]
    rms = float(np.sqrt(res[0] / len(t))) if len(res) else 0.0
    return GrowthFit(
        model=model, exponent=float(coef[0]), log_prefactor=float(coef[1]), residual=rms
    )


def _sweep_cell(args) -> str:
    base_kv, alpha, seed, out_dir = args
    cfg = ExperimentConfig.from_mapping(base_kv)
    cfg.alpha = alpha
    cfg.seed = seed
    name = f"sweep_a{alpha:g}_s{seed}.csv"
    path = os.path.join(out_dir, name)
    # metadata records the basename so sweep cells are directory-independent
    cfg.out_path = name
    run_experiment(cfg, path)
    return path


def run_sweep(
    base: ExperimentConfig,
    alphas: list[float],
    seeds: list[int],
    out_dir: str,
    threads: int = 1,
) -> list[str]:
    """One CSV per (alpha, seed) cell; parallel result equals serial result."""
    os.makedirs(out_dir, exist_ok=True)
    kv = base.to_mapping()
    tasks = [(kv, a, s, out_dir) for a in alphas for s in seeds]
    if threads <= 1:
        return [_sweep_cell(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_sweep_cell, tasks))
