"""Readers for the public fracwave file contracts.

Implemented from the documented formats (not by importing the simulator):

* trajectory CSV: ``# key = value`` metadata preamble, one header row, float
  rows; a trailing ``# TRUNCATED: ...`` line may follow a blown-up run.
* verdict CSV: header ``lemma,parameters,ratio,resolution`` and string rows.
* config / fit files: flat ``key = value`` lines with ``#`` comments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class TrajectoryTable:
    path: str
    columns: list[str]
    data: np.ndarray  # shape (n_rows, n_columns)
    metadata: dict[str, str]
    truncated: bool = False

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise KeyError(
                f"{self.path}: column {name!r} not found; "
                f"available: {', '.join(self.columns)}"
            )
        return self.data[:, self.columns.index(name)]

    @property
    def times(self) -> np.ndarray:
        return self.column("t")

    def norm_columns(self) -> list[str]:
        return [c for c in self.columns if c.startswith("H")]


def read_trajectory_csv(path: str) -> TrajectoryTable:
    metadata: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    truncated = False
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("TRUNCATED"):
                    truncated = True
                elif "=" in body:
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
    if not rows:
        raise ValueError(f"{path}: trajectory is empty (no data rows)")
    data = np.array(rows, dtype=float)
    return TrajectoryTable(
        path=path, columns=columns, data=data, metadata=metadata,
        truncated=truncated,
    )


@dataclass
class VerdictTable:
    path: str
    lemma: list[str]
    parameters: list[str]
    ratio: np.ndarray
    resolution: list[str]

    def resolution_values(self) -> np.ndarray:
        """Numeric part of entries like 'N=64' or 'K=32' (nan if absent)."""
        out = []
        for r in self.resolution:
            tail = r.split("=", 1)[1] if "=" in r else r
            try:
                out.append(float(tail))
            except ValueError:
                out.append(float("nan"))
        return np.array(out)


def read_verdict_csv(path: str) -> VerdictTable:
    lemma, params, ratios, resolution = [], [], [], []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "lemma,parameters,ratio,resolution":
            raise ValueError(f"{path}: not a verdict CSV (header {header!r})")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            a, b, c, d = line.split(",", 3)
            lemma.append(a)
            params.append(b)
            ratios.append(float(c))
            resolution.append(d)
    if not ratios:
        raise ValueError(f"{path}: verdict file has no rows")
    return VerdictTable(path, lemma, params, np.array(ratios), resolution)


def read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}:{lineno}: expected 'key = value', got {raw!r}"
                )
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def read_fit_file(path: str) -> dict[str, str]:
    """Fit parameters as key=value pairs, one per line or space-separated.

    Accepts both the config-style layout and the single line printed by the
    simulator's fit subcommand (``model=power exponent=... residual=...``).
    """
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split() if line.count("=") > 1 else [line]
            for tok in tokens:
                if "=" not in tok:
                    raise ValueError(f"{path}: cannot parse fit token {tok!r}")
                k, v = tok.split("=", 1)
                out[k.strip()] = v.strip()
    if "model" not in out or "exponent" not in out:
        raise ValueError(f"{path}: fit file needs at least model and exponent")
    return out
