"""Figure specification parsed from the flat key-value config format."""

from __future__ import annotations

import glob
import os
from dataclasses import dataclass, field

from .reader import read_config

KINDS = ("norm_vs_time", "loglog_growth", "dispersion_ratio", "lemma_ratio_histogram")
SCALES = ("linear", "log")


@dataclass
class FigureSpec:
    kind: str
    inputs: list[str]  # one or more CSV paths, expanded from files or a directory
    out_path: str
    column: str | None = None  # trajectory column, e.g. H0.5
    xscale: str = "linear"
    yscale: str = "linear"
    fit_path: str | None = None
    title: str | None = None
    group_by_alpha: bool = False  # set when the input was a sweep directory
    dpi: int = 100

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(
                f"unknown plot kind {self.kind!r}; expected one of {', '.join(KINDS)}"
            )
        for scale in (self.xscale, self.yscale):
            if scale not in SCALES:
                raise ValueError(f"axis scale must be linear or log, got {scale!r}")
        if not self.inputs:
            raise ValueError("no input files")
        for p in self.inputs:
            if not os.path.isfile(p):
                raise ValueError(f"input file does not exist: {p}")
        if self.fit_path is not None and not os.path.isfile(self.fit_path):
            raise ValueError(f"fit file does not exist: {self.fit_path}")

    @classmethod
    def from_mapping(cls, kv: dict[str, str], base_dir: str = ".") -> "FigureSpec":
        if "kind" not in kv:
            raise ValueError("figure config needs a 'kind' entry")
        if "input" not in kv:
            raise ValueError("figure config needs an 'input' entry")

        raw_inputs = kv["input"].split()
        inputs: list[str] = []
        group = False
        for tok in raw_inputs:
            p = tok if os.path.isabs(tok) else os.path.join(base_dir, tok)
            if os.path.isdir(p):
                found = sorted(glob.glob(os.path.join(p, "*.csv")))
                if not found:
                    raise ValueError(f"sweep directory has no CSV files: {p}")
                inputs.extend(found)
                group = True
            else:
                inputs.append(p)

        out = kv.get("out", "figure.png")
        if not os.path.isabs(out):
            out = os.path.join(base_dir, out)
        fit = kv.get("fit")
        if fit is not None and not os.path.isabs(fit):
            fit = os.path.join(base_dir, fit)

        return cls(
            kind=kv["kind"],
            inputs=inputs,
            out_path=out,
            column=kv.get("column"),
            xscale=kv.get("xscale", "linear"),
            yscale=kv.get("yscale", "linear"),
            fit_path=fit,
            title=kv.get("title"),
            group_by_alpha=group,
            dpi=int(kv.get("dpi", 100)),
        )

    @classmethod
    def from_config_file(cls, path: str) -> "FigureSpec":
        return cls.from_mapping(read_config(path), base_dir=os.path.dirname(path) or ".")
