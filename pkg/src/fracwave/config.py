"""Flat key-value experiment configuration.

Format: one ``key = value`` per line, ``#`` starts a comment, blank lines
ignored.  Values are parsed on demand (int, float, list, string); the format
is deliberately parser-free and diff-friendly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dynamics import Variant


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def load_config_file(path: str) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def _floats(value: str) -> list[float]:
    return [float(v) for v in value.replace(",", " ").split()]


def _pairs(value: str) -> list[tuple[float, int]]:
    """Parse 'alpha:n' pairs, e.g. '1.5:0 1.5:1 2:0'."""
    out = []
    for tok in value.replace(",", " ").split():
        a, n = tok.split(":")
        out.append((float(a), int(n)))
    return out


@dataclass
class ExperimentConfig:
    variant: Variant = Variant.FRACTIONAL_NLS
    alpha: float | None = 1.5
    max_mode: int = 32
    dt: float = 1e-3
    T: float = 1.0
    sample_every: int = 10
    sigma: float = 3.0
    amplitude: float = 1.0
    seed: int = 0
    initial_coeffs: list[tuple[int, complex]] | None = None
    norms: list[float] = field(default_factory=lambda: [0.5, 1.0])
    energies: list[tuple[float, int]] = field(default_factory=list)
    out_path: str = "trajectory.csv"

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.max_mode < 4:
            raise ValueError("max_mode must be >= 4")

    @classmethod
    def from_mapping(cls, kv: dict[str, str]) -> "ExperimentConfig":
        cfg = cls.__new__(cls)
        variant = Variant(kv.get("variant", "fractional_nls"))
        alpha = None
        if "alpha" in kv:
            alpha = float(kv["alpha"])
        elif variant in (Variant.FRACTIONAL_NLS,):
            alpha = 1.5
        if variant in (Variant.HALF_WAVE, Variant.QUADRATIC_PAIR):
            alpha = 1.0
        if variant is Variant.SZEGO:
            alpha = None
        initial = None
        if "initial_coeffs" in kv:
            initial = []
            for tok in kv["initial_coeffs"].split():
                k, re, im = tok.split(":")
                initial.append((int(k), complex(float(re), float(im))))
        cfg.__init__(
            variant=variant,
            alpha=alpha,
            max_mode=int(kv.get("max_mode", 32)),
            dt=float(kv.get("dt", 1e-3)),
            T=float(kv.get("T", 1.0)),
            sample_every=int(kv.get("sample_every", 10)),
            sigma=float(kv.get("sigma", 3.0)),
            amplitude=float(kv.get("amplitude", 1.0)),
            seed=int(kv.get("seed", 0)),
            initial_coeffs=initial,
            norms=_floats(kv.get("norms", "0.5 1.0")),
            energies=_pairs(kv["energies"]) if "energies" in kv else [],
            out_path=kv.get("out", "trajectory.csv"),
        )
        return cfg

    def to_mapping(self) -> dict[str, str]:
        kv = {
            "variant": self.variant.value,
            "max_mode": str(self.max_mode),
            "dt": repr(self.dt),
            "T": repr(self.T),
            "sample_every": str(self.sample_every),
            "sigma": repr(self.sigma),
            "amplitude": repr(self.amplitude),
            "seed": str(self.seed),
            "norms": " ".join(repr(s) for s in self.norms),
            "out": self.out_path,
        }
        if self.alpha is not None:
            kv["alpha"] = repr(self.alpha)
        if self.energies:
            kv["energies"] = " ".join(f"{a}:{n}" for a, n in self.energies)
        if self.initial_coeffs:
            kv["initial_coeffs"] = " ".join(
                f"{k}:{c.real!r}:{c.imag!r}" for k, c in self.initial_coeffs
            )
        return kv
