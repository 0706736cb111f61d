"""Shared fixtures: reference CSV files produced through the public contracts.

The simulator is exercised only through its installed command-line interface,
never imported, so these tests double as a check of the file contract.
"""

import subprocess

import pytest

RUN_CFG = """
variant = fractional_nls
alpha = 1.5
max_mode = 12
dt = 0.001
T = 0.05
sample_every = 5
sigma = 3.0
seed = 3
norms = 0.5 1.0
"""


def _run(args):
    proc = subprocess.run(["fracwave", *args], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


@pytest.fixture(scope="session")
def reference_dir(tmp_path_factory):
    """One trajectory CSV, one sweep directory, and two verdict CSVs."""
    root = tmp_path_factory.mktemp("reference")
    cfg = root / "run.cfg"
    cfg.write_text(RUN_CFG, encoding="utf-8")

    traj = root / "trajectory.csv"
    _run(["run", "--config", str(cfg), "--out", str(traj)])

    sweep = root / "sweep"
    _run(
        [
            "sweep", "--config", str(cfg), "--alpha", "1.0:0.5:1.5",
            "--seeds", "0..1", "--out", str(sweep), "--threads", "1",
        ]
    )

    disp = root / "dispersion.csv"
    _run(["verify", "dispersion", "--alpha", "0.8", "--out", str(disp)])

    hankel = root / "hankel.csv"
    _run(
        ["verify", "hankel", "--ensemble", "64", "--max-mode", "16",
         "--out", str(hankel)]
    )
    return root
