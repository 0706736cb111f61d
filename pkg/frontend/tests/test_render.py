"""Rendering of every figure kind, plus determinism and error reporting."""

import os

import pytest

from fracwave_plots.render import render
from fracwave_plots.spec import FigureSpec


def spec_for(kind, inputs, out, **kw):
    return FigureSpec(kind=kind, inputs=[str(p) for p in inputs], out_path=str(out), **kw)


def test_spec_validation(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("t,H1\n0,1\n")
    with pytest.raises(ValueError, match="kind"):
        spec_for("pie_chart", [p], tmp_path / "o.png")
    with pytest.raises(ValueError, match="does not exist"):
        spec_for("norm_vs_time", [tmp_path / "nope.csv"], tmp_path / "o.png")
    with pytest.raises(ValueError, match="scale"):
        spec_for("norm_vs_time", [p], tmp_path / "o.png", yscale="cubic")


def test_spec_from_mapping_sweep_dir(tmp_path, reference_dir):
    kv = {
        "kind": "norm_vs_time",
        "input": str(reference_dir / "sweep"),
        "out": "grid.png",
        "column": "H0.5",
    }
    spec = FigureSpec.from_mapping(kv, base_dir=str(tmp_path))
    assert spec.group_by_alpha
    assert len(spec.inputs) == 4
    assert spec.out_path == str(tmp_path / "grid.png")


def test_norm_vs_time_single_trajectory(reference_dir, tmp_path):
    out = tmp_path / "norm.png"
    spec = spec_for(
        "norm_vs_time", [reference_dir / "trajectory.csv"], out, column="H0.5"
    )
    assert render(spec) == str(out)
    assert os.path.getsize(out) > 0


def test_norm_vs_time_constant_norm_flat_line(tmp_path):
    p = tmp_path / "const.csv"
    rows = "\n".join(f"{0.1 * i},2.5" for i in range(20))
    p.write_text("# seed = 0\nt,H1.5\n" + rows + "\n", encoding="utf-8")
    out = tmp_path / "flat.png"
    render(spec_for("norm_vs_time", [p], out))
    assert os.path.getsize(out) > 0


def test_norm_vs_time_with_fit_envelope(reference_dir, tmp_path):
    fit = tmp_path / "fit.txt"
    fit.write_text("model = power\nexponent = 0.2\nlog_prefactor = 0.3\n")
    out = tmp_path / "env.png"
    spec = spec_for(
        "norm_vs_time", [reference_dir / "trajectory.csv"], out,
        column="H0.5", fit_path=str(fit),
    )
    render(spec)
    assert os.path.getsize(out) > 0
    for model in ("exp_t", "exp_t2"):
        fit.write_text(f"model = {model}\nexponent = 0.1\n")
        render(
            spec_for(
                "norm_vs_time", [reference_dir / "trajectory.csv"],
                tmp_path / f"{model}.png", column="H0.5", fit_path=str(fit),
            )
        )


def test_loglog_growth(reference_dir, tmp_path):
    out = tmp_path / "growth.png"
    render(
        spec_for(
            "loglog_growth", [reference_dir / "trajectory.csv"], out, column="H1"
        )
    )
    assert os.path.getsize(out) > 0


def test_sweep_directory_grid(reference_dir, tmp_path):
    sweep = reference_dir / "sweep"
    inputs = sorted(str(sweep / f) for f in os.listdir(sweep))
    out = tmp_path / "grid.png"
    spec = FigureSpec(
        kind="norm_vs_time", inputs=inputs, out_path=str(out),
        column="H0.5", group_by_alpha=True,
    )
    render(spec)
    assert os.path.getsize(out) > 0


def test_dispersion_ratio(reference_dir, tmp_path):
    out = tmp_path / "disp.png"
    render(spec_for("dispersion_ratio", [reference_dir / "dispersion.csv"], out))
    assert os.path.getsize(out) > 0


def test_lemma_ratio_histogram(reference_dir, tmp_path):
    out = tmp_path / "hist.png"
    render(
        spec_for("lemma_ratio_histogram", [reference_dir / "hankel.csv"], out)
    )
    assert os.path.getsize(out) > 0


def test_missing_column_error_names_column(reference_dir, tmp_path):
    spec = spec_for(
        "norm_vs_time", [reference_dir / "trajectory.csv"],
        tmp_path / "x.png", column="H7",
    )
    with pytest.raises(KeyError, match="H7"):
        render(spec)


def test_empty_trajectory_error_names_file(tmp_path):
    p = tmp_path / "empty.csv"
    p.write_text("t,H1\n", encoding="utf-8")
    spec = spec_for("norm_vs_time", [p], tmp_path / "x.png")
    with pytest.raises(ValueError, match="empty.csv"):
        render(spec)


def test_rendering_is_byte_stable(reference_dir, tmp_path):
    outs = []
    for name in ("one.png", "two.png"):
        out = tmp_path / name
        render(
            spec_for(
                "norm_vs_time", [reference_dir / "trajectory.csv"], out,
                column="H0.5",
            )
        )
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
