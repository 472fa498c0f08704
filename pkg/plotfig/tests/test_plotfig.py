import shutil
import subprocess

import numpy as np
import pytest

from plotfig import PlotJob, SchemaError, build_figure, render
from plotfig.cli import main


TRACE_CSV = "t,re,im,abs\n1,3,4,5\n1.01,4,3,5\n1.02,0,5,5\n"
HIST_CSV = (
    "bin_lo,bin_hi,count\n"
    "50,52,3\n52,54,10\n54,56,25\n56,58,60\n58,60,90\n"
    "60,62,80\n62,64,45\n64,66,20\n66,68,6\n68,70,1\n"
)


@pytest.fixture
def trace_csv(tmp_path):
    p = tmp_path / "trace.csv"
    p.write_text(TRACE_CSV)
    return p


@pytest.fixture
def hist_csv(tmp_path):
    p = tmp_path / "hist.csv"
    p.write_text(HIST_CSV)
    return p


def test_trace_figure_geometry(trace_csv, tmp_path):
    job = PlotJob("trace", str(trace_csv), str(tmp_path / "t.png"))
    fig = build_figure(job)
    line = fig.axes[0].lines[0]
    assert list(line.get_xdata()) == [3.0, 4.0, 0.0]
    assert list(line.get_ydata()) == [4.0, 3.0, 5.0]


def test_histogram_figure_reference_and_overlay(hist_csv, tmp_path):
    job = PlotJob("histogram", str(hist_csv), str(tmp_path / "h.png"), sqrt_n=59.76, gauss=True)
    fig = build_figure(job)
    ax = fig.axes[0]
    assert len(ax.patches) == 10  # one bar per bin
    vlines = [l for l in ax.lines if list(l.get_xdata()) == [59.76, 59.76]]
    assert len(vlines) == 1
    curves = [l for l in ax.lines if len(l.get_xdata()) > 100]
    assert len(curves) == 1
    peak_x = curves[0].get_xdata()[np.argmax(curves[0].get_ydata())]
    mids = np.array([51, 53, 55, 57, 59, 61, 63, 65, 67, 69], dtype=float)
    counts = np.array([3, 10, 25, 60, 90, 80, 45, 20, 6, 1], dtype=float)
    mean = (mids * counts).sum() / counts.sum()
    assert abs(peak_x - mean) < 0.5  # curve peaks at the weighted mean


def test_render_writes_images(trace_csv, hist_csv, tmp_path):
    t_out = tmp_path / "t.png"
    h_out = tmp_path / "h.svg"
    render(PlotJob("trace", str(trace_csv), str(t_out)))
    render(PlotJob("histogram", str(hist_csv), str(h_out), sqrt_n=59.76))
    assert t_out.stat().st_size > 0
    assert h_out.stat().st_size > 0


def test_render_is_repeatable(trace_csv, tmp_path):
    job = PlotJob("trace", str(trace_csv), str(tmp_path / "t.png"))
    f1 = build_figure(job)
    f2 = build_figure(job)
    assert np.array_equal(f1.axes[0].lines[0].get_xydata(), f2.axes[0].lines[0].get_xydata())


def test_header_mismatch_names_schema(trace_csv, hist_csv, tmp_path, capsys):
    job = PlotJob("histogram", str(trace_csv), str(tmp_path / "x.png"))
    with pytest.raises(SchemaError, match="bin_lo,bin_hi,count"):
        build_figure(job)
    code = main(["trace", str(hist_csv), str(tmp_path / "x.png")])
    assert code == 1
    assert "t,re,im,abs" in capsys.readouterr().err
    assert not (tmp_path / "x.png").exists()


def test_empty_data_is_error_without_output(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("t,re,im,abs\n")
    out = tmp_path / "e.png"
    assert main(["trace", str(empty), str(out)]) == 1
    assert not out.exists()


def test_kind_validation():
    with pytest.raises(ValueError):
        PlotJob("scatter", "a.csv", "b.png")


def test_missing_input_is_io_error(tmp_path):
    assert main(["trace", str(tmp_path / "missing.csv"), str(tmp_path / "x.png")]) == 2


def test_usage_error_exit_code():
    assert hasattr(main, "__call__")
    proc = subprocess.run(["python3", "-m", "plotfig.cli", "bogus-kind", "a", "b"], capture_output=True)
    assert proc.returncode == 1


@pytest.mark.skipif(shutil.which("circhad") is None, reason="analysis CLI not installed")
def test_renders_real_3571_outputs(tmp_path):
    vec = tmp_path / "leg.json"
    rep = tmp_path / "rep.json"
    hist = tmp_path / "hist.csv"
    trace = tmp_path / "trace.csv"
    subprocess.run(
        ["circhad", "construct", "--method", "legendre", "--q", "3571", "--seed", "7",
         "--out", str(vec)],
        check=True,
    )
    subprocess.run(
        ["circhad", "analyze", "--in", str(vec), "--report", str(rep),
         "--hist", str(hist), "--trace", "--trace-out", str(trace)],
        check=True,
    )
    t_img = tmp_path / "trace.png"
    h_img = tmp_path / "hist.png"
    assert main(["trace", str(trace), str(t_img)]) == 0
    assert main(["histogram", str(hist), str(h_img), "--sqrt-n", "59.76", "--gauss"]) == 0
    assert t_img.stat().st_size > 1000
    assert h_img.stat().st_size > 1000
