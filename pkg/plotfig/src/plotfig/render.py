"""File-to-file rendering of the two CSV kinds the analysis CLI emits.

* trace CSV (header ``t,re,im,abs``): the complex values p(e^{it}) over a
  t-window, drawn as a connected planar curve in the (re, im) plane.
* histogram CSV (header ``bin_lo,bin_hi,count``): eigenvalue-moduli bins,
  drawn as bars, optionally with a vertical reference line at sqrt(n) and
  a normal curve matched to the bin-weighted sample mean and stddev (a
  visual overlay, not a fit).

Rendering is pure: parse, build the figure, save. Nothing is written when
the input fails validation, so a bad CSV never leaves a zero-byte image.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

TRACE_HEADER = ["t", "re", "im", "abs"]
HIST_HEADER = ["bin_lo", "bin_hi", "count"]
KINDS = ("trace", "histogram")


class SchemaError(ValueError):
    """CSV header does not match the schema the kind requires."""


@dataclass(frozen=True)
class PlotJob:
    kind: str
    csv_path: str
    out_path: str
    sqrt_n: float | None = None
    gauss: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("kind must be one of %s, got %r" % (KINDS, self.kind))


def _read_rows(path: str, expected_header: list[str], kind: str) -> list[list[str]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if not rows or rows[0] != expected_header:
        got = ",".join(rows[0]) if rows else "<empty file>"
        raise SchemaError(
            "%s input needs header '%s', got '%s'" % (kind, ",".join(expected_header), got)
        )
    if len(rows) == 1:
        raise ValueError("%s input has a header but no data rows" % kind)
    return rows[1:]


def load_trace(path: str) -> np.ndarray:
    """Rows of (t, re, im, abs) as a float array."""
    rows = _read_rows(path, TRACE_HEADER, "trace")
    return np.array([[float(v) for v in row] for row in rows])


def load_histogram(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(bin_lo, bin_hi, count) arrays."""
    rows = _read_rows(path, HIST_HEADER, "histogram")
    data = np.array([[float(v) for v in row] for row in rows])
    return data[:, 0], data[:, 1], data[:, 2]


def _trace_figure(job: PlotJob):
    data = load_trace(job.csv_path)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(data[:, 1], data[:, 2], lw=0.8, color="black")
    ax.set_xlabel("Re p(e^{it})")
    ax.set_ylabel("Im p(e^{it})")
    ax.set_title("trace, t in [%g, %g]" % (data[0, 0], data[-1, 0]))
    ax.set_aspect("equal", adjustable="datalim")
    return fig


def _histogram_figure(job: PlotJob):
    lo, hi, counts = load_histogram(job.csv_path)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(lo, counts, width=hi - lo, align="edge", color="#6699cc", edgecolor="white")
    if job.sqrt_n is not None:
        ax.axvline(job.sqrt_n, color="red", lw=1.5, label="sqrt(n) = %g" % job.sqrt_n)
    if job.gauss:
        mid = 0.5 * (lo + hi)
        total = counts.sum()
        if total <= 1:
            raise ValueError("gaussian overlay needs at least two counted samples")
        mean = float((counts * mid).sum() / total)
        var = float((counts * (mid - mean) ** 2).sum() / (total - 1))
        std = math.sqrt(var)
        if std <= 0:
            raise ValueError("gaussian overlay needs nonzero spread")
        width = float(np.mean(hi - lo))
        x = np.linspace(lo[0], hi[-1], 400)
        y = total * width * np.exp(-0.5 * ((x - mean) / std) ** 2) / (std * math.sqrt(2 * math.pi))
        ax.plot(x, y, color="darkorange", lw=2.0, label="normal(%0.2f, %0.2f)" % (mean, std))
    if job.sqrt_n is not None or job.gauss:
        ax.legend()
    ax.set_xlabel("|eigenvalue|")
    ax.set_ylabel("count")
    ax.set_title("moduli at roots of unity")
    return fig


def build_figure(job: PlotJob):
    """Parse the CSV and build the matplotlib figure (no file output)."""
    if job.kind == "trace":
        return _trace_figure(job)
    return _histogram_figure(job)


def render(job: PlotJob) -> str:
    """Build and save the figure; returns the output path."""
    fig = build_figure(job)
    try:
        fig.savefig(job.out_path, dpi=150)
    finally:
        plt.close(fig)
    return job.out_path
