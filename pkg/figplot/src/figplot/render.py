"""Render experiment CSVs into figures.

Three plot kinds, keyed to the CSV schemas the episwitch CLI emits:

- sweep_vs_jsr:       final_frac_mean vs jsr_lower, guide line at x=1
- timeseries:         every non-t column as a curve over t
- comparator_scatter: product_rho vs jsr_lower with the Y=X diagonal

Axis data are taken verbatim from the named columns; nothing is resampled or
smoothed.  Styling is fixed (size, fonts-by-default, no timestamps) so that
rendered files are diffable.
"""

import csv
import os
from dataclasses import dataclass

import matplotlib
matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "figplot"  # reproducible SVG ids
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["PlotSpec", "render", "read_columns", "KINDS", "MissingColumnError"]

KINDS = ("sweep_vs_jsr", "timeseries", "comparator_scatter")

_REQUIRED = {
    "sweep_vs_jsr": ("jsr_lower", "final_frac_mean"),
    "timeseries": ("t",),
    "comparator_scatter": ("jsr_lower", "product_rho"),
}

_FIGSIZE = (6.4, 4.2)


class MissingColumnError(ValueError):
    """The input CSV lacks a column the plot kind requires."""


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: kind, input CSV, output image, labels, guides."""

    kind: str
    input_csv: str
    output_image: str
    xlabel: str = None
    ylabel: str = None
    title: str = None
    guide_at_one: bool = True
    overwrite: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")


def read_columns(path):
    """CSV -> {column name: float ndarray}; empty data is an error."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV, no header row") from None
        rows = [row for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: CSV has a header but no data rows")
    data = np.empty((len(rows), len(header)))
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise ValueError(f"{path}: row {i + 2} has {len(row)} fields, "
                             f"header has {len(header)}")
        data[i] = [float(x) for x in row]
    return {name: data[:, j] for j, name in enumerate(header)}


def _require(cols, names, path):
    for name in names:
        if name not in cols:
            raise MissingColumnError(f"{path}: required column {name!r} not found "
                                     f"(have: {', '.join(cols)})")


def render(spec):
    """Draw the figure described by spec and write it to spec.output_image."""
    if os.path.exists(spec.output_image) and not spec.overwrite:
        raise FileExistsError(f"{spec.output_image} exists; pass overwrite to replace")
    cols = read_columns(spec.input_csv)
    _require(cols, _REQUIRED[spec.kind], spec.input_csv)

    fig, ax = plt.subplots(figsize=_FIGSIZE)
    try:
        if spec.kind == "sweep_vs_jsr":
            _draw_sweep(ax, cols, spec)
        elif spec.kind == "timeseries":
            _draw_timeseries(ax, cols, spec)
        else:
            _draw_comparator(ax, cols, spec)
        if spec.title:
            ax.set_title(spec.title)
        fig.tight_layout()
        metadata = {"Date": None} if spec.output_image.endswith(".svg") else None
        fig.savefig(spec.output_image, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.output_image


def _draw_sweep(ax, cols, spec):
    order = np.argsort(cols["jsr_lower"], kind="stable")
    x = cols["jsr_lower"][order]
    y = cols["final_frac_mean"][order]
    ax.plot(x, y, marker="o", lw=1.2)
    if spec.guide_at_one:
        ax.axvline(1.0, color="gray", ls="--", lw=1.0)
    ax.set_xlabel(spec.xlabel or "joint spectral radius (lower bound)")
    ax.set_ylabel(spec.ylabel or "final infected fraction")


def _draw_timeseries(ax, cols, spec):
    t = cols["t"]
    for name, series in cols.items():
        if name == "t":
            continue
        ax.plot(t, series, lw=1.0, label=name)
    if len(cols) <= 11:  # legend only while it stays readable
        ax.legend(loc="best", fontsize="small")
    ax.set_xlabel(spec.xlabel or "t")
    ax.set_ylabel(spec.ylabel or "value")


def _draw_comparator(ax, cols, spec):
    x = cols["jsr_lower"]
    y = cols["product_rho"]
    ax.scatter(x, y, s=18)
    lo = min(float(x.min()), float(y.min()))
    hi = max(float(x.max()), float(y.max()))
    pad = 0.05 * (hi - lo) if hi > lo else 0.1
    span = np.array([lo - pad, hi + pad])
    ax.plot(span, span, color="black", lw=1.0, label="Y = X")
    if spec.guide_at_one:
        ax.axvline(1.0, color="gray", ls="--", lw=1.0)
    ax.set_xlabel(spec.xlabel or "joint spectral radius")
    ax.set_ylabel(spec.ylabel or "product spectral radius")
    ax.legend(loc="best", fontsize="small")
