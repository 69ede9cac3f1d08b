"""Capacity-curve data and figure emission.

CSV is the primary artifact (schema ``family,d,k,x,q_closed,q_numeric,gap``,
floats at 10 significant digits, LF line endings); SVG line plots are
rendered alongside with matplotlib.  Output is deterministic: curves are
ordered by (k, x) and the SVG backend is salted with a fixed hash seed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .capacity import closed_form_capacity, compute_capacity  # noqa: E402
from .channels import ChannelSpec  # noqa: E402

CSV_HEADER = ("family", "d", "k", "x", "q_closed", "q_numeric", "gap")

# Fixed color per window/block size so regenerated figures are stable.
CURVE_COLORS = {
    1: "tab:blue",
    2: "tab:orange",
    3: "tab:green",
    4: "tab:red",
    6: "tab:purple",
    12: "tab:brown",
}

FIG1_KS = (1, 2, 3, 4, 6, 12)  # divisors of 12 used for the block family
FIG2_KS = (1, 2, 3, 4, 6)

matplotlib.rcParams["svg.hashsalt"] = "decochan"


@dataclass(frozen=True)
class CurveRow:
    """One (x, capacity) sample of a capacity curve."""

    family: str
    d: int
    k: int
    x: float
    q_closed: float
    q_numeric: float | None = None
    gap: float | None = None


def _fmt(v) -> str:
    return "" if v is None else format(v, ".10g")


def row_to_csv(row: CurveRow) -> list:
    return [
        row.family,
        str(row.d),
        str(row.k),
        _fmt(row.x),
        _fmt(row.q_closed),
        _fmt(row.q_numeric),
        _fmt(row.gap),
    ]


def sweep(
    family: str,
    d: int,
    k: int,
    x_steps: int,
    numeric: bool = False,
    opt_tol: float = 1e-9,
) -> list:
    """Capacity curve sampled at x = i/(x_steps-1), ordered by x ascending."""
    rows = []
    for i in range(x_steps):
        x = i / (x_steps - 1)
        spec = ChannelSpec(family, d, x, k)
        if numeric:
            res = compute_capacity(spec, numeric=True, tol=opt_tol)
            rows.append(
                CurveRow(family, d, k, x, res.q_closed, res.q_numeric, res.gap)
            )
        else:
            rows.append(CurveRow(family, d, k, x, closed_form_capacity(spec)))
    return rows


def write_curve_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row_to_csv(row))


def render_curve_svg(rows, path, title: str, ylabel: str) -> None:
    """One polyline per k on a fixed 800x600 canvas."""
    by_k = {}
    for row in rows:
        by_k.setdefault(row.k, []).append(row)
    # The SVG backend sizes the canvas at 72 pt/inch; this yields an
    # 800x600 viewBox.
    fig, ax = plt.subplots(figsize=(800 / 72, 600 / 72))
    for k in sorted(by_k):
        pts = sorted(by_k[k], key=lambda r: r.x)
        ax.plot(
            [r.x for r in pts],
            [r.q_closed for r in pts],
            label=f"k = {k}",
            color=CURVE_COLORS.get(k),
        )
    ax.set_xlabel("noise parameter x")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.set_xlim(0.0, 1.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def make_figures(out_dir, d: int = 12, x_steps: int = 101) -> dict:
    """Emit fig1 (block family) and fig2 (weak family) as CSV + SVG.

    Returns a mapping of logical names to file paths.
    """
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = {}

    fig1_rows = []
    for k in FIG1_KS:
        fig1_rows.extend(sweep("block", d, k, x_steps))
    paths["fig1.csv"] = os.path.join(out_dir, "fig1.csv")
    write_curve_csv(fig1_rows, paths["fig1.csv"])
    paths["fig1.svg"] = os.path.join(out_dir, "fig1.svg")
    render_curve_svg(
        fig1_rows,
        paths["fig1.svg"],
        title=f"Block-decohering channel capacities, d = {d}",
        ylabel="quantum capacity (bits)",
    )

    fig2_rows = []
    for k in FIG2_KS:
        fig2_rows.extend(sweep("weak", d, k, x_steps))
    paths["fig2.csv"] = os.path.join(out_dir, "fig2.csv")
    write_curve_csv(fig2_rows, paths["fig2.csv"])
    paths["fig2.svg"] = os.path.join(out_dir, "fig2.svg")
    render_curve_svg(
        fig2_rows,
        paths["fig2.svg"],
        title=f"Weakly decohering channel capacities, d = {d}",
        ylabel="coherent information at I/d (bits)",
    )
    return paths
