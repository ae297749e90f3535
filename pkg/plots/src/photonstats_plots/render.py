"""Turn photonstats sweep CSVs into publication-style figures.

Three figure kinds:

  heatmap    two-axis sweep as a colour map.  Correlation observables
             (g2..g6) use a diverging colormap centred at the Poissonian
             value 1 (blue below, red above), on a log or linear scale;
             other observables use a sequential map.
  cut        one-axis sweep as a line plot (log y for correlations).
  phase-map  heatmap specialised to the external-laser (F, phi) plane,
             with the phase axis labelled in units of pi.

Cells flagged by the sweep engine (undefined / error) are rendered in a
flat grey distinct from every colormap colour; feature polylines from the
JSON sidecar are overlaid as solid (level-pinned, C*) and dashed
(interference, U*) lines, blue for antibunching and red for bunching,
following the usual map styling.

Rendering is a pure function of the input files: identical inputs give
byte-identical images for a fixed matplotlib version.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import TwoSlopeNorm

UNDEFINED_GREY = (0.55, 0.55, 0.55)

FEATURE_STYLE = {
    "CA": {"color": "#1f4e9c", "linestyle": "-"},
    "CB": {"color": "#b2182b", "linestyle": "-"},
    "UA": {"color": "#1f4e9c", "linestyle": "--"},
    "UB": {"color": "#b2182b", "linestyle": "--"},
}

CORRELATION_OBSERVABLES = {"g2", "g3", "g4", "g5", "g6"}


class SchemaError(ValueError):
    """Input files do not look like photonstats sweep outputs."""


@dataclass
class SweepData:
    axes: list                 # axis column names (1 or 2)
    axis_values: list          # sorted unique values per axis
    observables: list
    grid: dict                 # observable -> masked 2D array (or 1D)
    status: np.ndarray
    meta: dict = None

    @property
    def n_axes(self):
        return len(self.axes)


@dataclass
class FigureSpec:
    csv_path: str
    kind: str = "heatmap"            # heatmap | cut | phase-map
    observable: str = "g2"
    scale: str = "log"               # log | linear
    meta_path: str = None
    overlay: bool = False
    out_path: str = "figure.png"
    title: str = None
    dpi: int = 150


def load_sweep(csv_path, meta_path=None) -> SweepData:
    """Parse a sweep CSV (+ optional sidecar) into gridded masked arrays."""
    if not os.path.exists(csv_path):
        raise SchemaError(f"no such file: {csv_path}")
    with open(csv_path) as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{csv_path} is empty")
        rows = list(reader)
    if "status" not in header or "raw_moment" not in header:
        raise SchemaError(
            f"{csv_path} lacks the status/raw_moment columns of a "
            "photonstats sweep")
    status_idx = header.index("status")
    # axis columns come first; observables sit between axes and status
    meta = None
    if meta_path:
        with open(meta_path) as fh:
            meta = json.load(fh)
        if meta.get("schema") not in ("photonstats-sweep-v1",
                                      "photonstats-features-v1"):
            raise SchemaError(f"{meta_path} carries an unknown schema tag")
        n_axes = len(meta["axes"])
    else:
        # heuristics: known observable names bound the axis columns
        known = CORRELATION_OBSERVABLES | {"n", "I0", "I1", "I2", "J0", "J1",
                                           "J2", "J3", "J4", "nnorm2",
                                           "nnorm3", "nnorm4", "nnorm5"}
        n_axes = 0
        while (n_axes < status_idx and header[n_axes] not in known):
            n_axes += 1
    axis_names = header[:n_axes]
    obs_names = header[n_axes:status_idx]
    if not axis_names or not obs_names:
        raise SchemaError(f"cannot identify axes/observables in {csv_path}")

    cols = {name: [] for name in header[:status_idx]}
    status = []
    for row in rows:
        if len(row) < status_idx + 1:
            raise SchemaError(f"malformed row in {csv_path}: {row!r}")
        for name, val in zip(header[:status_idx], row):
            cols[name].append(float(val) if val != "" else np.nan)
        status.append(row[status_idx])
    status = np.asarray(status)

    axis_vals = [np.unique(np.asarray(cols[a])) for a in axis_names]
    shape = tuple(len(v) for v in axis_vals)
    if int(np.prod(shape)) != len(rows):
        raise SchemaError(
            f"{csv_path}: grid is not complete ({shape} vs {len(rows)} rows)")
    index = []
    for a, vals in zip(axis_names, axis_vals):
        lookup = {v: i for i, v in enumerate(vals)}
        index.append([lookup[v] for v in cols[a]])
    flat_ok = status == "ok"
    grids = {}
    for obs in obs_names:
        arr = np.full(shape, np.nan)
        arr[tuple(np.asarray(ix) for ix in index)] = cols[obs]
        mask = np.ones(shape, dtype=bool)
        mask[tuple(np.asarray(ix) for ix in index)] = ~flat_ok
        grids[obs] = np.ma.masked_array(arr, mask=mask | ~np.isfinite(arr))
    stat_grid = np.full(shape, "ok", dtype=object)
    stat_grid[tuple(np.asarray(ix) for ix in index)] = status
    return SweepData(axes=axis_names, axis_values=axis_vals,
                     observables=obs_names, grid=grids, status=stat_grid,
                     meta=meta)


def _diverging_norm(values, scale):
    vals = values.compressed() if np.ma.isMaskedArray(values) else values
    vals = vals[np.isfinite(vals)]
    if scale == "log":
        vals = vals[vals > 0]
        if vals.size == 0:
            return None, None
        logs = np.log10(vals)
        lo, hi = float(logs.min()), float(logs.max())
        lo, hi = min(lo, -0.05), max(hi, 0.05)
        return TwoSlopeNorm(vmin=lo, vcenter=0.0, vmax=hi), "log10"
    lo, hi = float(vals.min()), float(vals.max())
    lo, hi = min(lo, 1.0 - 1e-6), max(hi, 1.0 + 1e-6)
    return TwoSlopeNorm(vmin=lo, vcenter=1.0, vmax=hi), "linear"


def _overlay_features(ax, meta, xlim, ylim):
    drawn = set()
    for feat in (meta or {}).get("features", []):
        style = FEATURE_STYLE.get(feat["kind"])
        if style is None or not feat["points"]:
            continue
        pts = np.asarray(feat["points"], dtype=float)
        if pts.shape[1] < 2:
            continue
        label = feat["kind"] if feat["kind"] not in drawn else None
        drawn.add(feat["kind"])
        if feat.get("exact") or len(pts) <= 2:
            ax.plot(pts[:, 0], pts[:, 1], linestyle="", marker="*",
                    markersize=11, color=style["color"],
                    markeredgecolor="white", label=label, zorder=5)
        else:
            ax.plot(pts[:, 0], pts[:, 1], lw=1.2, label=label, zorder=4,
                    **style)
    ax.set_xlim(*xlim)
    ax.set_ylim(*ylim)
    if drawn:
        ax.legend(loc="upper right", fontsize=7, framealpha=0.85)


def _render_heatmap(data, spec, ax, phase_axis=False):
    obs = spec.observable
    if obs not in data.grid:
        raise SchemaError(f"observable {obs!r} not in {data.observables}")
    values = data.grid[obs].T  # rows = second axis
    x, y = data.axis_values
    diverging = obs in CORRELATION_OBSERVABLES
    if diverging:
        norm, tag = _diverging_norm(values, spec.scale)
        plotted = np.ma.log10(values) if tag == "log10" else values
        cmap = plt.get_cmap("RdBu_r").copy()
        label = f"log10 {obs}" if tag == "log10" else obs
    else:
        norm, cmap = None, plt.get_cmap("viridis").copy()
        plotted, label = values, obs
        if spec.scale == "log":
            plotted = np.ma.log10(values)
            label = f"log10 {obs}"
    cmap.set_bad(UNDEFINED_GREY)
    mesh = ax.pcolormesh(x, y, plotted, norm=norm, cmap=cmap,
                         shading="nearest", rasterized=True)
    plt.colorbar(mesh, ax=ax, label=label)
    xname, yname = data.axes
    if phase_axis and yname == "phi":
        ticks = np.arange(0.0, 2.01, 0.5) * np.pi
        ax.set_yticks([t for t in ticks if y.min() - 0.1 <= t <= y.max() + 0.1])
        ax.set_yticklabels([f"{t/np.pi:g}π" for t in ax.get_yticks()])
        yname = "phi (rad)"
    ax.set_xlabel(xname)
    ax.set_ylabel(yname)
    if spec.overlay:
        _overlay_features(ax, data.meta, (x.min(), x.max()),
                          (y.min(), y.max()))


def _render_cut(data, spec, ax):
    obs = spec.observable
    if obs not in data.grid:
        raise SchemaError(f"observable {obs!r} not in {data.observables}")
    x = data.axis_values[0]
    values = data.grid[obs]
    if x.size == 1:
        ax.plot(x, values, marker="o", markersize=9, color="#1f4e9c")
    else:
        ax.plot(x, values, lw=1.3, color="#1f4e9c")
        bad = np.ma.getmaskarray(values)
        if bad.any():
            for xb in x[bad]:
                ax.axvline(xb, color=UNDEFINED_GREY, lw=3, alpha=0.6,
                           zorder=0)
    if obs in CORRELATION_OBSERVABLES:
        if spec.scale == "log":
            ax.set_yscale("log")
        ax.axhline(1.0, color="0.4", lw=0.8, ls=":")
    ax.set_xlabel(data.axes[0])
    ax.set_ylabel(obs)


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path."""
    data = load_sweep(spec.csv_path, spec.meta_path)
    if spec.kind in ("heatmap", "phase-map"):
        if data.n_axes != 2:
            raise SchemaError(f"{spec.kind} needs a two-axis sweep, got "
                              f"{data.n_axes} axes")
    elif spec.kind == "cut":
        if data.n_axes != 1:
            raise SchemaError("cut needs a one-axis sweep")
    else:
        raise SchemaError(f"unknown figure kind {spec.kind!r}")

    fig, ax = plt.subplots(figsize=(5.4, 4.2), constrained_layout=True)
    if spec.kind == "cut":
        _render_cut(data, spec, ax)
    else:
        _render_heatmap(data, spec, ax, phase_axis=spec.kind == "phase-map")
    if spec.title:
        ax.set_title(spec.title, fontsize=10)
    out = spec.out_path
    os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
    fig.savefig(out, dpi=spec.dpi, metadata=_metadata_for(out))
    plt.close(fig)
    return out


def _metadata_for(path):
    # strip the library version stamp so identical inputs give identical bytes
    if path.lower().endswith(".png"):
        return {"Software": None}
    if path.lower().endswith(".svg"):
        return {"Date": None, "Creator": None}
    return None


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="photonstats-plots",
        description="Render photonstats sweep CSVs to PNG/SVG figures")
    parser.add_argument("csv", help="sweep CSV file")
    parser.add_argument("-o", "--out", default="figure.png")
    parser.add_argument("--kind", choices=("heatmap", "cut", "phase-map"),
                        default="heatmap")
    parser.add_argument("--observable", default="g2")
    parser.add_argument("--scale", choices=("log", "linear"), default="log")
    parser.add_argument("--meta", default=None,
                        help="JSON sidecar (enables --overlay)")
    parser.add_argument("--overlay", action="store_true",
                        help="draw feature polylines from the sidecar")
    parser.add_argument("--title", default=None)
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, kind=args.kind,
                      observable=args.observable, scale=args.scale,
                      meta_path=args.meta, overlay=args.overlay,
                      out_path=args.out, title=args.title, dpi=args.dpi)
    try:
        out = render(spec)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    print(f"figure -> {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
