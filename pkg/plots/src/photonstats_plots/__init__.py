"""Rendering for photonstats sweep outputs (CSV + JSON sidecar).

The figure builder lives in `photonstats_plots.render`:

    from photonstats_plots.render import FigureSpec, render
    render(FigureSpec(csv_path="map.csv", kind="heatmap", out_path="map.png"))
"""

__version__ = "0.1.0"

from . import render  # noqa: F401
from .render import FigureSpec, SweepData, load_sweep  # noqa: F401
