"""Acceptance for the rendering component: figures build from the real
sweep outputs of the interference-zero map and the polariton-limit maps,
with flagged cells visually distinct."""

import os

import numpy as np
import pytest

import photonstats_plots.render as rd

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def test_criterion_11_render_smoke(tmp_path):
    # external-laser zero map (carries an undefined cell at F=2, phi=pi)
    rf_png = str(tmp_path / "rf.png")
    rd.render(rd.FigureSpec(csv_path=os.path.join(FIXTURES, "rf_zero_map.csv"),
                            meta_path=os.path.join(FIXTURES,
                                                   "rf_zero_map.meta.json"),
                            kind="phase-map", observable="g2", out_path=rf_png))
    # polariton-limit pair
    for name in ("jc_limit_map", "pol_limit_map"):
        out = str(tmp_path / f"{name}.png")
        rd.render(rd.FigureSpec(csv_path=os.path.join(FIXTURES, f"{name}.csv"),
                                kind="heatmap", observable="g2",
                                out_path=out))
        assert os.path.getsize(out) > 10_000
    # the flagged cell renders in the sentinel grey, absent from the colormap
    import matplotlib.pyplot as plt

    img = plt.imread(rf_png)
    dist = np.linalg.norm(img[..., :3] - np.array(rd.UNDEFINED_GREY), axis=-1)
    assert (dist < 0.02).sum() > 10
