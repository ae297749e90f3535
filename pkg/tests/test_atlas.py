"""Sweep engine, config parsing, feature output, verify harness, CLI."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from photonstats import analytic as an
from photonstats import atlas
from photonstats import cli
from photonstats import fockspace as fs
from photonstats.atlas import Axis, ConfigError, SweepConfig


JC_INI = """
[sweep]
system = jc
engine = analytic
name = jc_map

[params]
g = 1.0
gamma_a = 0.1
gamma_sigma = 0.01
omega_sigma = 0.0
chi = 0.0
phi = 0.0

[axis1]
param = omega_a
min = -3
max = 3
count = 7

[axis2]
param = omega_L
min = -2
max = 2
count = 5

[observables]
list = n, g2, I0, I2
"""

RF_INI = """
[sweep]
system = rf
engine = analytic
name = rf_fphi

[params]
gamma_sigma = 1.0
delta_sigma = 0.0

[axis1]
param = F
min = 0.0
max = 6.0
count = 13

[axis2]
param = phi
min = 0.0
max = 6.283185307179586
count = 25

[observables]
list = n, g2, g3
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_load_config_and_validation(tmp_path):
    cfg = atlas.load_config(write(tmp_path, "jc.ini", JC_INI))
    assert cfg.system == "jc" and cfg.engine == "analytic"
    assert [a.param for a in cfg.axes] == ["omega_a", "omega_L"]
    assert cfg.observables == ["n", "g2", "I0", "I2"]


def test_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        atlas.load_config(write(tmp_path, "bad1.ini", "[sweep]\nsystem=xx\n"))
    bad = JC_INI.replace("engine = analytic", "engine = liouvillian")
    with pytest.raises(ConfigError):
        atlas.load_config(write(tmp_path, "bad2.ini", bad))  # missing drive
    bad = JC_INI.replace("[sweep]", "[sweep]\ndrive = 0.1")
    with pytest.raises(ConfigError):
        atlas.load_config(write(tmp_path, "bad3.ini", bad))  # drive w/o engine
    bad = JC_INI.replace("list = n, g2, I0, I2", "list = n, g9")
    with pytest.raises(ConfigError):
        atlas.load_config(write(tmp_path, "bad4.ini", bad))
    with pytest.raises(ConfigError):
        atlas.load_config(str(tmp_path / "missing.ini"))


def test_resolve_params_frequencies():
    p = atlas.resolve_params("jc", {"g": 1.0, "gamma_a": 0.1,
                                    "gamma_sigma": 0.01, "omega_a": 2.0,
                                    "omega_sigma": 0.5, "omega_L": 1.5,
                                    "chi": 0.0, "phi": 0.0})
    assert p.delta_a == pytest.approx(0.5)
    assert p.delta_sigma == pytest.approx(-1.0)
    with pytest.raises(ConfigError):
        atlas.resolve_params("rf", {"gamma_sigma": 1.0, "bogus": 2.0})


def test_single_point_sweep_equals_direct_call(tmp_path):
    cfg = SweepConfig(system="jc", engine="analytic",
                      base={"g": 1.0, "gamma_a": 0.1, "gamma_sigma": 0.01,
                            "delta_sigma": -0.4, "chi": 0.0, "phi": 0.0},
                      axes=[Axis("delta_a", 0.7, 0.7001, 2)],
                      observables=["g2"])
    res = atlas.run_sweep(cfg)
    p = fs.JCParams(delta_a=0.7, delta_sigma=-0.4, g=1.0, drive_a=1e-4,
                    chi=0.0, phi=0.0, gamma_a=0.1, gamma_sigma=0.01)
    assert res.rows[0]["g2"] == pytest.approx(an.jc_g2(p), rel=1e-12)


def test_sweep_determinism_and_thread_independence(tmp_path, monkeypatch):
    cfg_path = write(tmp_path, "jc.ini", JC_INI)
    cfg = atlas.load_config(cfg_path)
    res1 = atlas.run_sweep(cfg)
    res2 = atlas.run_sweep(cfg)
    assert res1.csv_text() == res2.csv_text()
    monkeypatch.setenv(atlas.THREADS_ENV, "4")
    res3 = atlas.run_sweep(cfg)
    assert res3.csv_text() == res1.csv_text()
    out1 = res1.write(str(tmp_path / "a"))
    out2 = res3.write(str(tmp_path / "b"))
    assert open(out1[0], "rb").read() == open(out2[0], "rb").read()
    assert open(out1[1], "rb").read() == open(out2[1], "rb").read()


def test_rf_sweep_flags_undefined_cells(tmp_path):
    cfg = atlas.load_config(write(tmp_path, "rf.ini", RF_INI))
    res = atlas.run_sweep(cfg)
    # the F = 2, phi = pi cell is the one-photon cancellation: population
    # zero, correlations undefined
    undef = [r for r in res.rows if r["status"] == "undefined"]
    assert undef
    assert any(abs(r["F"] - 2.0) < 1e-9 and abs(r["phi"] - np.pi) < 1e-9
               for r in undef)
    # no silent NaN: every non-ok row is flagged
    for row in res.rows:
        if row["status"] == "ok":
            assert np.isfinite(row["g2"])


def test_rf_sweep_reproduces_interference_zero(tmp_path):
    cfg = atlas.load_config(write(tmp_path, "rf.ini", RF_INI))
    res = atlas.run_sweep(cfg)
    ok = [r for r in res.rows if r["status"] == "ok" and r["F"] > 0.1]
    best = min(ok, key=lambda r: r["g2"])
    assert best["F"] == pytest.approx(4.0, abs=1e-9)
    assert best["phi"] == pytest.approx(np.pi, abs=1e-9)
    assert best["g2"] < 1e-12


def test_ao_grid_minima_match_root_finder(tmp_path):
    ext = an.ao_extrema(1.0, 1.0)
    cfg = SweepConfig(system="ao", engine="analytic",
                      base={"u": 1.0, "gamma_b": 1.0,
                            "delta_b": ext.delta_minus},
                      axes=[Axis("F", 0.05, 4.0, 80),
                            Axis("phi", 0.0, 2 * np.pi, 126)],
                      observables=["g2"])
    res = atlas.run_sweep(cfg)
    zeros = an.ao_g2_zeros(1.0, 1.0, ext.delta_minus)
    df = 3.95 / 79
    dphi = 2 * np.pi / 125
    for f0, phi0 in zeros:
        cell = min((r for r in res.rows if r["status"] == "ok"),
                   key=lambda r: (r["F"] - f0) ** 2 + (r["phi"] - phi0) ** 2)
        near = [r for r in res.rows if r["status"] == "ok"
                and abs(r["F"] - f0) < 3 * df
                and abs(r["phi"] - phi0) < 3 * dphi]
        best = min(near, key=lambda r: r["g2"])
        assert abs(best["F"] - f0) <= 1.5 * df
        assert abs(best["phi"] - phi0) <= 1.5 * dphi


def test_liouvillian_engine_sweep():
    cfg = SweepConfig(system="jc", engine="liouvillian", drive=0.02,
                      n_photons=8,
                      base={"g": 1.0, "gamma_a": 0.5, "gamma_sigma": 0.1,
                            "delta_sigma": 0.0, "chi": 0.0, "phi": 0.0},
                      axes=[Axis("delta_a", -1.0, 1.0, 5)],
                      observables=["n", "g2"])
    res = atlas.run_sweep(cfg)
    assert all(r["status"] == "ok" for r in res.rows)
    mid = res.rows[2]
    p = fs.JCParams(delta_a=0.0, delta_sigma=0.0, g=1.0, drive_a=0.02,
                    chi=0.0, phi=0.0, gamma_a=0.5, gamma_sigma=0.1)
    from photonstats import steady as sd
    rho = sd.steady_state(fs.build_liouvillian(p, 8))
    assert mid["g2"] == pytest.approx(
        sd.gN(rho, fs.mode_operators(p, 8)["a"], 2), rel=1e-9)


def test_engine_cross_agreement_in_sweep(tmp_path):
    base = {"g": 1.0, "gamma_a": 0.1, "gamma_sigma": 0.02,
            "delta_sigma": -0.3, "chi": 0.4, "phi": 1.0}
    axes = [Axis("delta_a", -0.8, 0.8, 5)]
    results = {}
    for engine in ("analytic", "recursive", "wavefunction"):
        cfg = SweepConfig(system="jc", engine=engine, base=dict(base),
                          axes=list(axes), observables=["g2"])
        results[engine] = [r["g2"] for r in atlas.run_sweep(cfg).rows]
    for engine in ("recursive", "wavefunction"):
        assert np.allclose(results[engine], results["analytic"], rtol=1e-9)


def test_classify_features_jc(tmp_path):
    cfg = atlas.load_config(write(tmp_path, "jc.ini", JC_INI))
    feats = atlas.classify_features(cfg)
    kinds = {f.kind for f in feats}
    assert {"CA", "CB", "UA", "UB"} <= kinds
    ub = [f for f in feats if f.kind == "UB"][0]
    assert all(abs(p[1]) < 1e-12 for p in ub.points)


def test_verify_identities_suite():
    report = atlas.verify("identities", seed=7)
    assert report.passed
    names = {c.name for c in report.checks}
    assert "decomposition_identity" in names
    data = json.loads(report.to_json())
    assert data["passed"] is True
    with pytest.raises(ConfigError):
        atlas.verify("bogus")


# ---------------------------------------------------------------------------
# CLI


def test_cli_sweep_and_features(tmp_path):
    cfg_path = write(tmp_path, "jc.ini", JC_INI)
    out = str(tmp_path / "out")
    assert cli.main(["sweep", cfg_path, "--outdir", out, "--features"]) == 0
    assert os.path.exists(os.path.join(out, "jc_map.csv"))
    meta = json.load(open(os.path.join(out, "jc_map.meta.json")))
    assert meta["schema"] == "photonstats-sweep-v1"
    assert meta["features"]
    assert cli.main(["features", cfg_path, "--outdir", out]) == 0
    lines = open(os.path.join(out, "jc_map_features.csv")).read().splitlines()
    assert lines[0] == "kind,exact,branch,x,y,label"
    assert len(lines) > 10


def test_cli_expand(tmp_path):
    ini = """
[sweep]
system = rf
engine = liouvillian
drive = 1e-3
name = rf_series

[params]
gamma_sigma = 1.0
delta_sigma = 0.0

[axis1]
param = F
min = 0
max = 1
count = 2

[observables]
list = n
"""
    cfg_path = write(tmp_path, "series.ini", ini)
    out = str(tmp_path / "out")
    assert cli.main(["expand", cfg_path, "--outdir", out,
                     "--powers", "2", "4"]) == 0
    rows = open(os.path.join(out, "rf_series_series.csv")).read().splitlines()
    assert rows[0] == "power,coefficient"
    coeff = float(rows[1].split(",")[1])
    assert coeff == pytest.approx(4.0, rel=1e-4)


def test_cli_config_error_exit_code(tmp_path):
    bad = write(tmp_path, "bad.ini", "[sweep]\nsystem = nope\n")
    assert cli.main(["sweep", bad]) == 2
    assert cli.main(["sweep", str(tmp_path / "missing.ini")]) == 2


def test_cli_verify_exit_codes(tmp_path):
    report_path = str(tmp_path / "report.json")
    code = cli.main(["verify", "identities", "--seed", "3",
                     "--json", report_path])
    assert code == 0
    data = json.load(open(report_path))
    assert data["suite"] == "identities"


def test_cli_entry_point_subprocess(tmp_path):
    cfg_path = write(tmp_path, "jc.ini", JC_INI)
    proc = subprocess.run(
        [sys.executable, "-m", "photonstats.cli", "sweep", cfg_path,
         "--outdir", str(tmp_path / "o")],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "cells" in proc.stdout


def test_liouvillian_sweep_truncation_warning_status():
    cfg = SweepConfig(system="ao", engine="liouvillian", drive=1.5,
                      n_photons=4,
                      base={"u": 0.0, "gamma_b": 1.0, "delta_b": 0.0},
                      axes=[Axis("delta_b", -0.1, 0.1, 2)],
                      observables=["n"])
    res = atlas.run_sweep(cfg)
    assert all(r["status"] == "truncation-warning" for r in res.rows)
