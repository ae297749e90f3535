"""Parameter sweeps, feature overlays, and the verification harness.

A sweep is described by a small INI config (see README for the schema):
system + base parameters, one or two swept axes, an observable list, and an
engine choice among

    analytic     closed forms (vanishing drive),
    recursive    correlator-hierarchy back-substitution (vanishing drive),
    liouvillian  full steady-state solve at a user-chosen finite drive,
    wavefunction two-excitation amplitudes (vanishing drive).

Outputs are a CSV (one row per cell, canonical order) plus a JSON sidecar
with the config echo and sampled feature polylines.  Cells are independent
and may be evaluated concurrently (PHOTONSTATS_THREADS); results are
assembled in canonical order either way, so outputs are byte-identical
across runs.
"""

from __future__ import annotations

import configparser
import json
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import analytic as an
from . import fockspace as fs
from . import mixer as mx
from . import steady as sd
from .fockspace import (AOParams, JCParams, PolParams, RFParams,
                        SystemParams)
from .steady import UndefinedCorrelationError


class ConfigError(ValueError):
    """A sweep configuration is malformed or inconsistent."""


THREADS_ENV = "PHOTONSTATS_THREADS"

OBSERVABLES = ("n", "g2", "g3", "g4", "g5", "g6",
               "I0", "I1", "I2", "J0", "J1", "J2", "J3", "J4",
               "nnorm2", "nnorm3", "nnorm4", "nnorm5")

ENGINES = ("analytic", "recursive", "liouvillian", "wavefunction")

_FREQ_KEYS = ("omega_a", "omega_b", "omega_sigma", "omega_L")

_SYSTEM_FIELDS = {
    "rf": ("delta_sigma", "drive_sigma", "gamma_sigma"),
    "ao": ("delta_b", "u", "drive_b", "gamma_b"),
    "jc": ("delta_a", "delta_sigma", "g", "drive_a", "chi", "phi",
           "gamma_a", "gamma_sigma"),
    "pol": ("delta_a", "delta_b", "g", "u", "drive_a", "chi", "phi",
            "gamma_a", "gamma_b"),
}

_PARAM_CLS = {"rf": RFParams, "ao": AOParams, "jc": JCParams, "pol": PolParams}


@dataclass
class Axis:
    param: str
    lo: float
    hi: float
    count: int
    scale: str = "linear"

    def values(self):
        if self.count < 2:
            raise ConfigError("axis count must be >= 2")
        if self.scale == "linear":
            return np.linspace(self.lo, self.hi, self.count)
        if self.scale == "log":
            if self.lo <= 0 or self.hi <= 0:
                raise ConfigError("log axes require positive bounds")
            return np.geomspace(self.lo, self.hi, self.count)
        raise ConfigError(f"unknown axis scale {self.scale!r}")


@dataclass
class SweepConfig:
    system: str
    engine: str
    base: dict                 # raw parameter values (detunings or omegas)
    axes: list                 # 1 or 2 Axis entries
    observables: list
    name: str = "sweep"
    mix: dict = None           # {'F':, 'phi':, 'transmittance':} for rf/ao
    drive: float = None        # finite drive for the liouvillian engine
    n_photons: int = None
    max_order: int = None
    outdir: str = "."

    def validate(self):
        if self.system not in _PARAM_CLS:
            raise ConfigError(f"unknown system {self.system!r}")
        if self.engine not in ENGINES:
            raise ConfigError(f"unknown engine {self.engine!r}")
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError("one or two axes required")
        for obs in self.observables:
            if obs not in OBSERVABLES:
                raise ConfigError(f"unknown observable {obs!r}")
        if self.engine == "liouvillian":
            if self.drive is None:
                raise ConfigError("the liouvillian engine needs a drive value")
        elif self.drive is not None:
            raise ConfigError(
                "vanishing-drive engines take no drive parameter; use the "
                "liouvillian engine for finite-drive sweeps")
        if self.engine == "wavefunction":
            bad = [o for o in self.observables
                   if o not in ("n", "g2")]
            if bad:
                raise ConfigError(
                    f"wavefunction engine only provides n and g2, not {bad}")
        if self.mix is not None and self.system in ("jc", "pol"):
            raise ConfigError("external admixture applies to rf/ao only")
        if self.system == "rf" and self.engine == "wavefunction" \
                and self.mix is None:
            raise ConfigError("rf wavefunction sweeps need a [mix] section")
        return self


def _parse_float(section, key, default=None):
    if key not in section:
        return default
    try:
        return float(section[key])
    except ValueError as exc:
        raise ConfigError(f"bad float for {key!r}: {section[key]!r}") from exc


def load_config(path) -> SweepConfig:
    """Read a sweep configuration from an INI file."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    if "sweep" not in cp:
        raise ConfigError("missing [sweep] section")
    sw = cp["sweep"]
    system = sw.get("system", "").strip().lower()
    engine = sw.get("engine", "analytic").strip().lower()
    name = sw.get("name", "sweep").strip()
    base = {}
    if "params" in cp:
        for key, raw in cp["params"].items():
            try:
                base[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"bad parameter {key!r}: {raw!r}") from exc
    axes = []
    for sect in ("axis1", "axis2"):
        if sect in cp:
            s = cp[sect]
            if "param" not in s:
                raise ConfigError(f"[{sect}] needs a param entry")
            axes.append(Axis(param=s["param"].strip(),
                             lo=_parse_float(s, "min"),
                             hi=_parse_float(s, "max"),
                             count=int(s.get("count", "0")),
                             scale=s.get("scale", "linear").strip()))
    if not axes:
        raise ConfigError("at least [axis1] is required")
    mix = None
    if "mix" in cp:
        m = cp["mix"]
        mix = {"F": _parse_float(m, "f", 0.0),
               "phi": _parse_float(m, "phi", 0.0),
               "transmittance": _parse_float(m, "transmittance", 1.0)}
    observables = []
    if "observables" in cp and "list" in cp["observables"]:
        observables = [t.strip() for t in
                       cp["observables"]["list"].replace("\n", ",").split(",")
                       if t.strip()]
    if not observables:
        observables = ["n", "g2"]
    outdir = cp["output"].get("dir", ".") if "output" in cp else "."
    cfg = SweepConfig(
        system=system, engine=engine, base=base, axes=axes,
        observables=observables, name=name, mix=mix,
        drive=_parse_float(sw, "drive"),
        n_photons=int(sw["n_photons"]) if "n_photons" in sw else None,
        max_order=int(sw["max_order"]) if "max_order" in sw else None,
        outdir=outdir)
    return cfg.validate()


# ---------------------------------------------------------------------------
# parameter resolution


def resolve_params(system: str, values: dict, drive: float = None
                   ) -> SystemParams:
    """Build SystemParams from a raw value dict.

    Frequencies (omega_a, omega_b, omega_sigma, omega_L) take precedence
    over directly given detunings: delta_x = omega_x - omega_L.  `drive`
    overrides the primary drive amplitude; vanishing-drive engines leave it
    at a formal placeholder.
    """
    vals = dict(values)
    omega_l = vals.pop("omega_l", vals.pop("omega_L", None))
    freq_map = {"omega_a": "delta_a", "omega_b": "delta_b",
                "omega_sigma": "delta_sigma"}
    for fkey, dkey in freq_map.items():
        if fkey in vals:
            if omega_l is None:
                omega_l = 0.0
            vals[dkey] = vals.pop(fkey) - omega_l
    cls = _PARAM_CLS[system]
    fields = _SYSTEM_FIELDS[system]
    kwargs = {}
    for f in fields:
        if f in vals:
            kwargs[f] = vals.pop(f)
    drive_field = {"rf": "drive_sigma", "ao": "drive_b",
                   "jc": "drive_a", "pol": "drive_a"}[system]
    if drive is not None:
        kwargs[drive_field] = drive
    kwargs.setdefault(drive_field, 1e-4)
    unknown = set(vals) - {"omega_L", "omega_l"}
    if unknown:
        raise ConfigError(f"unknown parameters for {system}: {sorted(unknown)}")
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def _axis_targets(system):
    extra = {"omega_a", "omega_b", "omega_sigma", "omega_L"}
    mix_axes = {"F", "phi"} if system in ("rf", "ao") else set()
    return set(_SYSTEM_FIELDS[system]) | extra | mix_axes


# ---------------------------------------------------------------------------
# cell evaluation


def _needed_gmax(observables):
    need = 1
    for obs in observables:
        if obs.startswith("g") and obs[1:].isdigit():
            need = max(need, int(obs[1:]))
        elif obs.startswith("J"):
            need = max(need, 3)
        elif obs.startswith("I"):
            need = max(need, 2)
        elif obs.startswith("nnorm"):
            need = max(need, int(obs[5:]) + 1)
    return need


def _mode_key(system, p, q):
    # observed mode: photon slot for everything except rf
    if system == "rf":
        return (p, q, 0, 0)
    return (0, 0, p, q)


def _table_observables(table, mean_field, observables, system):
    """Common path: read g's and decomposition terms off a correlator table."""
    out = {}
    photon_mode = system != "rf"
    pop = table.value(_mode_key(system, 1, 1)).real
    gvals = {}
    for n in range(2, _needed_gmax(observables) + 1):
        num = table.value(_mode_key(system, n, n)).real
        if pop <= 0 or pop ** n < sd.POPULATION_FLOOR:
            raise UndefinedCorrelationError("population vanishes",
                                            raw_moment=num)
        gvals[n] = num / pop ** n
    dec2 = dec3 = None
    for obs in observables:
        if obs == "n":
            out[obs] = pop
        elif obs.startswith("g") and obs[1:].isdigit():
            out[obs] = gvals[int(obs[1:])]
        elif obs.startswith("I"):
            if dec2 is None:
                dec2 = mx.decompose_g2(mean_field, table,
                                       photon_mode=photon_mode)
            out[obs] = {"I0": dec2.i0, "I1": dec2.i1, "I2": dec2.i2}[obs]
        elif obs.startswith("J"):
            if dec3 is None:
                dec3 = mx.decompose_g3(mean_field, table,
                                       photon_mode=photon_mode)
            out[obs] = getattr(dec3, obs.lower())
        elif obs.startswith("nnorm"):
            k = int(obs[5:])
            out[obs] = mx.n_norm([gvals[j] for j in range(2, k + 2)], k)
    return out


def evaluate_cell(system, params, observables, engine, mix=None,
                  n_photons=None, max_order=None):
    """Observable dictionary for one parameter point.

    Raises UndefinedCorrelationError where normalisation fails; other
    engine errors propagate to the sweep driver, which marks the cell.
    """
    gmax = _needed_gmax(observables)
    if engine == "analytic" and system == "rf":
        return _analytic_rf(params, observables, mix)
    if engine in ("analytic", "recursive"):
        cap = max(gmax, 3)
        order = 2 * cap
        if max_order:
            order = max(order, max_order)
        table = sd.low_drive_correlators(params, order)
        unit = sd.CorrelatorTable(system=system, entries=dict(table.coefficients),
                                  drive=1.0)
        mean = unit.value(_mode_key(system, 0, 1))
        if mix is not None:
            gamma = params.gamma_b if system == "ao" else params.gamma_sigma
            zeta = mx.admixed_amplitude(mix["F"], mix["phi"], 1.0, gamma)
            unit = mx.mixed_table(zeta, unit, max_order=cap,
                                  photon_mode=system != "rf")
            mean = mean + zeta
        out = _table_observables(unit, mean, observables, system)
        if engine == "analytic":
            # closed forms take precedence where available; the hierarchy
            # covers the orders that have no compact closed form
            out.update(_analytic_override(system, params, observables, mix))
        return out
    if engine == "liouvillian":
        liou = fs.build_liouvillian(params, n_photons)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", fs.TruncationWarning)
            rho = sd.steady_state(liou)
            truncated = any(issubclass(w.category, fs.TruncationWarning)
                            for w in caught)
        table = sd.moment_table(rho, params, liou.n_photons,
                                max_order=max(gmax, 3))
        mean = table.value(_mode_key(system, 0, 1))
        if mix is not None:
            gamma = params.gamma_b if system == "ao" else params.gamma_sigma
            zeta = mx.admixed_amplitude(mix["F"], mix["phi"],
                                        fs.primary_drive(params), gamma)
            table = mx.mixed_table(zeta, table, max_order=max(gmax, 3),
                                   photon_mode=system != "rf")
            mean = mean + zeta
        out = _table_observables(table, mean, observables, system)
        out["_truncation_warning"] = truncated
        return out
    if engine == "wavefunction":
        hm = sd.HomodyneMix(mix["F"], mix["phi"],
                            mix.get("transmittance", 1.0)) if mix else None
        wf = sd.wavefunction_coefficients(params, hm)
        obs = wf.observables()
        out = {}
        for o in observables:
            if o == "n":
                out[o] = obs["n_a"]
            elif o == "g2":
                out[o] = obs["g2_a"]
        return out
    raise ConfigError(f"unknown engine {engine!r}")


def _analytic_rf(params, observables, mix):
    gamma, delta = params.gamma_sigma, params.delta_sigma
    drive = params.drive_sigma if params.drive_sigma > 0 else 1e-4
    out = {}
    if mix is None:
        st = an.rf_steady(drive, gamma, delta)
        table = sd.CorrelatorTable(system="rf", entries={
            (0, 1, 0, 0): st.alpha, (1, 0, 0, 0): np.conj(st.alpha),
            (1, 1, 0, 0): st.n_sigma + 0j}, drive=drive)
        for obs in observables:
            if obs == "n":
                out[obs] = st.n_sigma
            elif obs.startswith("g") and obs[1:].isdigit():
                out[obs] = 0.0
            elif obs.startswith("nnorm"):
                out[obs] = 0.0
            elif obs.startswith("I"):
                dec = mx.decompose_g2(st.alpha, table, photon_mode=False)
                out[obs] = {"I0": dec.i0, "I1": dec.i1, "I2": dec.i2}[obs]
            elif obs.startswith("J"):
                dec3 = mx.decompose_g3(st.alpha, table, photon_mode=False)
                out[obs] = getattr(dec3, obs.lower())
        return out
    gvals = {}
    for n in range(2, _needed_gmax(observables) + 1):
        _, gvals[n] = an.rf_homodyne_gN(n, mix["F"], mix["phi"], drive,
                                        gamma, delta,
                                        mix.get("transmittance", 1.0))
    n_s, _ = an.rf_homodyne_gN(1, mix["F"], mix["phi"], drive, gamma, delta,
                               mix.get("transmittance", 1.0))
    st = an.rf_steady(drive, gamma, delta)
    alpha0 = -2 * drive * (2 * delta + 1j * gamma) / (gamma ** 2 + 4 * delta ** 2)
    base = sd.CorrelatorTable(system="rf", entries={
        (0, 1, 0, 0): alpha0, (1, 0, 0, 0): np.conj(alpha0),
        (1, 1, 0, 0): 4 * drive ** 2 / (gamma ** 2 + 4 * delta ** 2) + 0j},
        drive=drive)
    zeta = mx.admixed_amplitude(mix["F"], mix["phi"], drive, gamma)
    mixed = mx.mixed_table(zeta, base, max_order=3, photon_mode=False)
    for obs in observables:
        if obs == "n":
            out[obs] = n_s
        elif obs.startswith("g") and obs[1:].isdigit():
            out[obs] = gvals[int(obs[1:])]
        elif obs.startswith("nnorm"):
            k = int(obs[5:])
            out[obs] = mx.n_norm([gvals[j] for j in range(2, k + 2)], k)
        elif obs.startswith("I"):
            dec = mx.decompose_g2(zeta + alpha0, mixed, photon_mode=False)
            out[obs] = {"I0": dec.i0, "I1": dec.i1, "I2": dec.i2}[obs]
        elif obs.startswith("J"):
            dec3 = mx.decompose_g3(zeta + alpha0, mixed, photon_mode=False)
            out[obs] = getattr(dec3, obs.lower())
    return out


def _analytic_override(system, params, observables, mix):
    out = {}
    if system == "ao":
        if mix is not None:
            if "n" in observables or "g2" in observables:
                n_s, g2 = an.ao_homodyne(params.u, 1.0, params.gamma_b,
                                         params.delta_b, mix["F"], mix["phi"],
                                         mix.get("transmittance", 1.0))
                drive = params.drive_b if params.drive_b > 0 else 1.0
                if "n" in observables:
                    out["n"] = n_s * drive ** 2
                if "g2" in observables:
                    out["g2"] = g2
        else:
            for obs in observables:
                if obs == "n":
                    out["n"] = an.ao_observables(1, params.u, params.drive_b,
                                                 params.gamma_b,
                                                 params.delta_b)[0]
                elif obs.startswith("g") and obs[1:].isdigit():
                    out[obs] = an.ao_observables(int(obs[1:]), params.u,
                                                 params.drive_b,
                                                 params.gamma_b,
                                                 params.delta_b)[1]
            if any(o.startswith("I") for o in observables):
                dec = an.ao_decompose(params.u, params.gamma_b, params.delta_b)
                for obs in observables:
                    if obs.startswith("I"):
                        out[obs] = {"I0": dec.i0, "I1": dec.i1,
                                    "I2": dec.i2}[obs]
    elif system == "jc":
        if "g2" in observables:
            out["g2"] = an.jc_g2(params)
        if "n" in observables:
            out["n"] = an.jc_populations(params)[0]
        if any(o.startswith("I") for o in observables):
            dec = an.jc_g2_decomposition(params)
            for obs in observables:
                if obs.startswith("I"):
                    out[obs] = {"I0": dec.i0, "I1": dec.i1, "I2": dec.i2}[obs]
    elif system == "pol":
        if "g2" in observables:
            out["g2"] = an.pol_g2(params)
        if "n" in observables:
            out["n"] = an.pol_populations(params)[0]
        if any(o.startswith("I") for o in observables):
            dec = an.pol_g2_decomposition(params)
            for obs in observables:
                if obs.startswith("I"):
                    out[obs] = {"I0": dec.i0, "I1": dec.i1, "I2": dec.i2}[obs]
    return out


# ---------------------------------------------------------------------------
# the sweep driver


@dataclass
class SweepResult:
    config: SweepConfig
    axis_values: list        # list of arrays
    rows: list               # dicts: axis values, observables, status
    features: list = field(default_factory=list)

    @property
    def n_undefined(self):
        return sum(1 for r in self.rows if r["status"] != "ok")

    def csv_text(self):
        cols = ([a.param for a in self.config.axes]
                + list(self.config.observables) + ["status", "raw_moment"])
        lines = [",".join(cols)]
        for row in self.rows:
            cells = []
            for c in cols:
                v = row.get(c, "")
                if isinstance(v, float):
                    cells.append(repr(v))
                else:
                    cells.append(str(v))
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def meta(self):
        cfg = self.config
        return {
            "schema": "photonstats-sweep-v1",
            "version": __version__,
            "name": cfg.name,
            "system": cfg.system,
            "engine": cfg.engine,
            "drive": cfg.drive,
            "base_params": cfg.base,
            "mix": cfg.mix,
            "axes": [{"param": a.param, "min": a.lo, "max": a.hi,
                      "count": a.count, "scale": a.scale} for a in cfg.axes],
            "observables": list(cfg.observables),
            "cells": len(self.rows),
            "undefined_cells": self.n_undefined,
            "features": [f.as_dict() for f in self.features],
        }

    def write(self, outdir=None):
        outdir = outdir or self.config.outdir
        os.makedirs(outdir, exist_ok=True)
        csv_path = os.path.join(outdir, f"{self.config.name}.csv")
        meta_path = os.path.join(outdir, f"{self.config.name}.meta.json")
        with open(csv_path, "w") as fh:
            fh.write(self.csv_text())
        with open(meta_path, "w") as fh:
            json.dump(self.meta(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        return csv_path, meta_path


def _cell_params(cfg, point):
    values = dict(cfg.base)
    mix = dict(cfg.mix) if cfg.mix else None
    for axis, val in zip(cfg.axes, point):
        if axis.param in ("F", "phi") and cfg.system in ("rf", "ao"):
            if mix is None:
                mix = {"F": 0.0, "phi": 0.0, "transmittance": 1.0}
            mix[axis.param] = float(val)
        else:
            values[axis.param] = float(val)
    params = resolve_params(cfg.system, values, drive=cfg.drive)
    return params, mix


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Evaluate every grid cell; failures mark cells without aborting."""
    cfg.validate()
    for axis in cfg.axes:
        if axis.param not in _axis_targets(cfg.system):
            raise ConfigError(
                f"axis parameter {axis.param!r} not valid for {cfg.system}")
    axis_values = [a.values() for a in cfg.axes]
    if len(axis_values) == 1:
        points = [(v,) for v in axis_values[0]]
    else:
        points = [(x, y) for x in axis_values[0] for y in axis_values[1]]

    def work(point):
        row = {a.param: float(v) for a, v in zip(cfg.axes, point)}
        try:
            params, mix = _cell_params(cfg, point)
            out = evaluate_cell(cfg.system, params, cfg.observables,
                                cfg.engine, mix=mix, n_photons=cfg.n_photons,
                                max_order=cfg.max_order)
            truncated = out.pop("_truncation_warning", False)
            row.update({k: float(v) for k, v in out.items()})
            row["status"] = "truncation-warning" if truncated else "ok"
            row["raw_moment"] = ""
        except UndefinedCorrelationError as exc:
            row["status"] = "undefined"
            row["raw_moment"] = (repr(float(exc.raw_moment))
                                 if exc.raw_moment is not None else "")
        except (sd.DegenerateSteadyStateError, sd.DegenerateBlockError,
                FloatingPointError) as exc:
            row["status"] = "error"
            row["raw_moment"] = ""
        return row

    n_threads = int(os.environ.get(THREADS_ENV, "0") or 0)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            rows = list(pool.map(work, points))
    else:
        rows = [work(p) for p in points]
    return SweepResult(config=cfg, axis_values=axis_values, rows=rows)


def classify_features(cfg: SweepConfig, samples: int = 201):
    """Sampled feature loci for the config's system, clipped to its axes.

    For jc/pol the axes must span the (omega_a, omega_L) plane; rf/ao
    features are parameter points and ignore the window.
    """
    system = cfg.system
    base = dict(cfg.base)
    if system in ("jc", "pol"):
        axes = {a.param: a for a in cfg.axes}
        if "omega_a" not in axes or "omega_L" not in axes:
            raise ConfigError(
                "feature classification for jc/pol needs omega_a and "
                "omega_L axes")
        window = ((axes["omega_a"].lo, axes["omega_a"].hi),
                  (axes["omega_L"].lo, axes["omega_L"].hi))
        if system == "jc":
            return an.jc_feature_conditions(
                base.get("omega_sigma", 0.0), base["g"], base["gamma_a"],
                base["gamma_sigma"], base.get("chi", 0.0),
                base.get("phi", 0.0), window, samples)
        return an.pol_feature_conditions(
            base.get("omega_b", 0.0), base["g"], base["u"], base["gamma_a"],
            base["gamma_b"], base.get("chi", 0.0), base.get("phi", 0.0),
            window, samples)
    params = resolve_params(system, base)
    return an.feature_conditions(params)


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class CheckResult:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0

    def as_dict(self):
        return {"name": self.name, "passed": bool(self.passed),
                "deviation": self.deviation, "tolerance": self.tolerance,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class VerifyReport:
    suite: str
    seed: int
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {"suite": self.suite, "seed": self.seed,
                "passed": self.passed,
                "checks": [c.as_dict() for c in self.checks]}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def summary(self):
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}: deviation {c.deviation:.3e} "
                         f"(tol {c.tolerance:.1e}) {c.detail}")
        lines.append(f"suite {self.suite}: "
                     f"{'all passed' if self.passed else 'FAILURES PRESENT'}")
        return "\n".join(lines)


def _timed(name, tol, fn):
    t0 = time.time()
    dev, detail = fn()
    return CheckResult(name=name, passed=bool(dev <= tol), deviation=float(dev),
                       tolerance=tol, detail=detail, seconds=time.time() - t0)


def verify(suite: str, seed: int = 2024, tolerances: dict = None
           ) -> VerifyReport:
    """Run a verification suite; failures are report content, not errors."""
    from . import checks

    tolerances = tolerances or {}
    if suite == "identities":
        results = checks.identity_checks(seed, tolerances)
    elif suite == "oracles":
        results = checks.oracle_checks(seed, tolerances)
    elif suite == "landmarks":
        results = checks.landmark_checks(seed, tolerances)
    else:
        raise ConfigError(f"unknown suite {suite!r}; pick identities, "
                          "oracles or landmarks")
    return VerifyReport(suite=suite, seed=seed, checks=results)
