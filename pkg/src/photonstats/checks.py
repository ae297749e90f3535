"""Verification checks: algebraic identities, cross-engine oracles, and the
landmark numbers of the closed-form results.

Each landmark criterion is implemented as a function returning a small
result object carrying the measured values and a pass flag at its stated
tolerance; the acceptance test suite and the CLI `verify` command share
these implementations.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import analytic as an
from . import fockspace as fs
from . import mixer as mx
from . import steady as sd


@dataclass
class Landmark:
    name: str
    passed: bool
    values: dict
    tolerance: dict
    detail: str = ""
    seconds: float = 0.0


def _mk(name, passed, values, tol, detail, t0):
    return Landmark(name=name, passed=bool(passed), values=values,
                    tolerance=tol, detail=detail, seconds=time.time() - t0)


# ---------------------------------------------------------------------------
# landmark criteria


def crit_dst_minimum():
    """Mixed coherent+squeezed light at |alpha| = 0.3: the optimum-line
    crossing of the cut sits at r = 0.078 with g2 = 0.26.

    The figure's dashed optimum line (coherent amplitude minimising g2 at
    each r) crosses the |alpha| = 0.3 cut at r*; the quoted (0.26, 0.078)
    match that crossing, not the unconstrained minimum of the cut (which
    sits lower, at (0.244, 0.068) - both are computed here).
    """
    t0 = time.time()
    alpha = 0.3

    def g2_of(r):
        return mx.dst_observables(mx.GaussianState(alpha, r))["g2"]

    r_cross = brentq(lambda r: mx.optimal_coherent_amplitude(r) - alpha,
                     1e-6, 1.0, xtol=1e-14)
    g2_cross = g2_of(r_cross)
    free = minimize_scalar(g2_of, bounds=(1e-4, 0.5), method="bounded",
                           options={"xatol": 1e-10})
    passed = abs(g2_cross - 0.26) <= 0.01 and abs(r_cross - 0.078) <= 0.005 \
        and free.fun <= g2_cross + 1e-12
    return _mk("dst_minimum", passed,
               {"r": r_cross, "g2": g2_cross,
                "r_unconstrained": float(free.x),
                "g2_unconstrained": float(free.fun)},
               {"g2": 0.01, "r": 0.005},
               f"optimum-line crossing at r={r_cross:.4f}, g2={g2_cross:.4f}",
               t0)


def crit_optimal_amplitude():
    """Grid search over |alpha| reproduces the closed-form optimum and value."""
    t0 = time.time()
    worst_pos, worst_val = 0.0, 0.0
    rows = {}
    for r in (0.05, 0.1, 0.2):
        amin = mx.optimal_coherent_amplitude(r)
        grid = np.arange(max(amin - 0.05, 1e-3), amin + 0.05, 1e-4)
        vals = np.array([mx.dst_observables(mx.GaussianState(a, r))["g2"]
                         for a in grid])
        i = int(np.argmin(vals))
        dev_pos = abs(grid[i] - amin)
        dev_val = abs(vals[i] - mx.dst_g2_min(r))
        worst_pos = max(worst_pos, dev_pos)
        worst_val = max(worst_val, dev_val)
        rows[r] = {"argmin": float(grid[i]), "closed_form": float(amin),
                   "min": float(vals[i]), "closed_min": mx.dst_g2_min(r)}
    passed = worst_pos <= 1e-3 and worst_val <= 1e-6
    return _mk("optimal_amplitude", passed,
               {"worst_position_dev": worst_pos, "worst_value_dev": worst_val,
                "rows": rows},
               {"position": 1e-3, "value": 1e-6},
               f"worst position dev {worst_pos:.2e}, value dev {worst_val:.2e}",
               t0)


def _rf_mixed_gn_numeric(n, f, phi, drive, gamma, delta):
    p = fs.RFParams(delta_sigma=delta, drive_sigma=drive, gamma_sigma=gamma)
    rho = sd.steady_state(fs.build_liouvillian(p))
    table = sd.moment_table(rho, p, max_order=n)
    zeta = mx.admixed_amplitude(f, phi, drive, gamma)
    mixed = mx.mixed_table(zeta, table, max_order=n, photon_mode=False)
    return mx.gN_from_table(mixed, n, photon_mode=False)


def crit_rf_homodyne_zeros():
    """At resonance the closed-form mixed g^(N) vanishes at (F, phi) =
    (2N, pi); the master-equation route agrees once its finite-drive tail
    is extrapolated away (the drive-squared corrections at the zero are the
    physical 128 drive^2/gamma^2 family, not solver error)."""
    t0 = time.time()
    gamma = 1.0
    worst_cf, worst_num = 0.0, 0.0
    for n in (2, 3, 4):
        phi_n, f_n = an.rf_interference_conditions(n, gamma, 0.0)
        _, g_cf = an.rf_homodyne_gN(n, f_n, phi_n, 1e-3, gamma, 0.0)
        worst_cf = max(worst_cf, g_cf)
        base = 1e-3 * gamma
        g_num = sd.extrapolate_vanishing_drive(
            lambda om, n=n, f_n=f_n, phi_n=phi_n:
                _rf_mixed_gn_numeric(n, f_n, phi_n, om, gamma, 0.0),
            [base, base / 2, base / 4])
        worst_num = max(worst_num, abs(g_num))
    passed = worst_cf < 1e-10 and worst_num < 1e-5
    return _mk("rf_homodyne_zeros", passed,
               {"closed_form_max": worst_cf, "numeric_max": worst_num},
               {"closed_form": 1e-10, "numeric": 1e-5},
               f"closed {worst_cf:.2e}, master-equation {worst_num:.2e}", t0)


def crit_series_coefficients():
    """Leading drive-series coefficients recovered from master-equation data.

    Resonance-fluorescence fluctuations: g2 = Gamma^4/(64 drive^4) + ...
    (coefficient 1/64 at gamma = 1); anharmonic mode at u = gamma = 1 and
    the optimal-antibunching detuning: population 2.89 drive^2, g2 constant
    0.38, g3 constant 0.067.
    """
    t0 = time.time()
    rf = fs.RFParams(delta_sigma=0.0, drive_sigma=1e-3, gamma_sigma=1.0)
    fit_rf = sd.series_expand(rf, "g2_fluct", (-4, -2),
                              window=(1e-3, 1e-2), n_samples=8)
    c_rf = fit_rf.coefficients[0]

    ext = an.ao_extrema(1.0, 1.0)
    ao = fs.AOParams(delta_b=ext.delta_minus, u=1.0, drive_b=1e-3, gamma_b=1.0)
    fit_n = sd.series_expand(ao, "n", (2, 4), window=(1e-3, 1e-2),
                             n_samples=8, n_photons=8)
    fit_g2 = sd.series_expand(ao, "g2", (0, 2), window=(1e-3, 1e-2),
                              n_samples=8, n_photons=8)
    fit_g3 = sd.series_expand(ao, "g3", (0, 2), window=(1e-3, 1e-2),
                              n_samples=8, n_photons=8)
    c_n, c_g2, c_g3 = (fit_n.coefficients[0], fit_g2.coefficients[0],
                       fit_g3.coefficients[0])
    passed = (abs(c_rf - 1 / 64) <= 0.05 / 64
              and abs(c_n - 2.89) <= 0.02 * 2.89
              and abs(c_g2 - 0.38) <= 0.01
              and abs(c_g3 - 0.06) <= 0.01)
    return _mk("series_coefficients", passed,
               {"rf_g2_leading": float(c_rf), "ao_n": float(c_n),
                "ao_g2": float(c_g2), "ao_g3": float(c_g3)},
               {"rf": "5%", "ao_n": "2%", "ao_g2": 0.01, "ao_g3": 0.01},
               f"1/64 -> {c_rf:.6f}, 2.89 -> {c_n:.3f}, 0.38 -> {c_g2:.3f}, "
               f"0.06 -> {c_g3:.3f}", t0)


def crit_ao_interference_roots():
    """External-laser zeros of the anharmonic g2 at u = gamma, optimal
    detuning: (F, phi) = (0.6152, 0.6392 pi) and (2.9075, 0.8608 pi).

    The magnitudes and the second phase match the published 0.615 / 2.907 /
    0.860 pi; the first phase, printed as 0.659 pi, is reproduced as
    0.6392 pi by the published root expressions themselves (the conjugate
    root pair evaluates to it exactly), so the corrected value is asserted.
    """
    t0 = time.time()
    ext = an.ao_extrema(1.0, 1.0)
    zeros = an.ao_g2_zeros(1.0, 1.0, ext.delta_minus)
    expected = [(0.6152, 0.6392), (2.9075, 0.8608)]
    resid = 0.0
    devs = []
    pairs = sorted(zeros)
    ok = len(pairs) == 2
    for (f, phi), (fe, pe) in zip(pairs, expected):
        devs.append((abs(f - fe), abs(phi / np.pi - pe)))
        _, g2s = an.ao_homodyne(1.0, 1e-3, 1.0, ext.delta_minus, f, phi)
        resid = max(resid, g2s)
    if ok:
        ok = all(df <= 1e-2 and dp <= 1e-2 for df, dp in devs)
    passed = ok and resid < 1e-6
    return _mk("ao_interference_roots", passed,
               {"roots": [(float(f), float(phi / np.pi)) for f, phi in pairs],
                "g2_residual": resid},
               {"F": 1e-2, "phi_over_pi": 1e-2, "g2": 1e-6},
               f"roots {[(round(f, 4), round(p / np.pi, 4)) for f, p in pairs]}"
               f", residual {resid:.1e}", t0)


def crit_jc_perfect_ua():
    """Detuning pairs solving the two-photon-amplitude zero kill the JC
    cavity g2 in both the closed form and the wavefunction route; with the
    laser on the emitter line the zero sits at cooperativity one."""
    t0 = time.time()
    g, ga, gs = 1.0, 0.1, 0.01
    pts = an.jc_exact_zero_points(g, ga, gs)
    worst_cf, worst_wf = 0.0, 0.0
    for ds, da in pts:
        p = fs.JCParams(delta_a=da, delta_sigma=ds, g=g, drive_a=1e-5,
                        chi=0.0, phi=0.0, gamma_a=ga, gamma_sigma=gs)
        worst_cf = max(worst_cf, an.jc_g2(p))
        worst_wf = max(worst_wf,
                       sd.wavefunction_coefficients(p).observables()["g2_a"])
    ga2, gs2 = 1.0, 0.01  # gamma_a = 100 gamma_sigma
    g_zero = np.sqrt(gs2 * (gs2 + ga2)) / 2.0
    coop = 4 * g_zero ** 2 / (ga2 * gs2)
    passed = (len(pts) == 2 and worst_cf < 1e-10 and worst_wf < 1e-6
              and abs(coop - 1.0) <= 0.01 + 1e-12)
    return _mk("jc_perfect_ua", passed,
               {"points": pts, "g2_closed": worst_cf, "g2_wavefunction":
                worst_wf, "cooperativity": float(coop)},
               {"closed": 1e-10, "wavefunction": 1e-6, "cooperativity": 0.01},
               f"g2 {worst_cf:.1e}/{worst_wf:.1e}, C = {coop:.4f}", t0)


def _relative_spread(vals, floor=1e-10):
    vals = np.asarray(vals, dtype=float)
    scale = np.abs(vals).max()
    if scale < floor:
        return 0.0
    return float((vals.max() - vals.min()) / scale)


def draw_system(kind, rng, drive=1e-4):
    """Random parameter draw used by the cross-engine agreement checks."""
    if kind == "rf":
        gam = rng.uniform(0.5, 2.0)
        return fs.RFParams(delta_sigma=rng.uniform(-2, 2) * gam,
                           drive_sigma=drive * gam, gamma_sigma=gam)
    if kind == "ao":
        gam = rng.uniform(0.5, 2.0)
        return fs.AOParams(delta_b=rng.uniform(-2, 2) * gam,
                           u=rng.uniform(0.1, 4.0) * gam,
                           drive_b=drive * gam, gamma_b=gam)
    if kind == "jc":
        ga = rng.uniform(0.5, 2.0)
        return fs.JCParams(delta_a=rng.uniform(-3, 3) * ga,
                           delta_sigma=rng.uniform(-3, 3) * ga,
                           g=rng.uniform(0.3, 3.0) * ga, drive_a=drive * ga,
                           chi=rng.uniform(0.0, 2.0),
                           phi=rng.uniform(0.0, 2 * np.pi), gamma_a=ga,
                           gamma_sigma=rng.uniform(0.1, 1.0) * ga)
    ga = rng.uniform(0.5, 2.0)
    return fs.PolParams(delta_a=rng.uniform(-3, 3) * ga,
                        delta_b=rng.uniform(-3, 3) * ga,
                        g=rng.uniform(0.3, 3.0) * ga,
                        u=rng.uniform(0.1, 4.0) * ga, drive_a=drive * ga,
                        chi=rng.uniform(0.0, 2.0),
                        phi=rng.uniform(0.0, 2 * np.pi), gamma_a=ga,
                        gamma_b=rng.uniform(0.1, 1.0) * ga)


def engine_g2_values(params, mix=None, n_photons=10):
    """g2 of the observed mode from every applicable engine."""
    kind = fs.system_kind(params)
    vals = {}
    if kind == "rf":
        f, phi = mix
        gam, de = params.gamma_sigma, params.delta_sigma
        om = params.drive_sigma
        _, vals["analytic"] = an.rf_homodyne_gN(2, f, phi, om, gam, de)
        zeta = mx.admixed_amplitude(f, phi, om, gam)
        tab = sd.low_drive_correlators(params, 4)
        vals["recursive"] = mx.gN_from_table(
            mx.mixed_table(zeta, tab, 2, photon_mode=False), 2,
            photon_mode=False)
        rho = sd.steady_state(fs.build_liouvillian(params))
        tl = sd.moment_table(rho, params, max_order=2)
        vals["liouvillian"] = mx.gN_from_table(
            mx.mixed_table(zeta, tl, 2, photon_mode=False), 2,
            photon_mode=False)
        vals["wavefunction"] = sd.wavefunction_coefficients(
            params, sd.HomodyneMix(f, phi)).observables()["g2_a"]
        return vals
    if kind == "ao":
        vals["analytic"] = an.ao_observables(2, params.u, params.drive_b,
                                             params.gamma_b, params.delta_b)[1]
        vals["recursive"] = sd.gN_limit(params, "b", 2)
        rho = sd.steady_state(fs.build_liouvillian(params, n_photons))
        vals["liouvillian"] = sd.gN(
            rho, fs.mode_operators(params, n_photons)["b"], 2)
        return vals
    vals["analytic"] = (an.jc_g2(params) if kind == "jc"
                        else an.pol_g2(params))
    vals["recursive"] = sd.gN_limit(params, "a", 2)
    rho = sd.steady_state(fs.build_liouvillian(params, n_photons))
    vals["liouvillian"] = sd.gN(rho, fs.mode_operators(params, n_photons)["a"], 2)
    vals["wavefunction"] = sd.wavefunction_coefficients(params
                                                        ).observables()["g2_a"]
    return vals


def crit_triple_oracle(seed=2024, n_draws=50, n_photons=10):
    """Cross-engine g2 agreement over random draws of all four systems."""
    t0 = time.time()
    rng = np.random.default_rng(seed)
    worst = {}
    failures = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for kind in ("rf", "ao", "jc", "pol"):
            wd = 0.0
            n_done = 0
            while n_done < n_draws:
                params = draw_system(kind, rng)
                mix = None
                if kind == "rf":
                    mix = (rng.uniform(0.3, 6.0), rng.uniform(0, 2 * np.pi))
                    n_leading, _ = an.rf_homodyne_gN(
                        1, mix[0], mix[1], params.drive_sigma,
                        params.gamma_sigma, params.delta_sigma)
                    # reject draws sitting on the one-photon cancellation
                    if n_leading < 1e-2 * (params.drive_sigma
                                           / params.gamma_sigma) ** 2:
                        continue
                vals = engine_g2_values(params, mix, n_photons)
                dev = _relative_spread(list(vals.values()))
                tol = 1e-2 if min(abs(v) for v in vals.values()) < 1e-3 \
                    else 1e-3
                if dev > tol:
                    failures.append((kind, dev, vals))
                wd = max(wd, dev)
                n_done += 1
            worst[kind] = wd
    passed = not failures
    return _mk("triple_oracle", passed,
               {"worst": worst, "failures": len(failures)},
               {"relative": 1e-3, "relaxed_below_1e-3": 1e-2},
               f"worst per system "
               f"{ {k: float(f'{v:.2e}') for k, v in worst.items()} }", t0)


def crit_pol_jc_limit(u_over_gamma_a=1e4, window=((-3.0, 3.0), (-2.0, 2.0)),
                      n=21):
    """Pointwise convergence of the polariton cavity g2 to the JC one.

    Measured over an n x n grid of the feature region (rates gamma_a =
    0.1 g, gamma_b = 0.01 g).  NOTE: at the stated interaction 1e4 gamma_a
    the maximum relative deviation is dominated by grid cells on the flanks
    of the narrow second-manifold resonances, where the residual 1/u level
    shift (about 2 g^2/u) is amplified by the flank slope; it measures
    about 4e-2, above the 1e-2 bound this check asserts.  The deviation
    scales exactly as 1/u and passes the same bound at 1e5 gamma_a; see
    crit_pol_jc_convergence for the rate check.
    """
    t0 = time.time()
    g, ga, gb = 1.0, 0.1, 0.01
    u = u_over_gamma_a * ga
    worst = 0.0
    arg = None
    for wa in np.linspace(window[0][0], window[0][1], n):
        for wl in np.linspace(window[1][0], window[1][1], n):
            pp = fs.PolParams(delta_a=wa - wl, delta_b=-wl, g=g, u=u,
                              drive_a=1e-5, chi=0.0, phi=0.0, gamma_a=ga,
                              gamma_b=gb)
            pj = fs.JCParams(delta_a=wa - wl, delta_sigma=-wl, g=g,
                             drive_a=1e-5, chi=0.0, phi=0.0, gamma_a=ga,
                             gamma_sigma=gb)
            gj = an.jc_g2(pj)
            dev = abs(an.pol_g2(pp) - gj) / abs(gj)
            if dev > worst:
                worst, arg = dev, (float(wa), float(wl))
    passed = worst <= 1e-2
    return _mk("pol_jc_limit", passed,
               {"max_relative_dev": worst, "worst_cell": arg,
                "u_over_gamma_a": u_over_gamma_a},
               {"relative": 1e-2},
               f"max dev {worst:.3e} at {arg}", t0)


def crit_pol_jc_convergence():
    """The polariton-JC deviation decays as 1/u (supplementary check)."""
    t0 = time.time()
    devs = {}
    for uog in (1e3, 1e4, 1e5):
        devs[uog] = crit_pol_jc_limit(uog, n=11).values["max_relative_dev"]
    r1 = devs[1e3] / devs[1e4]
    r2 = devs[1e4] / devs[1e5]
    passed = 5 < r1 < 20 and 5 < r2 < 20 and devs[1e5] <= 1e-2
    return _mk("pol_jc_convergence", passed,
               {"max_dev_by_u": {f"{k:.0e}": float(v)
                                 for k, v in devs.items()}},
               {"decade_ratio": "within (5, 20)", "dev_at_1e5": 1e-2},
               f"decade ratios {r1:.1f}, {r2:.1f}", t0)


def crit_gp_crossing(seed=2024, n_draws=20):
    """The critical coupling puts the cavity g2 exactly at one and
    separates antibunched from bunched emission."""
    t0 = time.time()
    rng = np.random.default_rng(seed)
    found = 0
    worst_val, straddle_fail = 0.0, 0
    while found < n_draws:
        ga, gs = rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)
        da, ds = rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)
        gp = an.jc_critical_coupling(ga, gs, da, ds)
        if gp is None:
            continue
        found += 1

        def g2_at(g):
            return an.jc_g2(fs.JCParams(delta_a=da, delta_sigma=ds, g=g,
                                        drive_a=1e-5, chi=0.0, phi=0.0,
                                        gamma_a=ga, gamma_sigma=gs))

        worst_val = max(worst_val, abs(g2_at(gp) - 1.0))
        lo, hi = g2_at(gp * 0.999), g2_at(gp * 1.001)
        if (lo - 1.0) * (hi - 1.0) >= 0:
            straddle_fail += 1
    passed = worst_val <= 1e-6 and straddle_fail == 0
    return _mk("gp_crossing", passed,
               {"draws": found, "worst_value_dev": worst_val,
                "straddle_failures": straddle_fail},
               {"value": 1e-6},
               f"worst |g2(g_P) - 1| = {worst_val:.2e}", t0)


def crit_finite_drive_washout(drive_over_gamma_a=0.25, n_photons=12):
    """Interference antibunching washes out at finite drive while the
    level-pinned dips stay put.

    Along the cavity-frequency cut through the exact interference zero
    (the published cut 'chosen to optimise UA'), the interference dip value
    rises by orders of magnitude at drive 0.25 gamma_a while both
    first-rung dip positions move by much less than gamma_a.
    """
    t0 = time.time()
    g, ga, gs = 1.0, 0.1, 0.01
    pts = [z for z in an.jc_exact_zero_points(g, ga, gs) if z[1] > 0]
    ds, da = pts[0]
    wl0 = -ds
    wa = wl0 + da
    drive = drive_over_gamma_a * ga

    def params(wl, om):
        return fs.JCParams(delta_a=wa - wl, delta_sigma=-wl, g=g, drive_a=om,
                           chi=0.0, phi=0.0, gamma_a=ga, gamma_sigma=gs)

    def g2_vanishing(wl):
        return an.jc_g2(params(wl, 1e-6))

    def g2_finite(wl):
        p = params(wl, drive)
        rho = sd.steady_state(fs.build_liouvillian(p, n_photons),
                              warn_truncation=False)
        return sd.gN(rho, fs.mode_operators(p, n_photons)["a"], 2)

    ua0 = minimize_scalar(g2_vanishing, bounds=(wl0 - 0.05, wl0 + 0.05),
                          method="bounded", options={"xatol": 1e-10})
    ua1 = minimize_scalar(g2_finite, bounds=(wl0 - 0.08, wl0 + 0.08),
                          method="bounded", options={"xatol": 1e-6})
    ratio = ua1.fun / max(ua0.fun, 1e-300)

    ca_shift = 0.0
    for e in an.jc_dressed_energies(1, wa, 0.0, g, ga, gs).energies:
        c = e.real
        a0 = minimize_scalar(g2_vanishing, bounds=(c - 0.2, c + 0.2),
                             method="bounded", options={"xatol": 1e-8})
        a1 = minimize_scalar(g2_finite, bounds=(c - 0.3, c + 0.3),
                             method="bounded", options={"xatol": 1e-5})
        ca_shift = max(ca_shift, abs(a1.x - a0.x))
    passed = ratio > 10.0 and ca_shift < ga
    return _mk("finite_drive_washout", passed,
               {"ua_vanishing": float(ua0.fun), "ua_finite": float(ua1.fun),
                "ratio": float(ratio), "ca_shift": float(ca_shift)},
               {"ratio": ">10", "ca_shift": f"<{ga}"},
               f"UA dip {ua0.fun:.1e} -> {ua1.fun:.1e} (x{ratio:.1e}); "
               f"CA dips moved {ca_shift:.4f}", t0)


# ---------------------------------------------------------------------------
# suites


def landmark_checks(seed=2024, tolerances=None):
    from .atlas import CheckResult

    out = []
    for lm in (crit_dst_minimum(), crit_optimal_amplitude(),
               crit_rf_homodyne_zeros(), crit_series_coefficients(),
               crit_ao_interference_roots(), crit_jc_perfect_ua(),
               crit_triple_oracle(seed=seed, n_draws=12),
               crit_pol_jc_limit(), crit_pol_jc_convergence(),
               crit_gp_crossing(seed=seed), crit_finite_drive_washout()):
        out.append(CheckResult(name=lm.name, passed=lm.passed,
                               deviation=0.0 if lm.passed else 1.0,
                               tolerance=0.5, detail=lm.detail,
                               seconds=lm.seconds))
    return out


def identity_checks(seed=2024, tolerances=None):
    from .atlas import CheckResult

    tolerances = tolerances or {}
    tol_id = tolerances.get("identity", 1e-12)
    rng = np.random.default_rng(seed)
    results = []

    def run(name, fn, tol):
        t0 = time.time()
        dev, detail = fn()
        results.append(CheckResult(name=name, passed=bool(dev <= tol),
                                   deviation=float(dev), tolerance=tol,
                                   detail=detail, seconds=time.time() - t0))

    def decomposition_identity():
        worst = 0.0
        for kind in ("jc", "pol", "ao"):
            for _ in range(6):
                params = draw_system(kind, rng, drive=1e-3)
                table = sd.low_drive_correlators(params, 6)
                key = (0, 0, 1, 1) if kind != "rf" else (1, 1, 0, 0)
                mean = table.value((0, 0, 0, 1) if kind != "rf"
                                   else (0, 1, 0, 0))
                g2 = table.value((0, 0, 2, 2)).real / table.value(key).real ** 2
                dec = mx.decompose_g2(mean, table)
                g3 = table.value((0, 0, 3, 3)).real / table.value(key).real ** 3
                dec3 = mx.decompose_g3(mean, table)
                worst = max(worst,
                            abs(dec.total - g2) / max(abs(g2), 1.0),
                            abs(dec3.total - g3) / max(abs(g3), 1.0))
        return worst, "g2 and g3 self-homodyne splits on random draws"

    def trace_preservation():
        worst = 0.0
        for kind in ("rf", "ao", "jc", "pol"):
            params = draw_system(kind, rng, drive=rng.uniform(0.01, 0.5))
            liou = fs.build_liouvillian(params, 6)
            worst = max(worst, liou.trace_residual())
        return worst, "adjoint generator annihilates the identity"

    def closed_form_splits():
        worst = 0.0
        for _ in range(8):
            u, gam = rng.uniform(0.1, 4), rng.uniform(0.5, 2)
            de = rng.uniform(-3, 3)
            dec = an.ao_decompose(u, gam, de)
            _, g2 = an.ao_observables(2, u, 1e-3, gam, de)
            worst = max(worst, abs(dec.total - g2))
            pj = draw_system("jc", rng)
            worst = max(worst,
                        abs(an.jc_g2_decomposition(pj).total - an.jc_g2(pj))
                        / max(an.jc_g2(pj), 1.0))
            pp = draw_system("pol", rng)
            worst = max(worst,
                        abs(an.pol_g2_decomposition(pp).total - an.pol_g2(pp))
                        / max(an.pol_g2(pp), 1.0))
        return worst, "closed-form decompositions resum to g2"

    run("decomposition_identity", decomposition_identity, tol_id)
    run("closed_form_splits", closed_form_splits, tol_id)
    run("trace_preservation", trace_preservation, tol_id)
    return results


def oracle_checks(seed=2024, tolerances=None):
    from .atlas import CheckResult

    tolerances = tolerances or {}
    results = []
    t0 = time.time()
    lm = crit_triple_oracle(seed=seed, n_draws=8)
    results.append(CheckResult(name="engine_agreement", passed=lm.passed,
                               deviation=max(lm.values["worst"].values()),
                               tolerance=tolerances.get("oracle", 1e-3),
                               detail=lm.detail, seconds=lm.seconds))

    def slope_check():
        rng = np.random.default_rng(seed + 1)
        params = draw_system("jc", rng, drive=1e-2)
        worst = 0.0
        drives = (1e-2, 3e-2)
        tables = []
        for om in drives:
            p = fs.with_drive(params, om)
            rho = sd.steady_state(fs.build_liouvillian(p, 8))
            tables.append(sd.moment_table(rho, p, 8, max_order=4))
        ref = sd.low_drive_correlators(params, 4)
        for key, order in ref.drive_order.items():
            if key not in tables[0].entries:
                continue
            v1, v2 = abs(tables[0].value(key)), abs(tables[1].value(key))
            if v1 < 1e-18 or v2 < 1e-18:
                continue
            slope = np.log(v2 / v1) / np.log(drives[1] / drives[0])
            worst = max(worst, abs(slope - order))
        return worst

    t0 = time.time()
    dev = slope_check()
    results.append(CheckResult(name="drive_order_slopes", passed=dev <= 0.02,
                               deviation=float(dev), tolerance=0.02,
                               detail="log-log slopes match recorded orders",
                               seconds=time.time() - t0))

    def truncation_check():
        p = fs.JCParams(delta_a=0.5, delta_sigma=-0.2, g=1.0, drive_a=0.05,
                        chi=0.3, phi=0.7, gamma_a=0.8, gamma_sigma=0.4)
        gs = []
        for n_ph in (7, 14):
            rho = sd.steady_state(fs.build_liouvillian(p, n_ph),
                                  warn_truncation=False)
            gs.append(sd.gN(rho, fs.mode_operators(p, n_ph)["a"], 2))
        return abs(gs[1] - gs[0]) / abs(gs[1])

    t0 = time.time()
    dev = truncation_check()
    results.append(CheckResult(name="truncation_doubling", passed=dev <= 1e-6,
                               deviation=float(dev), tolerance=1e-6,
                               detail="g2 stable under doubling the Fock space",
                               seconds=time.time() - t0))
    return results
