"""Homodyne and self-homodyne interference calculus.

Mixing a signal d with a coherent amplitude alpha gives a field s = alpha + d
whose normally ordered correlators follow from the double-binomial sum

    <s+^n s^m> = sum_{p,q} C(n,p) C(m,q) alpha*^p alpha^q <d+^{n-p} d^{m-q}>.

This module implements that sum, the decomposition of g2 (terms I0, I1, I2
ordered by powers of the mean field) and of g3 (J0..J4), closed-form
observables of displaced squeezed thermal states, quadrature variances and
effective squeezing of resonance-fluorescence fluctuations, the n-norm, and
the parameter maps of coherently / parametrically driven cavities.

Phase convention of the (F, phi) homodyne labels
------------------------------------------------
An external laser labeled by fraction F and phase phi admixes the amplitude

    alpha_ext = -i (drive / gamma) F e^{i phi}

into the (unit-transmittance-normalised) signal.  With the drive terms of
`fockspace` (+drive (c+ + c), standard Lindblad evolution), a resonantly
driven mode has mean field -2i drive/gamma; the -i above keeps the relative
orientation between signal and external laser such that the destructive
one- and two-photon interference conditions sit at F_N = -2N cos(phi_N),
tan(phi_N) = -2 delta/gamma (phi_N = pi on resonance).  This single map
reconciles the two sign conventions that otherwise coexist (mean fields
written as +2 drive (2 delta + i gamma)/Gamma^2 in closed-form work vs. the
steady state of the master equation as integrated here).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .steady import (CorrelatorTable, UndefinedCorrelationError,
                     POPULATION_FLOOR)


class ValidityWarning(UserWarning):
    """Result returned outside the regime where its derivation holds."""


class PumpInstabilityError(ValueError):
    """Parametric drive at or above the instability threshold."""


def admixed_amplitude(f: float, phi: float, drive: float, gamma: float) -> complex:
    """Coherent amplitude admixed by an external laser labeled (F, phi)."""
    return -1j * (drive / gamma) * f * np.exp(1j * phi)


# ---------------------------------------------------------------------------
# mixing of correlator tables


def _d_key(table: CorrelatorTable, p, q, photon_mode):
    if photon_mode:
        return (0, 0, p, q)
    return (p, q, 0, 0)


def mixed_correlator(n: int, m: int, alpha: complex, d_corrs: CorrelatorTable,
                     photon_mode: bool = None) -> complex:
    """Normally ordered <s+^n s^m> of the mixed field s = alpha + d.

    d_corrs must supply every <d+^{n-p} d^{m-q}>; a missing entry raises
    IncompleteTableError naming the tuple.  photon_mode selects which slot
    pair of the table holds the d exponents (defaults to the system's only
    or photonic mode).
    """
    if photon_mode is None:
        photon_mode = d_corrs.system not in ("rf",)
    ac = np.conj(alpha)
    total = 0.0 + 0.0j
    for p in range(n + 1):
        for q in range(m + 1):
            val = d_corrs.value(_d_key(d_corrs, n - p, m - q, photon_mode))
            total += comb(n, p) * comb(m, q) * ac ** p * alpha ** q * val
    return total


def mixed_table(alpha: complex, d_corrs: CorrelatorTable, max_order=3,
                photon_mode: bool = None) -> CorrelatorTable:
    """Correlator table of the mixed field up to exponents max_order."""
    if photon_mode is None:
        photon_mode = d_corrs.system not in ("rf",)
    entries = {}
    for p in range(max_order + 1):
        for q in range(max_order + 1):
            if p + q == 0:
                continue
            entries[_d_key(d_corrs, p, q, photon_mode)] = mixed_correlator(
                p, q, alpha, d_corrs, photon_mode)
    return CorrelatorTable(system=d_corrs.system, entries=entries,
                           drive=d_corrs.drive)


def gN_from_table(table: CorrelatorTable, n: int,
                  photon_mode: bool = None) -> float:
    if photon_mode is None:
        photon_mode = table.system not in ("rf",)
    num = table.value(_d_key(table, n, n, photon_mode)).real
    den = table.value(_d_key(table, 1, 1, photon_mode)).real
    if den <= 0 or den ** n < POPULATION_FLOOR:
        raise UndefinedCorrelationError("population vanishes", raw_moment=num)
    return float(num / den ** n)


# ---------------------------------------------------------------------------
# g2 and g3 decompositions


@dataclass
class DecompositionG2:
    """Interference split g2 = 1 + I0 + I1 + I2 (exact identity)."""

    i0: float
    i1: float
    i2: float

    @property
    def total(self):
        return 1.0 + self.i0 + self.i1 + self.i2


@dataclass
class DecompositionG3:
    """Interference split g3 = 1 + J0 + J1 + J2 + J3 + J4."""

    j0: float
    j1: float
    j2: float
    j3: float
    j4: float

    @property
    def total(self):
        return 1.0 + self.j0 + self.j1 + self.j2 + self.j3 + self.j4


def decompose_g2(mean_field: complex, s_corrs: CorrelatorTable,
                 photon_mode: bool = None) -> DecompositionG2:
    """Split g2 of a signal into its self-homodyne interference terms.

    mean_field is the coherent component <s>; the terms are grouped by the
    power of the mean field entering each numerator.  The identity
    1 + I0 + I1 + I2 = g2 holds exactly for any mean_field value.
    """
    if photon_mode is None:
        photon_mode = s_corrs.system not in ("rf",)
    key = lambda p, q: _d_key(s_corrs, p, q, photon_mode)
    n = s_corrs.value(key(1, 1)).real
    if n <= 0 or n * n < POPULATION_FLOOR:
        raise UndefinedCorrelationError("population vanishes; decomposition "
                                        "undefined", raw_moment=n)
    g2top = s_corrs.value(key(2, 2)).real
    x = abs(mean_field) ** 2
    s2 = s_corrs.value(key(0, 2))
    s12 = s_corrs.value(key(1, 2))
    mc = np.conj(mean_field)
    r2 = (mc ** 2 * s2).real
    r1 = (mc * s12).real
    i0 = (g2top - n * n - 4 * x * x + 6 * x * n + 2 * r2 - 4 * r1) / n ** 2
    i1 = 4 * (r1 - r2 + 2 * x * x - 2 * x * n) / n ** 2
    i2 = 2 * (r2 + x * n - 2 * x * x) / n ** 2
    return DecompositionG2(i0=float(i0), i1=float(i1), i2=float(i2))


def decompose_g3(mean_field: complex, s_corrs: CorrelatorTable,
                 photon_mode: bool = None) -> DecompositionG3:
    """Split g3 into the five interference terms ordered by mean-field power.

    d = s - mean_field; the terms J_m collect the contributions with m
    powers of the mean field and resum exactly, 1 + sum J_m = g3, for any
    mean-field assignment (the cross terms in <d> vanish when mean_field
    is the true coherent component).
    """
    if photon_mode is None:
        photon_mode = s_corrs.system not in ("rf",)
    d = mixed_table(-mean_field, s_corrs, max_order=3, photon_mode=photon_mode)
    key = lambda p, q: _d_key(d, p, q, photon_mode)
    m11 = d.value(key(1, 1)).real
    m01 = d.value(key(0, 1))
    x = abs(mean_field) ** 2
    ac = np.conj(mean_field)
    cross = (ac * m01).real
    ns = x + m11 + 2 * cross
    if ns <= 0 or abs(ns) ** 3 < POPULATION_FLOOR:
        raise UndefinedCorrelationError("population vanishes; decomposition "
                                        "undefined", raw_moment=ns)
    m33 = d.value(key(3, 3)).real
    m23 = d.value(key(2, 3))
    m22 = d.value(key(2, 2)).real
    m13 = d.value(key(1, 3))
    m12 = d.value(key(1, 2))
    m03 = d.value(key(0, 3))
    m02 = d.value(key(0, 2))
    n3 = ns ** 3
    j0 = (m33 - m11 ** 3) / n3
    j1 = 6 * ((ac * m23).real - cross * m11 ** 2) / n3
    j2 = (6 * (ac ** 2 * m13).real + 9 * x * m22 - 3 * x * m11 ** 2
          - 12 * m11 * cross ** 2) / n3
    j3 = (2 * (ac ** 3 * m03).real + 18 * x * (ac * m12).real
          - 12 * x * m11 * cross - 8 * cross ** 3) / n3
    j4 = (6 * x * (ac ** 2 * m02).real + 6 * x ** 2 * m11
          - 12 * x * cross ** 2) / n3
    return DecompositionG3(j0=float(j0), j1=float(j1), j2=float(j2),
                           j3=float(j3), j4=float(j4))


# ---------------------------------------------------------------------------
# Gaussian states


@dataclass(frozen=True)
class GaussianState:
    """Displaced squeezed thermal state (alpha, xi = r e^{i theta}, n_th)."""

    alpha: complex
    xi: complex
    n_th: float = 0.0

    def __post_init__(self):
        if self.n_th < 0:
            raise ValueError("thermal population must be non-negative")

    @property
    def r(self):
        return abs(self.xi)

    @property
    def theta(self):
        return float(np.angle(self.xi))

    def second_moments(self):
        """(<dd>, <d+d>) of the zero-mean fluctuation part."""
        r, th = self.r, self.theta
        nbar = self.n_th * np.cosh(2 * r) + np.sinh(r) ** 2
        msq = -(self.n_th + 0.5) * np.sinh(2 * r) * np.exp(1j * th)
        return msq, nbar


def gaussian_normal_moment(state: GaussianState, p: int, q: int) -> complex:
    """Normally ordered <s+^p s^q> of a displaced Gaussian state.

    Evaluated by Wick pairing of the fluctuation operators: normally
    ordered moments factor into pairings with contractions <dd>, <d+d+>,
    <d+d> only.
    """
    msq, nbar = state.second_moments()
    alpha = state.alpha
    ac = np.conj(alpha)
    total = 0.0 + 0.0j
    for i in range(p + 1):          # i daggered fluctuation operators
        for j in range(q + 1):
            if (i + j) % 2:
                continue
            total += (comb(p, i) * comb(q, j) * ac ** (p - i)
                      * alpha ** (q - j) * _wick(i, j, msq, nbar))
    return total


def _wick(i, j, msq, nbar, _cache={}):
    """Sum over perfect matchings of i daggered and j plain operators."""
    key = (i, j)
    if i == 0 and j == 0:
        return 1.0 + 0.0j
    if (i + j) % 2:
        return 0.0 + 0.0j
    # pair the first daggered operator with one of the others
    if i >= 1:
        total = 0.0 + 0.0j
        if i >= 2:
            total += (i - 1) * np.conj(msq) * _wick(i - 2, j, msq, nbar)
        if j >= 1:
            total += j * nbar * _wick(i - 1, j - 1, msq, nbar)
        return total
    # only plain operators left
    return (j - 1) * msq * _wick(i, j - 2, msq, nbar)


def dst_observables(state: GaussianState) -> dict:
    """Population, |<s^2>|, g2 and g3 of a displaced squeezed thermal state."""
    msq, nbar = state.second_moments()
    alpha = state.alpha
    n = abs(alpha) ** 2 + nbar
    if n <= 0:
        raise UndefinedCorrelationError("state carries no photons",
                                        raw_moment=0.0)
    s2 = alpha ** 2 + msq
    g2 = gaussian_normal_moment(state, 2, 2).real / n ** 2
    g3 = gaussian_normal_moment(state, 3, 3).real / n ** 3
    return {"n": float(n), "s2_abs": float(abs(s2)),
            "g2": float(g2), "g3": float(g3)}


def optimal_coherent_amplitude(r: float) -> float:
    """|alpha| minimising g2 of a coherent + squeezed mixture at fixed r."""
    if r < 0:
        raise ValueError("squeezing parameter must be non-negative")
    return float(np.exp(r) * np.sqrt(np.cosh(r) * np.sinh(r)))


def dst_g2_min(r: float) -> float:
    """Minimum g2 over the coherent amplitude at fixed squeezing r."""
    return float(1.0 - np.exp(-2 * r) / (1.0 + np.sinh(2 * r)))


def n_norm(g_values, n: int, finite_drive: bool = False) -> float:
    """Distance (sum_k g^(k)^n)^(1/n) from a perfect single-photon source.

    g_values lists g^(2) .. g^(n+1).  Vanishing-drive correlators are the
    intended input; finite-drive values are accepted but flagged.
    """
    g_values = list(g_values)
    if len(g_values) != n:
        raise ValueError(f"need exactly {n} correlators g2..g{n + 1}")
    if any(g < 0 for g in g_values):
        raise ValueError("correlation functions cannot be negative")
    if finite_drive:
        warnings.warn("n-norm evaluated on finite-drive correlators",
                      ValidityWarning, stacklevel=2)
    return float(np.sum(np.asarray(g_values, dtype=float) ** n) ** (1.0 / n))


# ---------------------------------------------------------------------------
# quadratures and effective squeezing


@dataclass
class QuadratureStats:
    """Normal-ordered quadrature variances and effective Gaussian labels."""

    mean: float
    var_min: float
    var_max: float
    theta_sq: float
    r_eff: float = None
    p_th_eff: float = None
    g2_eff: float = None

    @property
    def squeezed(self):
        return self.var_min < 0


def quadrature_variances(mean_field: complex, second_moment: complex,
                         population: float):
    """Extremal normal-ordered quadrature variances of a single mode.

    (var_max, var_min, theta) from <s>, <s^2> and <s+s>, independent of the
    underlying state; var below zero signals squeezing relative to vacuum.
    """
    fluct2 = second_moment - mean_field ** 2
    nfl = population - abs(mean_field) ** 2
    var_max = 0.5 * (abs(fluct2) + nfl)
    var_min = 0.5 * (-abs(fluct2) + nfl)
    theta = float(np.angle(fluct2)) if abs(fluct2) > 0 else 0.0
    return var_max, var_min, theta


def rf_effective_squeezing(drive: float, gamma: float, delta: float,
                           transmittance: float = 1.0) -> QuadratureStats:
    """Quadrature statistics of resonance-fluorescence fluctuations.

    Exact variances at any drive; the low-drive effective squeezed-thermal
    labels r_eff = 4 drive^2/Gamma^2 and p_th = 16 drive^4/Gamma^4 give
    g2_eff = Gamma^4/(64 drive^4), the leading term of the fluctuation g2.
    """
    if drive < 0:
        raise ValueError("drive must be non-negative")
    gam2 = gamma ** 2 + 4 * delta ** 2
    den = gam2 + 8 * drive ** 2
    t2 = transmittance ** 2
    if drive == 0:
        return QuadratureStats(mean=0.0, var_min=0.0, var_max=0.0,
                               theta_sq=float(np.angle((gamma - 2j * delta) ** 2)),
                               r_eff=0.0, p_th_eff=0.0, g2_eff=np.inf)
    alpha2 = 4 * drive ** 2 * gam2 / den ** 2
    n_eps = 32 * drive ** 4 / den ** 2
    var_min = 0.5 * t2 * (n_eps - alpha2)
    var_max = 0.5 * t2 * (n_eps + alpha2)
    theta = float(np.angle((gamma - 2j * delta) ** 2))
    r_eff = 4 * drive ** 2 / gam2
    p_th = 16 * drive ** 4 / gam2 ** 2
    g2_eff = r_eff ** 2 / (r_eff ** 2 + p_th) ** 2
    return QuadratureStats(mean=0.0, var_min=float(var_min),
                           var_max=float(var_max), theta_sq=theta,
                           r_eff=float(r_eff), p_th_eff=float(p_th),
                           g2_eff=float(g2_eff))


# ---------------------------------------------------------------------------
# driven-cavity parameter maps and the beam-splitter output state


def driven_cavity_state_map(kind: str, drive: float, delta: float,
                            gamma: float) -> GaussianState:
    """Gaussian steady state of a coherently or parametrically driven cavity.

    kind 'coherent': amplitude |alpha| = 2 drive / sqrt(gamma^2 + 4 delta^2)
    with the phase of the actual steady mean field (-pi/2 on resonance).
    kind 'squeezed': tanh(2r) = 4 drive / sqrt(gamma^2 + 4 delta^2), angle
    tan(theta) = gamma/(2 delta), thermal part sinh^2 r; requires the drive
    below the instability threshold.
    """
    gam2 = gamma ** 2 + 4 * delta ** 2
    if kind == "coherent":
        alpha = -2j * drive / (gamma + 2j * delta)
        return GaussianState(alpha=alpha, xi=0.0 + 0.0j, n_th=0.0)
    if kind == "squeezed":
        q = 4 * drive / np.sqrt(gam2)
        if q >= 1:
            raise PumpInstabilityError(
                "parametric drive at or above threshold: 4 drive >= "
                "sqrt(gamma^2 + 4 delta^2)")
        r = 0.5 * np.arctanh(q)
        theta = float(np.angle(2 * delta + 1j * gamma))
        return GaussianState(alpha=0.0 + 0.0j, xi=r * np.exp(1j * theta),
                             n_th=float(np.sinh(r) ** 2))
    raise ValueError(f"unknown cavity kind {kind!r}")


@dataclass(frozen=True)
class MixRatio:
    """Beam-splitter amplitude transmittance T (R = sqrt(1 - T^2))."""

    transmittance: float

    def __post_init__(self):
        if not 0.0 <= self.transmittance <= 1.0:
            raise ValueError("transmittance must lie in [0, 1]")

    @property
    def reflectance(self):
        return float(np.sqrt(max(0.0, 1.0 - self.transmittance ** 2)))


def beamsplitter_output(alpha: complex, xi: complex,
                        ratio: MixRatio = MixRatio(np.sqrt(0.5))
                        ) -> GaussianState:
    """Single-arm output of mixing a coherent and a squeezed state.

    Tracing out the other arm leaves a displaced squeezed thermal state
    with alpha_s = T alpha, r_s = R^2 r (angle theta + pi), and thermal
    population sinh^2(R T r).  The factorisation behind this result holds
    for a (near-)balanced splitter; outputs for |T - R| > 0.05 together
    with r > 0.2 are flagged.
    """
    t = ratio.transmittance
    rr = ratio.reflectance
    r = abs(xi)
    theta = float(np.angle(xi)) if r > 0 else 0.0
    if abs(t - rr) > 0.05 and r > 0.2:
        warnings.warn("beam-splitter factorisation degrades away from the "
                      "balanced case (error ~ r^2 T R (T^2 - R^2))",
                      ValidityWarning, stacklevel=2)
    return GaussianState(alpha=t * alpha,
                         xi=rr ** 2 * r * np.exp(1j * (theta + np.pi)),
                         n_th=float(np.sinh(rr * t * r) ** 2))
