"""Closed-form photon statistics and blockade-feature finders per system.

All vanishing-drive results are built from the exact leading-order
excitation amplitudes (one- and two-excitation linear systems), which keeps
every expression a few lines of complex arithmetic instead of the expanded
real rational functions; the two forms are algebraically identical and the
amplitude route is cross-checked against the full master equation by the
test suite.

Homodyne (F, phi) labels follow the convention of mixer.admixed_amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .fockspace import JCParams, PolParams, SystemParams, system_kind
from .mixer import DecompositionG2, admixed_amplitude
from .steady import UndefinedCorrelationError

SQRT2 = np.sqrt(2.0)


# ---------------------------------------------------------------------------
# resonance fluorescence


@dataclass
class RFSteady:
    """Exact steady state of the driven two-level system."""

    n_sigma: float      # excited-state population
    alpha: complex      # mean field <sigma>
    n_fluct: float      # incoherent population n_sigma - |alpha|^2
    p: float            # normalised effective drive 2 Omega_eff / gamma


def rf_steady(drive: float, gamma: float, delta: float = 0.0) -> RFSteady:
    """Population and coherence of resonance fluorescence, exact in drive.

    The returned alpha is the steady <sigma> of the master equation as
    integrated by this package; closed-form work often quotes its negative
    (see the mixer phase-map note).
    """
    gam2 = gamma ** 2 + 4 * delta ** 2
    den = gam2 + 8 * drive ** 2
    n_sigma = 4 * drive ** 2 / den
    alpha = -2 * drive * (2 * delta + 1j * gamma) / den
    p = 2 * drive / np.sqrt(gam2)
    return RFSteady(n_sigma=float(n_sigma), alpha=complex(alpha),
                    n_fluct=float(n_sigma - abs(alpha) ** 2), p=float(p))


def rf_gN_fluct(n: int, drive: float, gamma: float, delta: float = 0.0) -> float:
    """g^(N) of the resonance-fluorescence fluctuations alone, exact.

    Equals Gamma^{2(N-1)} [(N-1)^2 Gamma^2 + 8 N^2 drive^2] /
    (8^N drive^{2N}) with Gamma^2 = gamma^2 + 4 delta^2; the leading term
    for N = 2 is Gamma^4 / (64 drive^4).
    """
    if n < 2:
        raise ValueError("fluctuation correlations start at N = 2")
    if drive <= 0:
        raise UndefinedCorrelationError("fluctuations vanish at zero drive")
    gam2 = gamma ** 2 + 4 * delta ** 2
    return float(gam2 ** (n - 1) * ((n - 1) ** 2 * gam2 + 8 * n ** 2 * drive ** 2)
                 / (8.0 ** n * drive ** (2 * n)))


def rf_fluct_correlator(k: int, l: int, drive: float, gamma: float,
                        delta: float = 0.0) -> complex:
    """Normally ordered <eps+^k eps^l> of the fluctuation field eps = sigma - <sigma>."""
    st = rf_steady(drive, gamma, delta)
    a, n_eps = st.alpha, st.n_fluct
    if k == 0 and l == 0:
        return 1.0 + 0.0j
    x = abs(a) ** 2
    return ((-1.0) ** (k + l) * np.conj(a) ** (k - 1) * a ** (l - 1)
            * (x * (1 - k - l + k * l) + k * l * n_eps))


def rf_homodyne_gN(n: int, f: float, phi: float, drive: float, gamma: float,
                   delta: float = 0.0, transmittance: float = 1.0):
    """(n_s, g^(N)_s) of resonance fluorescence mixed with an external laser.

    Leading order in the drive, exact in the laser fraction F and phase;
    the N = 1 branch returns (n_s, 1).  n_s = 0 at the one-photon
    interference point, where the correlations are undefined.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    if f < 0:
        raise ValueError("F must be non-negative")
    gam2 = gamma ** 2 + 4 * delta ** 2
    zeta = admixed_amplitude(f, phi, drive, gamma)
    alpha0 = -2 * drive * (2 * delta + 1j * gamma) / gam2
    n0 = 4 * drive ** 2 / gam2
    z2 = abs(zeta) ** 2
    cross = (np.conj(zeta) * alpha0).real
    n_s = transmittance ** 2 * (z2 + n0 + 2 * cross)
    if n == 1:
        return float(n_s), 1.0
    bracket = z2 + n ** 2 * n0 + 2 * n * cross
    den = z2 + n0 + 2 * cross
    if den <= 0 or den ** n <= 0:
        raise UndefinedCorrelationError(
            "signal population vanishes at this (F, phi)",
            raw_moment=z2 ** (n - 1) * bracket)
    g = z2 ** (n - 1) * bracket / den ** n
    return float(n_s), float(max(g, 0.0))


def rf_interference_conditions(n: int, gamma: float, delta: float = 0.0):
    """(phi_N, F_N) cancelling the N-photon correlation of the mixed signal.

    tan(phi_N) = -2 delta / gamma on the branch with F_N = -2 N cos(phi_N)
    positive; at resonance phi_N = pi and F_N = 2 N.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    phi = np.pi - np.arctan(2 * delta / gamma)
    f = -2.0 * n * np.cos(phi)
    return float(phi % (2 * np.pi)), float(f)


# ---------------------------------------------------------------------------
# anharmonic oscillator


def ao_amplitudes(u: float, drive: float, gamma: float, delta: float,
                  nmax: int = 2):
    """Leading-order Fock amplitudes C_0..C_nmax of the driven Kerr mode."""
    c = [1.0 + 0.0j]
    for k in range(1, nmax + 1):
        pole = k * delta + 0.5 * k * (k - 1) * u - 0.5j * k * gamma
        c.append(-np.sqrt(k) * drive * c[-1] / pole)
    return c


def ao_level(n: int, u: float, omega_b: float = 0.0) -> float:
    """Energy of the n-excitation level, n omega_b + n(n-1) u / 2."""
    return float(n * omega_b + 0.5 * n * (n - 1) * u)


def ao_observables(n: int, u: float, drive: float, gamma: float,
                   delta: float):
    """(n_b, g^(N)_b) of the anharmonic mode at vanishing drive.

    n_b = 4 drive^2 / (gamma^2 + 4 delta^2); g^(N) is the closed product
    (gamma^2 + 4 delta^2)^{N-1} / prod_k [gamma^2 + (k u + 2 delta)^2].
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    gam2 = gamma ** 2 + 4 * delta ** 2
    n_b = 4 * drive ** 2 / gam2
    if n == 1:
        return float(n_b), 1.0
    prod = 1.0
    for k in range(1, n):
        prod *= gamma ** 2 + (k * u + 2 * delta) ** 2
    return float(n_b), float(gam2 ** (n - 1) / prod)


@dataclass
class AOExtrema:
    delta_minus: float
    delta_plus: float
    g2_minus: float
    g2_plus: float


def ao_extrema(u: float, gamma: float) -> AOExtrema:
    """Detunings and values of the g2 minimum (-) and maximum (+)."""
    if u <= 0:
        raise ValueError("extrema require a finite interaction strength")
    root = np.sqrt(u ** 2 + 4 * gamma ** 2)
    dm = -(u - root) / 4.0
    dp = -(u + root) / 4.0
    g2m = 1.0 + u * (u - root) / (2 * gamma ** 2)
    g2p = 1.0 + u * (u + root) / (2 * gamma ** 2)
    return AOExtrema(delta_minus=float(dm), delta_plus=float(dp),
                     g2_minus=float(g2m), g2_plus=float(g2p))


def ao_decompose(u: float, gamma: float, delta: float) -> DecompositionG2:
    """Self-homodyne split of the anharmonic g2 at vanishing drive."""
    den = gamma ** 2 + (u + 2 * delta) ** 2
    return DecompositionG2(i0=float(u ** 2 / den), i1=0.0,
                           i2=float(-2 * u * (u + 2 * delta) / den))


def ao_homodyne(u: float, drive: float, gamma: float, delta: float,
                f: float, phi: float, transmittance: float = 1.0):
    """(n_s, g2_s) of the anharmonic mode mixed with an external laser.

    Exact leading order via the mixed two-photon amplitude
    A2 = zeta^2/sqrt(2) + sqrt(2) zeta C1 + C2.
    """
    if f < 0:
        raise ValueError("F must be non-negative")
    c0, c1, c2 = ao_amplitudes(u, drive, gamma, delta, nmax=2)
    zeta = admixed_amplitude(f, phi, drive, gamma)
    a1 = zeta + c1
    a2 = zeta ** 2 / SQRT2 + SQRT2 * zeta * c1 + c2
    n_s = transmittance ** 2 * abs(a1) ** 2
    if abs(a1) ** 4 <= 0:
        raise UndefinedCorrelationError(
            "signal population vanishes at this (F, phi)",
            raw_moment=2 * abs(a2) ** 2)
    return float(n_s), float(2 * abs(a2) ** 2 / abs(a1) ** 4)


def ao_homodyne_population_zero(u: float, gamma: float, delta: float):
    """(phi_1, F_1) cancelling the coherent population of the mixed signal."""
    phi = np.pi - np.arctan(2 * delta / gamma)
    f = -2.0 * np.cos(phi)
    return float(phi % (2 * np.pi)), float(f)


PHI_SCAN_STEP = 1e-3


def ao_g2_zeros(u: float, gamma: float, delta: float):
    """(F, phi) pairs with positive real F that zero the mixed g2.

    The two complex roots zeta of the mixed two-photon amplitude are exact;
    following the root-finding recipe used throughout, F(phi) is scanned
    over [0, 2 pi) for sign changes of its imaginary part and polished by
    bracketing, keeping F > 0 and merging pairs with equal F.
    """
    if u <= 0:
        return []
    _, c1, c2 = ao_amplitudes(u, 1.0, gamma, delta, nmax=2)
    disc = np.sqrt(c1 ** 2 - SQRT2 * c2)
    roots = [-c1 + disc, -c1 - disc]
    out = []
    for zeta in roots:
        if abs(zeta) == 0:
            continue
        w = 1j * gamma * zeta  # F(phi) = w e^{-i phi}, unit drive

        def im_f(phi, w=w):
            return (w * np.exp(-1j * phi)).imag

        phis = np.arange(0.0, 2 * np.pi + PHI_SCAN_STEP, PHI_SCAN_STEP)
        vals = np.array([im_f(p) for p in phis])
        for i in range(len(phis) - 1):
            if vals[i] == 0.0 and (w * np.exp(-1j * phis[i])).real > 0:
                out.append((float((w * np.exp(-1j * phis[i])).real),
                            float(phis[i])))
            if vals[i] * vals[i + 1] < 0:
                phi0 = brentq(im_f, phis[i], phis[i + 1], xtol=1e-12)
                fval = (w * np.exp(-1j * phi0)).real
                if fval > 0:
                    out.append((float(fval), float(phi0 % (2 * np.pi))))
    merged = []
    for f, phi in sorted(out):
        if any(abs(f - f2) < 1e-8 and abs(phi - p2) < 1e-6
               for f2, p2 in merged):
            continue
        merged.append((f, phi))
    return merged


# ---------------------------------------------------------------------------
# Jaynes-Cummings


def _jc_amplitudes(delta_a, delta_sigma, g, gamma_a, gamma_sigma, chi, phi,
                   drive=1.0):
    """Leading-order amplitudes (c10, c01, c20, c11) of the driven JC model."""
    lam = drive * np.exp(1j * phi)
    lam_m = chi * drive
    a_pole = delta_a - 0.5j * gamma_a
    b_pole = delta_sigma - 0.5j * gamma_sigma
    one = np.linalg.solve(np.array([[a_pole, g], [g, b_pole]], complex),
                          -np.array([lam, lam_m]))
    c10, c01 = one
    two = np.linalg.solve(
        np.array([[2 * a_pole, SQRT2 * g],
                  [SQRT2 * g, a_pole + b_pole]], complex),
        -np.array([SQRT2 * lam * c10, lam * c01 + lam_m * c10]))
    c20, c11 = two
    return c10, c01, c20, c11


def jc_populations(params: JCParams):
    """(n_a, n_sigma) at vanishing driving, evaluated at the stored drive."""
    c10, c01, _, _ = _jc_amplitudes(
        params.delta_a, params.delta_sigma, params.g, params.gamma_a,
        params.gamma_sigma, params.chi, params.phi, params.drive_a)
    return float(abs(c10) ** 2), float(abs(c01) ** 2)


def jc_g2(params: JCParams) -> float:
    """Cavity g2 of the JC model at vanishing driving (drive-independent)."""
    c10, _, c20, _ = _jc_amplitudes(
        params.delta_a, params.delta_sigma, params.g, params.gamma_a,
        params.gamma_sigma, params.chi, params.phi, 1.0)
    den = abs(c10) ** 4
    if den <= 0:
        raise UndefinedCorrelationError("cavity population vanishes",
                                        raw_moment=2 * abs(c20) ** 2)
    return float(2 * abs(c20) ** 2 / den)


def jc_g2_decomposition(params: JCParams) -> DecompositionG2:
    """Self-homodyne split of the JC cavity g2 at vanishing drive.

    I0 = |<d^2>|^2 / n^2 with <d^2> = sqrt(2) c20 - c10^2, I1 = 0 exactly
    at leading order, I2 = 2 Re[c10*^2 <d^2>] / n^2.  The closed forms of
    the cavity-drive special case follow by substitution.
    """
    c10, _, c20, _ = _jc_amplitudes(
        params.delta_a, params.delta_sigma, params.g, params.gamma_a,
        params.gamma_sigma, params.chi, params.phi, 1.0)
    return _amplitude_decomposition(c10, c20)


def _amplitude_decomposition(c10, c20):
    n2 = abs(c10) ** 4
    d2 = SQRT2 * c20 - c10 ** 2
    i0 = abs(d2) ** 2 / n2
    i2 = 2 * (np.conj(c10) ** 2 * d2).real / n2
    return DecompositionG2(i0=float(i0), i1=0.0, i2=float(i2))


@dataclass
class DressedLevels:
    """Complex dressed energies of an excitation manifold."""

    n: int
    energies: tuple          # complex values, imaginary parts <= 0
    splitting: float = None  # normal-mode splitting where applicable

    def laser_resonances(self):
        """Laser frequencies driving this manifold: Re(E)/n."""
        return tuple(float(e.real / self.n) for e in self.energies)


def jc_dressed_energies(n: int, omega_a: float, omega_sigma: float, g: float,
                        gamma_a: float, gamma_sigma: float) -> DressedLevels:
    """Dissipative JC ladder energies E^(n)_+- (absolute frequencies)."""
    if n < 1:
        raise ValueError("manifold index must be >= 1")
    mean = (n * omega_a + (omega_sigma - omega_a) / 2.0
            - 0.25j * ((2 * n - 1) * gamma_a + gamma_sigma))
    disc = np.sqrt(n * g ** 2
                   + ((omega_a - omega_sigma) / 2.0
                      - 0.25j * (gamma_a - gamma_sigma)) ** 2)
    return DressedLevels(n=n, energies=(mean + disc, mean - disc))


def jc_ua_delta_a(delta_sigma: float, g: float, gamma_a: float,
                  gamma_sigma: float, chi: float = 0.0,
                  phi: float = 0.0) -> complex:
    """Complex detuning delta_a solving c20 = 0 at fixed delta_sigma.

    The real part traces the unconventional-antibunching curve; a vanishing
    imaginary part marks an exact zero of g2.  For chi = 0 the real part
    reduces to -delta_sigma (1 + 4 g^2 / (gamma_sigma^2 + 4 delta_sigma^2)).
    """
    lam = np.exp(1j * phi)
    lam_m = chi
    b_pole = delta_sigma - 0.5j * gamma_sigma

    def c20_numerator(a_pole):
        c10n = -lam * b_pole + g * lam_m
        c01n = -lam_m * a_pole + g * lam
        return (-lam * (a_pole + b_pole) * c10n
                + g * (lam * c01n + lam_m * c10n))

    p0 = c20_numerator(0.0)
    p1 = c20_numerator(1.0)
    a_pole = -p0 / (p1 - p0)
    return a_pole + 0.5j * gamma_a


def jc_exact_zero_points(g: float, gamma_a: float, gamma_sigma: float,
                         chi: float = 0.0, phi: float = 0.0,
                         span: float = None, n_scan: int = 4001):
    """(delta_sigma, delta_a) pairs where the cavity g2 vanishes exactly.

    Found as the real-detuning roots of the two-photon amplitude; for
    chi = 0 these are the closed-form pair delta_sigma^2 = (gamma_sigma^2/4)
    (4 g^2 / (gamma_sigma (gamma_sigma + gamma_a)) - 1), delta_a =
    -(2 + gamma_a/gamma_sigma) delta_sigma, which exist only when
    4 g^2 >= gamma_sigma (gamma_sigma + gamma_a).
    """
    if chi == 0.0:
        rad = (gamma_sigma ** 2 / 4.0) * (
            4 * g ** 2 / (gamma_sigma * (gamma_sigma + gamma_a)) - 1.0)
        if rad < 0:
            return []
        ds = np.sqrt(rad)
        out = []
        for s in (+ds, -ds) if ds > 0 else (0.0,):
            da = -(2.0 + gamma_a / gamma_sigma) * s
            out.append((float(s), float(da)))
        return out
    # general drive ratio: scan delta_sigma for Im(delta_a) = 0
    if span is None:
        span = 10.0 * max(g, gamma_a, gamma_sigma)

    def im_da(ds):
        return jc_ua_delta_a(ds, g, gamma_a, gamma_sigma, chi, phi).imag

    grid = np.linspace(-span, span, n_scan)
    vals = np.array([im_da(x) for x in grid])
    out = []
    for i in range(len(grid) - 1):
        if vals[i] * vals[i + 1] < 0:
            ds = brentq(im_da, grid[i], grid[i + 1], xtol=1e-12)
            da = jc_ua_delta_a(ds, g, gamma_a, gamma_sigma, chi, phi).real
            out.append((float(ds), float(da)))
    return out


def jc_ub_delta_sigma(g: float, chi: float, phi: float) -> float:
    """Laser condition depleting the cavity coherent fraction."""
    return float(chi * g * np.cos(phi))


def jc_critical_coupling(gamma_a: float, gamma_sigma: float, delta_a: float,
                         delta_sigma: float):
    """Coupling g_P with cavity g2 = 1; None when no real crossing exists.

    Roots of the cubic in g^2 obtained from the closed-form g2; each
    candidate is kept only when g2 actually crosses one there.
    """
    dp = delta_a + delta_sigma
    gp = gamma_a + gamma_sigma
    gam_a2 = gamma_a ** 2 + 4 * delta_a ** 2
    gam_s2 = gamma_sigma ** 2 + 4 * delta_sigma ** 2
    gam_p2 = gp ** 2 + 4 * dp ** 2
    c1 = gamma_a * gamma_sigma - 4 * delta_a * delta_sigma
    c2 = 4 * delta_sigma * dp - gamma_sigma * gp
    c3 = gamma_a * gp - 4 * delta_a * dp
    poly = [256.0,
            128.0 * (c1 + c2),
            64.0 * c1 * c2 + 16.0 * gam_s2 * (gam_p2 + gam_a2 - gam_s2),
            8.0 * gam_s2 * (c1 * gam_p2 + c2 * gam_a2 - c3 * gam_s2)]
    candidates = [r.real for r in np.roots(poly)
                  if abs(r.imag) < 1e-9 * max(1.0, abs(r)) and r.real > 0]
    crossings = []
    for big_g in sorted(candidates):
        g = np.sqrt(big_g)
        lo = _jc_g2_raw(g * (1 - 1e-6), gamma_a, gamma_sigma, delta_a,
                        delta_sigma)
        hi = _jc_g2_raw(g * (1 + 1e-6), gamma_a, gamma_sigma, delta_a,
                        delta_sigma)
        if (lo - 1.0) * (hi - 1.0) < 0:
            crossings.append(float(g))
    return crossings[0] if crossings else None


def _jc_g2_raw(g, gamma_a, gamma_sigma, delta_a, delta_sigma):
    c10, _, c20, _ = _jc_amplitudes(delta_a, delta_sigma, g, gamma_a,
                                    gamma_sigma, 0.0, 0.0, 1.0)
    return 2 * abs(c20) ** 2 / abs(c10) ** 4


# ---------------------------------------------------------------------------
# microcavity polaritons


def _pol_amplitudes(delta_a, delta_b, g, u, gamma_a, gamma_b, chi, phi,
                    drive=1.0):
    lam = drive * np.exp(1j * phi)
    lam_m = chi * drive
    a_pole = delta_a - 0.5j * gamma_a
    b_pole = delta_b - 0.5j * gamma_b
    one = np.linalg.solve(np.array([[a_pole, g], [g, b_pole]], complex),
                          -np.array([lam, lam_m]))
    c10, c01 = one
    mat = np.array([[2 * a_pole, SQRT2 * g, 0.0],
                    [SQRT2 * g, a_pole + b_pole, SQRT2 * g],
                    [0.0, SQRT2 * g, 2 * b_pole + u]], complex)
    rhs = -np.array([SQRT2 * lam * c10,
                     lam * c01 + lam_m * c10,
                     SQRT2 * lam_m * c01])
    c20, c11, c02 = np.linalg.solve(mat, rhs)
    return c10, c01, c20, c11, c02


def pol_populations(params: PolParams):
    c10, c01, *_ = _pol_amplitudes(
        params.delta_a, params.delta_b, params.g, params.u, params.gamma_a,
        params.gamma_b, params.chi, params.phi, params.drive_a)
    return float(abs(c10) ** 2), float(abs(c01) ** 2)


def pol_g2(params: PolParams, which: str = "cavity") -> float:
    """g2 of the cavity or exciton field at vanishing driving.

    The exciton branch is independent of the drive ratio chi (asserted by
    the test suite); the cavity branch recovers the JC result as u grows.
    """
    c10, c01, c20, _, c02 = _pol_amplitudes(
        params.delta_a, params.delta_b, params.g, params.u, params.gamma_a,
        params.gamma_b, params.chi, params.phi, 1.0)
    if which == "cavity":
        den = abs(c10) ** 4
        if den <= 0:
            raise UndefinedCorrelationError("cavity population vanishes",
                                            raw_moment=2 * abs(c20) ** 2)
        return float(2 * abs(c20) ** 2 / den)
    if which == "exciton":
        den = abs(c01) ** 4
        if den <= 0:
            raise UndefinedCorrelationError("exciton population vanishes",
                                            raw_moment=2 * abs(c02) ** 2)
        return float(2 * abs(c02) ** 2 / den)
    raise ValueError("which must be 'cavity' or 'exciton'")


def pol_g2_decomposition(params: PolParams) -> DecompositionG2:
    """Self-homodyne split of the polariton cavity g2 at vanishing drive."""
    c10, _, c20, _, _ = _pol_amplitudes(
        params.delta_a, params.delta_b, params.g, params.u, params.gamma_a,
        params.gamma_b, params.chi, params.phi, 1.0)
    return _amplitude_decomposition(c10, c20)


def pol_dressed_energies(omega_a: float, omega_b: float, g: float, u: float,
                         gamma_a: float, gamma_b: float,
                         first_order: bool = False) -> DressedLevels:
    """Two-excitation manifold energies E^(2)_{0,+-}.

    By default the non-Hermitian two-excitation block is diagonalised
    exactly; first_order selects the strong-coupling expressions to first
    order in the interaction instead.
    """
    splitting = float(np.sqrt(g ** 2 + (omega_a - omega_b) ** 2 / 4.0))
    if first_order:
        r = splitting
        d = omega_a - omega_b
        e0 = omega_a + omega_b + g ** 2 * u / (2 * r ** 2)
        ep = (omega_a + omega_b + 2 * r
              + (2 * g ** 2 + d * (d - 2 * r)) * u / (8 * r ** 2))
        em = (omega_a + omega_b - 2 * r
              + (2 * g ** 2 + d * (d + 2 * r)) * u / (8 * r ** 2))
        energies = (complex(em), complex(e0), complex(ep))
    else:
        h2 = np.array(
            [[2 * omega_a - 1j * gamma_a, SQRT2 * g, 0.0],
             [SQRT2 * g, omega_a + omega_b - 0.5j * (gamma_a + gamma_b),
              SQRT2 * g],
             [0.0, SQRT2 * g, 2 * omega_b + u - 1j * gamma_b]], complex)
        energies = tuple(sorted(np.linalg.eigvals(h2), key=lambda e: e.real))
    return DressedLevels(n=2, energies=energies, splitting=splitting)


def pol_first_rung(omega_a: float, omega_b: float, g: float, gamma_a: float,
                   gamma_b: float) -> DressedLevels:
    """One-excitation polariton energies (same algebra as the JC first rung)."""
    return jc_dressed_energies(1, omega_a, omega_b, g, gamma_a, gamma_b)


def pol_ua_delta_a(delta_b: float, g: float, u: float, gamma_a: float,
                   gamma_b: float, chi: float = 0.0,
                   phi: float = 0.0) -> complex:
    """Complex delta_a solving the polariton c20 = 0 at fixed delta_b.

    chi = 0 real part: -delta_b - 4 g^2 delta_b / (gamma_b^2 + 4 delta_b^2)
    + 2 g^2 (u + 2 delta_b) / (gamma_b^2 + (u + 2 delta_b)^2).
    """
    lam = np.exp(1j * phi)
    lam_m = chi
    b_pole = delta_b - 0.5j * gamma_b

    def c20_numerator(a_pole):
        det1 = a_pole * b_pole - g ** 2
        c10n = -lam * b_pole + g * lam_m      # c10 * det1
        c01n = -lam_m * a_pole + g * lam      # c01 * det1
        rhs1 = -SQRT2 * lam * c10n
        rhs2 = -(lam * c01n + lam_m * c10n)
        rhs3 = -SQRT2 * lam_m * c01n
        cof11 = (a_pole + b_pole) * (2 * b_pole + u) - 2 * g ** 2
        cof21 = SQRT2 * g * (2 * b_pole + u)
        cof31 = 2 * g ** 2
        del det1
        return rhs1 * cof11 - rhs2 * cof21 + rhs3 * cof31

    p0 = c20_numerator(0.0)
    p1 = c20_numerator(1.0)
    a_pole = -p0 / (p1 - p0)
    return a_pole + 0.5j * gamma_a


def pol_exact_zero_points(g: float, u: float, gamma_a: float, gamma_b: float,
                          chi: float = 0.0, phi: float = 0.0,
                          span: float = None, n_scan: int = 4001):
    """(delta_b, delta_a) pairs with an exact zero of the cavity g2."""
    if span is None:
        span = 10.0 * max(g, u, gamma_a, gamma_b)

    def im_da(db):
        return pol_ua_delta_a(db, g, u, gamma_a, gamma_b, chi, phi).imag

    grid = np.linspace(-span, span, n_scan)
    vals = np.array([im_da(x) for x in grid])
    out = []
    for i in range(len(grid) - 1):
        if vals[i] * vals[i + 1] < 0:
            db = brentq(im_da, grid[i], grid[i + 1], xtol=1e-12)
            da = pol_ua_delta_a(db, g, u, gamma_a, gamma_b, chi, phi).real
            out.append((float(db), float(da)))
    return out


def pol_ub_delta_b(g: float, chi: float, phi: float) -> float:
    return float(chi * g * np.cos(phi))


# ---------------------------------------------------------------------------
# feature classification


@dataclass
class FeatureCondition:
    """A classified correlation feature and where it lives.

    kind is CA/CB/UA/UB; axes names the coordinates of the locus; points
    holds either a single point or a sampled polyline; exact marks loci
    where the closed-form g2 vanishes identically.
    """

    kind: str
    axes: tuple
    points: list
    exact: bool = False
    auxiliary: dict = None
    label: str = ""

    def as_dict(self):
        return {
            "kind": self.kind,
            "axes": list(self.axes),
            "points": [[float(x) for x in p] for p in self.points],
            "exact": bool(self.exact),
            "auxiliary": self.auxiliary,
            "label": self.label,
        }


def _clip_polyline(points, window):
    (xlo, xhi), (ylo, yhi) = window
    return [p for p in points
            if xlo <= p[0] <= xhi and ylo <= p[1] <= yhi]


def jc_feature_conditions(omega_sigma: float, g: float, gamma_a: float,
                          gamma_sigma: float, chi: float = 0.0,
                          phi: float = 0.0, window=((-3.0, 3.0), (-2.0, 2.0)),
                          samples: int = 201):
    """Sampled CA/CB/UA/UB loci of the JC model in the (omega_a, omega_L) plane."""
    (xlo, xhi), (ylo, yhi) = window
    feats = []
    omega_as = np.linspace(xlo, xhi, samples)
    for branch in (0, 1):
        ca, cb = [], []
        for wa in omega_as:
            e1 = jc_dressed_energies(1, wa, omega_sigma, g, gamma_a,
                                     gamma_sigma).energies[branch]
            e2 = jc_dressed_energies(2, wa, omega_sigma, g, gamma_a,
                                     gamma_sigma).energies[branch]
            ca.append((float(wa), float(e1.real)))
            cb.append((float(wa), float(e2.real / 2.0)))
        feats.append(FeatureCondition(
            kind="CA", axes=("omega_a", "omega_L"),
            points=_clip_polyline(ca, window),
            label=f"first-rung resonance ({'+' if branch == 0 else '-'})"))
        feats.append(FeatureCondition(
            kind="CB", axes=("omega_a", "omega_L"),
            points=_clip_polyline(cb, window),
            label=f"second-rung two-photon resonance "
                  f"({'+' if branch == 0 else '-'})"))
    # UA curve, parametrised by the laser frequency
    omega_ls = np.linspace(ylo, yhi, samples)
    ua = []
    for wl in omega_ls:
        da = jc_ua_delta_a(omega_sigma - wl, g, gamma_a, gamma_sigma,
                           chi, phi).real
        ua.append((float(wl + da), float(wl)))
    feats.append(FeatureCondition(kind="UA", axes=("omega_a", "omega_L"),
                                  points=_clip_polyline(ua, window),
                                  label="two-photon interference minimum"))
    # exact zeros
    pts = []
    for ds, da in jc_exact_zero_points(g, gamma_a, gamma_sigma, chi, phi):
        wl = omega_sigma - ds
        pts.append((float(wl + da), float(wl)))
    pts = _clip_polyline(pts, window)
    if pts:
        feats.append(FeatureCondition(kind="UA", axes=("omega_a", "omega_L"),
                                      points=pts, exact=True,
                                      label="exact interference zeros"))
    # UB line omega_L = omega_sigma - chi g cos phi
    wl_ub = omega_sigma - jc_ub_delta_sigma(g, chi, phi)
    if ylo <= wl_ub <= yhi:
        feats.append(FeatureCondition(
            kind="UB", axes=("omega_a", "omega_L"),
            points=[(float(x), float(wl_ub)) for x in (xlo, xhi)],
            label="coherent-fraction depletion line"))
    return feats


def pol_feature_conditions(omega_b: float, g: float, u: float, gamma_a: float,
                           gamma_b: float, chi: float = 0.0, phi: float = 0.0,
                           window=((-3.0, 3.0), (-2.0, 2.0)),
                           samples: int = 201):
    """Sampled CA/CB/UA/UB loci of the polariton system, (omega_a, omega_L)."""
    (xlo, xhi), (ylo, yhi) = window
    feats = []
    omega_as = np.linspace(xlo, xhi, samples)
    for branch in (0, 1):
        ca = []
        for wa in omega_as:
            e1 = pol_first_rung(wa, omega_b, g, gamma_a, gamma_b
                                ).energies[branch]
            ca.append((float(wa), float(e1.real)))
        feats.append(FeatureCondition(
            kind="CA", axes=("omega_a", "omega_L"),
            points=_clip_polyline(ca, window),
            label=f"first polariton resonance ({'+' if branch == 0 else '-'})"))
    for branch in range(3):
        cb = []
        for wa in omega_as:
            e2 = pol_dressed_energies(wa, omega_b, g, u, gamma_a, gamma_b
                                      ).energies[branch]
            cb.append((float(wa), float(e2.real / 2.0)))
        feats.append(FeatureCondition(
            kind="CB", axes=("omega_a", "omega_L"),
            points=_clip_polyline(cb, window),
            label=f"second-manifold two-photon resonance #{branch}"))
    omega_ls = np.linspace(ylo, yhi, samples)
    ua = []
    for wl in omega_ls:
        da = pol_ua_delta_a(omega_b - wl, g, u, gamma_a, gamma_b,
                            chi, phi).real
        ua.append((float(wl + da), float(wl)))
    feats.append(FeatureCondition(kind="UA", axes=("omega_a", "omega_L"),
                                  points=_clip_polyline(ua, window),
                                  label="two-photon interference minimum"))
    pts = []
    for db, da in pol_exact_zero_points(g, u, gamma_a, gamma_b, chi, phi):
        wl = omega_b - db
        pts.append((float(wl + da), float(wl)))
    pts = _clip_polyline(pts, window)
    if pts:
        feats.append(FeatureCondition(kind="UA", axes=("omega_a", "omega_L"),
                                      points=pts, exact=True,
                                      label="exact interference zeros"))
    wl_ub = omega_b - pol_ub_delta_b(g, chi, phi)
    if ylo <= wl_ub <= yhi:
        feats.append(FeatureCondition(
            kind="UB", axes=("omega_a", "omega_L"),
            points=[(float(x), float(wl_ub)) for x in (xlo, xhi)],
            label="coherent-fraction depletion line"))
    return feats


def rf_feature_conditions(gamma: float, delta: float = 0.0, orders=(2, 3, 4)):
    """Interference features of laser-corrected resonance fluorescence."""
    feats = []
    phi1, f1 = rf_interference_conditions(1, gamma, delta)
    feats.append(FeatureCondition(kind="UB", axes=("F", "phi"),
                                  points=[(f1, phi1)],
                                  auxiliary={"F": f1, "phi": phi1},
                                  label="one-photon (population) cancellation"))
    for n in orders:
        phin, fn = rf_interference_conditions(n, gamma, delta)
        feats.append(FeatureCondition(
            kind="UA", axes=("F", "phi"), points=[(fn, phin)], exact=True,
            auxiliary={"F": fn, "phi": phin, "order": n},
            label=f"{n}-photon interference zero"))
    feats.append(FeatureCondition(kind="CA", axes=("F", "phi"),
                                  points=[(0.0, 0.0)], exact=True,
                                  label="bare two-level emission, all orders"))
    return feats


def ao_feature_conditions(u: float, gamma: float, delta: float = None):
    """Blockade features of the anharmonic mode.

    CA/CB are the detuning extrema of the bare g2; UA/UB are the external
    laser (F, phi) conditions evaluated at `delta` (defaults to the optimal
    antibunching detuning).
    """
    ext = ao_extrema(u, gamma)
    if delta is None:
        delta = ext.delta_minus
    feats = [
        FeatureCondition(kind="CA", axes=("delta_b",),
                         points=[(ext.delta_minus,)],
                         auxiliary={"g2": ext.g2_minus},
                         label="first-level resonance (g2 minimum)"),
        FeatureCondition(kind="CB", axes=("delta_b",),
                         points=[(ext.delta_plus,)],
                         auxiliary={"g2": ext.g2_plus},
                         label="two-photon resonance (g2 maximum)"),
    ]
    phi1, f1 = ao_homodyne_population_zero(u, gamma, delta)
    feats.append(FeatureCondition(kind="UB", axes=("F", "phi"),
                                  points=[(f1, phi1)],
                                  auxiliary={"F": f1, "phi": phi1,
                                             "delta_b": delta},
                                  label="one-photon cancellation"))
    for f, phi in ao_g2_zeros(u, gamma, delta):
        feats.append(FeatureCondition(kind="UA", axes=("F", "phi"),
                                      points=[(f, phi)], exact=True,
                                      auxiliary={"F": f, "phi": phi,
                                                 "delta_b": delta},
                                      label="two-photon interference zero"))
    return feats


def feature_conditions(params: SystemParams, window=((-3.0, 3.0), (-2.0, 2.0)),
                       omega_matter: float = 0.0, samples: int = 201):
    """Dispatch feature classification for any system parameter set."""
    kind = system_kind(params)
    if kind == "rf":
        return rf_feature_conditions(params.gamma_sigma, params.delta_sigma)
    if kind == "ao":
        return ao_feature_conditions(params.u, params.gamma_b, params.delta_b)
    if kind == "jc":
        return jc_feature_conditions(omega_matter, params.g, params.gamma_a,
                                     params.gamma_sigma, params.chi,
                                     params.phi, window, samples)
    return pol_feature_conditions(omega_matter, params.g, params.u,
                                  params.gamma_a, params.gamma_b, params.chi,
                                  params.phi, window, samples)
