"""Truncated operator algebra for the four driven-dissipative systems.

Builds mode operators in truncated Fock space, the rotating-frame
Hamiltonians of a driven two-level system (rf), an anharmonic Kerr mode
(ao), the Jaynes-Cummings model (jc) and two coupled bosonic modes with
one interacting mode (pol), and the corresponding Lindblad generators
acting on column-stacked density matrices.

Conventions (used consistently across the whole package):
  * rotating frame of the driving laser, only detunings delta = omega - omega_L
    are stored; hbar = 1.
  * master equation  d rho/dt = -i[H, rho] + sum_c (gamma_c/2) L_c rho with
    L_c rho = 2 c rho c+ - c+c rho - rho c+c.
  * drive terms enter H exactly as  drive_a (e^{i phi} a+ + e^{-i phi} a) and
    drive_sigma (sigma+ + sigma); with this choice the steady mean field of a
    resonantly driven mode is -2i*drive/gamma (phase -pi/2).  The homodyne
    parametrisation (F, phi) used in `mixer`/`analytic` is tied to this sign
    through a single documented map, see mixer.admixed_amplitude.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Union

import numpy as np
import scipy.sparse as sp

TWO_PI = 2.0 * np.pi

# Hilbert dimension above which superoperators are stored sparse.
DENSE_DIM_LIMIT = 64

# Default bosonic truncation: 10 photons (dimension 11) per mode.
DEFAULT_N_PHOTONS = 10

# Steady-state population allowed in the top Fock level before warning.
TOP_LEVEL_TOL = 1e-10


class TruncationError(ValueError):
    """Requested bosonic truncation is too small to represent a mode."""


class TruncationWarning(UserWarning):
    """Top Fock level carries more population than the configured tolerance."""


def _check_rate(name, value):
    if value <= 0:
        raise ValueError(f"{name} must be strictly positive, got {value}")


def _check_nonneg(name, value):
    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")


@dataclass(frozen=True)
class RFParams:
    """Coherently driven two-level system (resonance fluorescence)."""

    delta_sigma: float
    drive_sigma: float
    gamma_sigma: float

    def __post_init__(self):
        _check_rate("gamma_sigma", self.gamma_sigma)
        _check_nonneg("drive_sigma", self.drive_sigma)

    @classmethod
    def from_frequencies(cls, omega_sigma, omega_laser, drive_sigma, gamma_sigma):
        return cls(omega_sigma - omega_laser, drive_sigma, gamma_sigma)


@dataclass(frozen=True)
class AOParams:
    """Driven anharmonic (Kerr) mode, interaction energy u per photon pair."""

    delta_b: float
    u: float
    drive_b: float
    gamma_b: float

    def __post_init__(self):
        _check_rate("gamma_b", self.gamma_b)
        _check_nonneg("u", self.u)
        _check_nonneg("drive_b", self.drive_b)

    @classmethod
    def from_frequencies(cls, omega_b, omega_laser, u, drive_b, gamma_b):
        return cls(omega_b - omega_laser, u, drive_b, gamma_b)


@dataclass(frozen=True)
class JCParams:
    """Jaynes-Cummings model with cavity drive drive_a and dot drive chi*drive_a.

    phi is the relative phase between the two drives; it multiplies the
    cavity drive term as e^{i phi} a+ + h.c. and is reduced to [0, 2 pi).
    """

    delta_a: float
    delta_sigma: float
    g: float
    drive_a: float
    chi: float
    phi: float
    gamma_a: float
    gamma_sigma: float

    def __post_init__(self):
        _check_rate("gamma_a", self.gamma_a)
        _check_rate("gamma_sigma", self.gamma_sigma)
        _check_nonneg("g", self.g)
        _check_nonneg("drive_a", self.drive_a)
        _check_nonneg("chi", self.chi)
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def drive_sigma(self):
        return self.chi * self.drive_a

    @classmethod
    def from_frequencies(cls, omega_a, omega_sigma, omega_laser, g, drive_a,
                         chi, phi, gamma_a, gamma_sigma):
        return cls(omega_a - omega_laser, omega_sigma - omega_laser, g,
                   drive_a, chi, phi, gamma_a, gamma_sigma)


@dataclass(frozen=True)
class PolParams:
    """Cavity mode a coupled to a weakly interacting bosonic mode b."""

    delta_a: float
    delta_b: float
    g: float
    u: float
    drive_a: float
    chi: float
    phi: float
    gamma_a: float
    gamma_b: float

    def __post_init__(self):
        _check_rate("gamma_a", self.gamma_a)
        _check_rate("gamma_b", self.gamma_b)
        _check_nonneg("g", self.g)
        _check_nonneg("u", self.u)
        _check_nonneg("drive_a", self.drive_a)
        _check_nonneg("chi", self.chi)
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    @property
    def drive_b(self):
        return self.chi * self.drive_a

    @classmethod
    def from_frequencies(cls, omega_a, omega_b, omega_laser, g, u, drive_a,
                         chi, phi, gamma_a, gamma_b):
        return cls(omega_a - omega_laser, omega_b - omega_laser, g, u,
                   drive_a, chi, phi, gamma_a, gamma_b)


SystemParams = Union[RFParams, AOParams, JCParams, PolParams]


def system_kind(params: SystemParams) -> str:
    """Short tag 'rf' | 'ao' | 'jc' | 'pol' for a parameter set."""
    if isinstance(params, RFParams):
        return "rf"
    if isinstance(params, AOParams):
        return "ao"
    if isinstance(params, JCParams):
        return "jc"
    if isinstance(params, PolParams):
        return "pol"
    raise TypeError(f"not a SystemParams: {params!r}")


def with_drive(params: SystemParams, drive: float) -> SystemParams:
    """Copy of params with the primary drive amplitude replaced."""
    kind = system_kind(params)
    if kind == "rf":
        return replace(params, drive_sigma=drive)
    if kind == "ao":
        return replace(params, drive_b=drive)
    return replace(params, drive_a=drive)


def primary_drive(params: SystemParams) -> float:
    kind = system_kind(params)
    if kind == "rf":
        return params.drive_sigma
    if kind == "ao":
        return params.drive_b
    return params.drive_a


def chi_reduced(chi: float) -> float:
    """Compressed drive ratio 2/pi * atan(chi) in [0, 1)."""
    return 2.0 / np.pi * np.arctan(chi)


# ---------------------------------------------------------------------------
# operators


def build_mode(kind: str, dim: int = 2) -> np.ndarray:
    """Annihilation operator of a single mode.

    kind 'boson' gives the dim-dimensional truncated ladder operator with
    <n-1|a|n> = sqrt(n); kind 'two_level' gives the 2x2 lowering operator.
    """
    if kind == "two_level":
        return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    if kind == "boson":
        if dim < 2:
            raise TruncationError(f"bosonic truncation must be >= 2, got {dim}")
        a = np.zeros((dim, dim), dtype=complex)
        for n in range(1, dim):
            a[n - 1, n] = np.sqrt(n)
        return a
    raise ValueError(f"unknown mode kind {kind!r}")


def adjoint(op: np.ndarray) -> np.ndarray:
    return op.conj().T


def _resolve_truncation(n_photons):
    if n_photons is None:
        n_photons = DEFAULT_N_PHOTONS
    if np.isscalar(n_photons):
        return int(n_photons), int(n_photons)
    na, nb = n_photons
    return int(na), int(nb)


def mode_operators(params: SystemParams, n_photons=None) -> dict:
    """Full-space annihilation operators for every mode of the system.

    For jc the layout is H_a (x) H_sigma, for pol H_a (x) H_b.  Bosonic
    modes keep n_photons excitations (dimension n_photons + 1).
    """
    kind = system_kind(params)
    na, nb = _resolve_truncation(n_photons)
    if kind == "rf":
        return {"sigma": build_mode("two_level")}
    if kind == "ao":
        return {"b": build_mode("boson", na + 1)}
    if kind == "jc":
        a = build_mode("boson", na + 1)
        s = build_mode("two_level")
        return {
            "a": np.kron(a, np.eye(2)),
            "sigma": np.kron(np.eye(na + 1), s),
        }
    a = build_mode("boson", na + 1)
    b = build_mode("boson", nb + 1)
    return {
        "a": np.kron(a, np.eye(nb + 1)),
        "b": np.kron(np.eye(na + 1), b),
    }


def build_hamiltonian(params: SystemParams, n_photons=None) -> np.ndarray:
    """Rotating-frame Hamiltonian of the system, dense Hermitian matrix."""
    kind = system_kind(params)
    ops = mode_operators(params, n_photons)
    if kind == "rf":
        s = ops["sigma"]
        sd = adjoint(s)
        return params.delta_sigma * sd @ s + params.drive_sigma * (sd + s)
    if kind == "ao":
        b = ops["b"]
        bd = adjoint(b)
        return (params.delta_b * bd @ b
                + 0.5 * params.u * bd @ bd @ b @ b
                + params.drive_b * (bd + b))
    if kind == "jc":
        a, s = ops["a"], ops["sigma"]
        ad, sd = adjoint(a), adjoint(s)
        ph = np.exp(1j * params.phi)
        return (params.delta_a * ad @ a + params.delta_sigma * sd @ s
                + params.g * (ad @ s + sd @ a)
                + params.drive_a * (ph * ad + np.conj(ph) * a)
                + params.drive_sigma * (sd + s))
    a, b = ops["a"], ops["b"]
    ad, bd = adjoint(a), adjoint(b)
    ph = np.exp(1j * params.phi)
    return (params.delta_a * ad @ a + params.delta_b * bd @ b
            + params.g * (ad @ b + bd @ a)
            + 0.5 * params.u * bd @ bd @ b @ b
            + params.drive_a * (ph * ad + np.conj(ph) * a)
            + params.drive_b * (bd + b))


def decay_channels(params: SystemParams, n_photons=None) -> list:
    """(rate, collapse operator) pairs entering the master equation as
    (rate/2) L_c."""
    kind = system_kind(params)
    ops = mode_operators(params, n_photons)
    if kind == "rf":
        return [(params.gamma_sigma, ops["sigma"])]
    if kind == "ao":
        return [(params.gamma_b, ops["b"])]
    if kind == "jc":
        return [(params.gamma_a, ops["a"]), (params.gamma_sigma, ops["sigma"])]
    return [(params.gamma_a, ops["a"]), (params.gamma_b, ops["b"])]


@dataclass
class Superoperator:
    """Generator L of d vec(rho)/dt = L vec(rho), column-stacked vec."""

    dim: int
    matrix: object  # ndarray or scipy sparse matrix
    params: SystemParams = None
    n_photons: tuple = None

    @property
    def is_sparse(self):
        return sp.issparse(self.matrix)

    def trace_residual(self) -> float:
        """Norm of the identity's vectorisation under the adjoint generator.

        Vanishes for any trace-preserving (Lindblad) generator.
        """
        ident = np.eye(self.dim, dtype=complex).reshape(-1, order="F")
        if self.is_sparse:
            out = self.matrix.conj().T @ ident
        else:
            out = self.matrix.conj().T @ ident
        return float(np.linalg.norm(out))


def _lindblad_matrix(h, channels, sparse):
    dim = h.shape[0]
    if sparse:
        kron, eye = sp.kron, sp.identity
        hm = sp.csr_matrix(h)
        ident = eye(dim, format="csr", dtype=complex)
        liou = -1j * (kron(ident, hm) - kron(hm.T, ident))
        for rate, c in channels:
            cm = sp.csr_matrix(c)
            cdc = (cm.conj().T @ cm).tocsr()
            liou = liou + (rate / 2.0) * (
                2.0 * kron(cm.conj(), cm) - kron(ident, cdc) - kron(cdc.T, ident)
            )
        return liou.tocsr()
    ident = np.eye(dim, dtype=complex)
    liou = -1j * (np.kron(ident, h) - np.kron(h.T, ident))
    for rate, c in channels:
        cdc = c.conj().T @ c
        liou = liou + (rate / 2.0) * (
            2.0 * np.kron(c.conj(), c) - np.kron(ident, cdc) - np.kron(cdc.T, ident)
        )
    return liou


def build_liouvillian(params: SystemParams, n_photons=None) -> Superoperator:
    """Lindblad generator of the system in the laser frame.

    Storage is dense below Hilbert dimension 64 and sparse above.
    """
    h = build_hamiltonian(params, n_photons)
    channels = decay_channels(params, n_photons)
    dim = h.shape[0]
    mat = _lindblad_matrix(h, channels, sparse=dim >= DENSE_DIM_LIMIT)
    return Superoperator(dim=dim, matrix=mat, params=params,
                         n_photons=_resolve_truncation(n_photons))


def top_level_population(rho: np.ndarray, params: SystemParams,
                         n_photons=None) -> float:
    """Largest occupation of a top Fock level; used for truncation checks."""
    kind = system_kind(params)
    na, nb = _resolve_truncation(n_photons)
    if kind == "rf":
        return 0.0
    if kind == "ao":
        return float(rho[na, na].real)
    if kind == "jc":
        dim_s = 2
        probs = np.diag(rho).real.reshape(na + 1, dim_s)
        return float(probs[na, :].sum())
    probs = np.diag(rho).real.reshape(na + 1, nb + 1)
    return float(max(probs[na, :].sum(), probs[:, nb].sum()))


def warn_if_truncated(rho, params, n_photons=None, tol=TOP_LEVEL_TOL):
    pop = top_level_population(rho, params, n_photons)
    if pop > tol:
        warnings.warn(
            f"top Fock level holds population {pop:.2e} > {tol:.0e}; "
            "increase the truncation", TruncationWarning, stacklevel=2)
    return pop
