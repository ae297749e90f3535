"""Steady states and correlators by three independent routes.

1. full Liouvillian solve (`steady_state` + `moment_table`), exact at any
   drive within the Fock truncation;
2. recursive vanishing-drive solver (`low_drive_correlators`, `gN_limit`):
   the coupled equations of motion for normally ordered correlators
   <m1+^m m1^n m2+^mu m2^nu> close order by order in the drive, and the
   leading coefficient of every correlator is obtained exactly by block
   back-substitution, no Fock truncation involved;
3. two-excitation wavefunction amplitudes (`wavefunction_coefficients`)
   from the non-Hermitian effective Hamiltonian.

Routes 2 and 3 produce exact vanishing-drive limits; route 1 carries the
physical finite-drive corrections, which `extrapolate_vanishing_drive`
removes when a numeric estimate of a zero-drive quantity is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import fockspace as fs
from .fockspace import (SystemParams, Superoperator, system_kind,
                        primary_drive, adjoint)


class UndefinedCorrelationError(ValueError):
    """gN is requested for a signal with (numerically) zero population."""

    def __init__(self, message, raw_moment=None):
        super().__init__(message)
        self.raw_moment = raw_moment


class DegenerateSteadyStateError(RuntimeError):
    """The Liouvillian has more than one steady state."""

    def __init__(self, message, null_dimension=None):
        super().__init__(message)
        self.null_dimension = null_dimension


class DegenerateBlockError(RuntimeError):
    """A block of the correlator hierarchy is singular."""

    def __init__(self, message, block_order=None):
        super().__init__(message)
        self.block_order = block_order


class FitWindowError(RuntimeError):
    """A drive-power fit is too ill-conditioned to be trusted."""


RESIDUAL_TOL = 1e-11
POPULATION_FLOOR = 1e-300


# ---------------------------------------------------------------------------
# route 1: full Liouvillian


def steady_state(liou: Superoperator, check_residual=True,
                 warn_truncation=True) -> np.ndarray:
    """Steady density matrix of a trace-preserving generator.

    The singular linear system L vec(rho) = 0 is closed by replacing the
    row of the last diagonal element with the trace constraint.
    """
    dim = liou.dim
    n = dim * dim
    rhs = np.zeros(n, dtype=complex)
    rhs[n - 1] = 1.0
    trace_row = np.zeros(n, dtype=complex)
    trace_row[np.arange(dim) * (dim + 1)] = 1.0

    if liou.is_sparse:
        rho = None
        if liou.params is not None:
            rho = _sylvester_steady(liou.params, liou.n_photons)
        if rho is None:
            vec = _sparse_steady_solve(liou, rhs, trace_row)
            rho = vec.reshape(dim, dim, order="F")
    else:
        mat = np.array(liou.matrix, dtype=complex)
        mat[n - 1, :] = trace_row
        try:
            vec = np.linalg.solve(mat, rhs)
        except np.linalg.LinAlgError as exc:
            null_dim = _null_space_dimension(liou)
            raise DegenerateSteadyStateError(
                f"steady state not unique (null space dimension {null_dim})",
                null_dimension=null_dim) from exc
        rho = vec.reshape(dim, dim, order="F")

    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real

    if check_residual:
        res = _apply(liou.matrix, rho.reshape(-1, order="F"))
        resnorm = float(np.linalg.norm(res))
        if resnorm > RESIDUAL_TOL * max(1.0, _matrix_scale(liou.matrix)):
            null_dim = _null_space_dimension(liou)
            if null_dim > 1:
                raise DegenerateSteadyStateError(
                    f"steady state not unique (null space dimension {null_dim})",
                    null_dimension=null_dim)
            raise DegenerateSteadyStateError(
                f"steady-state residual {resnorm:.2e} above tolerance")
    if warn_truncation and liou.params is not None:
        fs.warn_if_truncated(rho, liou.params, liou.n_photons)
    return rho


def _sylvester_steady(params, n_photons, tol=1e-15, max_iter=3000):
    """Steady state by jump-recycling fixed-point iteration.

    Writing L(rho) = Fs rho + rho Fs+ + J(rho) with a shifted non-Hermitian
    generator Fs = -iH - sum (gamma/2) c+c - s and the recycling feed
    J(rho) = sum gamma c rho c+ + 2 s rho, the steady state is the fixed
    point of rho -> -Sylvester(Fs, Fs+)^{-1} J(rho).  One Schur
    factorisation of the Hilbert-space-sized Fs serves every iteration,
    which makes this orders of magnitude cheaper than factorising the
    vectorised Liouvillian.  Returns None when the iteration fails to
    converge (strong-drive corner cases); callers then fall back to the
    direct sparse solve.
    """
    from scipy.linalg import schur, get_lapack_funcs

    h = fs.build_hamiltonian(params, n_photons)
    channels = fs.decay_channels(params, n_photons)
    dim = h.shape[0]
    shift = 0.5 * max(rate for rate, _ in channels)
    f_op = -1j * h - 0.5 * sum(rate * (c.conj().T @ c) for rate, c in channels)
    f_op -= shift * np.eye(dim)
    t_mat, z_mat = schur(f_op, output="complex")
    zh = z_mat.conj().T
    trsyl = get_lapack_funcs(("trsyl",), (t_mat,))[0]

    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    for _ in range(max_iter):
        feed = 2 * shift * rho
        for rate, c in channels:
            feed = feed + rate * (c @ rho @ c.conj().T)
        q = zh @ (-feed) @ z_mat
        y, scale, info = trsyl(t_mat, t_mat, q, tranb="C")
        if info < 0:
            return None
        new = z_mat @ (y / scale) @ zh
        new = 0.5 * (new + new.conj().T)
        tr = np.trace(new).real
        if not np.isfinite(tr) or abs(tr) < 1e-300:
            return None
        new /= tr
        delta = np.max(np.abs(new - rho))
        rho = new
        if delta < tol:
            return rho
    return None


def _nd_permutation(shape):
    """Nested-dissection-style ordering for a regular lattice of indices."""
    idx = np.arange(int(np.prod(shape))).reshape(shape)
    out = []

    def rec(block):
        if block.size <= 32:
            out.extend(block.ravel().tolist())
            return
        ax = int(np.argmax(block.shape))
        mid = block.shape[ax] // 2
        sl = [slice(None)] * block.ndim
        left, sep, right = list(sl), list(sl), list(sl)
        left[ax] = slice(0, mid)
        sep[ax] = slice(mid, mid + 1)
        right[ax] = slice(mid + 1, block.shape[ax])
        rec(block[tuple(left)])
        rec(block[tuple(right)])
        out.extend(block[tuple(sep)].ravel().tolist())

    rec(idx)
    return np.asarray(out)


def _sparse_steady_solve(liou, rhs, trace_row):
    """Direct solve of the trace-pinned system for sparse Liouvillians.

    Columns are pre-ordered by a lattice nested dissection (the Liouvillian
    graph is a short-range stencil over bra/ket Fock indices), which keeps
    the LU fill moderate.
    """
    n = liou.dim * liou.dim
    mat = liou.matrix.tolil(copy=True)
    mat[n - 1, :] = trace_row
    mat = mat.tocsc()
    perm = None
    if liou.params is not None and liou.n_photons is not None:
        kind = system_kind(liou.params)
        na, nb = liou.n_photons
        if kind == "pol":
            box = (na + 1, nb + 1, na + 1, nb + 1)
        elif kind == "jc":
            box = (na + 1, 2, na + 1, 2)
        else:
            box = (liou.dim, liou.dim)
        perm = _nd_permutation(box)
    try:
        if perm is not None:
            sub = mat[perm][:, perm].tocsc()
            lu = spla.splu(sub, permc_spec="NATURAL")
            sol = lu.solve(rhs[perm])
            vec = np.empty_like(sol)
            vec[perm] = sol
        else:
            vec = spla.spsolve(mat, rhs)
        return vec
    except Exception as exc:  # singular factorisation
        raise DegenerateSteadyStateError(str(exc)) from exc


def _apply(mat, vec):
    return mat @ vec


def _matrix_scale(mat):
    if sp.issparse(mat):
        data = mat.data
        return float(np.abs(data).max()) if data.size else 1.0
    return float(np.abs(mat).max())


def _null_space_dimension(liou, tol=1e-9):
    mat = liou.matrix.toarray() if liou.is_sparse else liou.matrix
    svals = np.linalg.svd(mat, compute_uv=False)
    scale = svals.max() if svals.size else 0.0
    return int(np.sum(svals <= tol * max(scale, 1.0)))


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.trace(rho @ op))


def gN(rho: np.ndarray, mode: np.ndarray, n: int) -> float:
    """Zero-delay N-th order coherence <a+^N a^N> / <a+a>^N.

    Returns exactly 1.0 for N = 1; raises UndefinedCorrelationError when
    the mode population vanishes.
    """
    if n < 1:
        raise ValueError("correlation order must be >= 1")
    if n == 1:
        return 1.0
    pop = expectation(rho, adjoint(mode) @ mode).real
    top = expectation(rho, np.linalg.matrix_power(adjoint(mode), n)
                      @ np.linalg.matrix_power(mode, n)).real
    if pop <= 0 or pop ** n < POPULATION_FLOOR:
        raise UndefinedCorrelationError(
            "population vanishes, gN undefined", raw_moment=top)
    return float(top / pop ** n)


# ---------------------------------------------------------------------------
# correlator tables

#: canonical index layout: (m, n, mu, nu) for <M+^m M^n a+^mu a^nu> where M is
#: the matter mode (sigma or b) and a the photon mode; single-mode systems use
#: the slots of their only mode and keep the other pair at zero (rf -> (m, n,
#: 0, 0), ao -> (0, 0, mu, nu)).


@dataclass
class CorrelatorTable:
    """Steady normally ordered correlators keyed by exponent tuple.

    `entries` hold values evaluated at the drive the table was built with;
    for vanishing-drive tables `coefficients` hold the exact leading
    coefficients (value at formal unit drive) and `drive_order` the power
    of the drive at which each entry enters.
    """

    system: str
    entries: dict
    drive_order: dict = None
    coefficients: dict = None
    drive: float = None

    def _pauli_zero(self, key) -> bool:
        # two-level matter: sigma+^m sigma^n vanishes identically for m,n > 1
        return self.system in ("rf", "jc") and (key[0] > 1 or key[1] > 1)

    def value(self, key) -> complex:
        key = tuple(key)
        if key == (0, 0, 0, 0):
            return 1.0 + 0.0j
        if key in self.entries:
            return self.entries[key]
        if self._pauli_zero(key):
            return 0.0 + 0.0j
        raise IncompleteTableError(key)

    def coefficient(self, key) -> complex:
        key = tuple(key)
        if key == (0, 0, 0, 0):
            return 1.0 + 0.0j
        if self.coefficients is not None and key in self.coefficients:
            return self.coefficients[key]
        if self._pauli_zero(key):
            return 0.0 + 0.0j
        if self.coefficients is None:
            raise ValueError("table carries finite-drive values only")
        raise IncompleteTableError(key)

    def conjugation_residual(self) -> float:
        worst = 0.0
        for (m, n, mu, nu), v in self.entries.items():
            w = self.entries.get((n, m, nu, mu))
            if w is not None:
                worst = max(worst, abs(v - np.conj(w)))
        return worst


class IncompleteTableError(KeyError):
    """A required correlator is missing from the table."""

    def __init__(self, key):
        super().__init__(f"correlator {key} missing from table")
        self.key = tuple(key)


def moment_table(rho: np.ndarray, params: SystemParams, n_photons=None,
                 max_order=4) -> CorrelatorTable:
    """Numeric correlator table from a steady density matrix.

    Contains every <M+^m M^n a+^mu a^nu> with m+n+mu+nu <= 2*max_order and
    individual exponents <= max_order.
    """
    kind = system_kind(params)
    ops = fs.mode_operators(params, n_photons)
    if kind == "rf":
        mats = {"matter": ops["sigma"], "photon": None}
    elif kind == "ao":
        mats = {"matter": None, "photon": ops["b"]}
    elif kind == "jc":
        mats = {"matter": ops["sigma"], "photon": ops["a"]}
    else:
        mats = {"matter": ops["b"], "photon": ops["a"]}

    def powers(op, kmax):
        if op is None:
            return None
        out = [np.eye(op.shape[0], dtype=complex)]
        for _ in range(kmax):
            out.append(out[-1] @ op)
        return out

    matter_cap = 0 if kind == "ao" else max_order
    photon_cap = 0 if kind == "rf" else max_order
    mp = powers(mats["matter"], matter_cap)
    pp = powers(mats["photon"], photon_cap)

    # Tr(rho M P) = sum of (rho M) * P^T elementwise; avoids one matmul per
    # exponent combination.
    dim = rho.shape[0]
    ident = np.eye(dim, dtype=complex)
    entries = {}
    for m in range(matter_cap + 1):
        for n in range(matter_cap + 1):
            if mp is not None:
                rho_m = rho @ (adjoint(mp[m]) @ mp[n])
            else:
                rho_m = rho
            for mu in range(photon_cap + 1):
                for nu in range(photon_cap + 1):
                    if m + n + mu + nu == 0 or m + n + mu + nu > 2 * max_order:
                        continue
                    pt = (adjoint(pp[mu]) @ pp[nu]).T if pp is not None else ident
                    entries[(m, n, mu, nu)] = complex((rho_m * pt).sum())
    return CorrelatorTable(system=kind, entries=entries,
                           drive=primary_drive(params))


# ---------------------------------------------------------------------------
# route 2: recursive vanishing-drive solver

# Mode descriptors for the generic correlator equations of motion.  Matter
# exponents occupy slots (0, 1) of the index tuple, photon exponents slots
# (2, 3); the term generator below produces d<O>/dt coefficients from the
# commutator algebra of each Hamiltonian piece and is unit-tested against a
# brute-force expansion in truncated Fock space.


def _mode_layout(params):
    kind = system_kind(params)
    if kind == "rf":
        return {
            "matter": dict(kind="two_level", delta=params.delta_sigma,
                           gamma=params.gamma_sigma, drive=1.0 + 0j, kerr=0.0),
            "photon": None,
            "g": 0.0,
        }
    if kind == "ao":
        return {
            "matter": None,
            "photon": dict(kind="boson", delta=params.delta_b,
                           gamma=params.gamma_b, drive=1.0 + 0j, kerr=params.u),
            "g": 0.0,
        }
    if kind == "jc":
        return {
            "matter": dict(kind="two_level", delta=params.delta_sigma,
                           gamma=params.gamma_sigma, drive=params.chi + 0j,
                           kerr=0.0),
            "photon": dict(kind="boson", delta=params.delta_a,
                           gamma=params.gamma_a,
                           drive=np.exp(1j * params.phi), kerr=0.0),
            "g": params.g,
        }
    return {
        "matter": dict(kind="boson", delta=params.delta_b,
                       gamma=params.gamma_b, drive=params.chi + 0j,
                       kerr=params.u),
        "photon": dict(kind="boson", delta=params.delta_a,
                       gamma=params.gamma_a,
                       drive=np.exp(1j * params.phi), kerr=0.0),
        "g": params.g,
    }


def correlator_eom_terms(params: SystemParams, idx, include_higher=True):
    """Coefficients of d<O_idx>/dt = sum coeff * <O_target>.

    Yields (coeff, target, omega_power): drive coefficients are given per
    unit primary drive amplitude (omega_power = 1), all other terms carry
    omega_power = 0.  Terms whose target lies in a higher operator-order
    block than reachable at leading order are only emitted when
    include_higher is set (they are dropped by the vanishing-drive
    recursion but needed for exactness checks).
    """
    m, n, mu, nu = idx
    layout = _mode_layout(params)
    matter, photon, g = layout["matter"], layout["photon"], layout["g"]
    order = m + n + mu + nu
    terms = []

    diag = 0.0 + 0.0j
    if matter is not None:
        diag += 1j * (m - n) * matter["delta"] - 0.5 * matter["gamma"] * (m + n)
        if matter["kind"] == "boson" and matter["kerr"]:
            diag += 0.5j * matter["kerr"] * (m - n) * (m + n - 1)
            if m - n != 0:
                terms.append((1j * matter["kerr"] * (m - n),
                              (m + 1, n + 1, mu, nu), 0))
    if photon is not None:
        diag += 1j * (mu - nu) * photon["delta"] - 0.5 * photon["gamma"] * (mu + nu)
        if photon["kind"] == "boson" and photon["kerr"]:
            diag += 0.5j * photon["kerr"] * (mu - nu) * (mu + nu - 1)
            if mu - nu != 0:
                terms.append((1j * photon["kerr"] * (mu - nu),
                              (m, n, mu + 1, nu + 1), 0))
    if diag != 0:
        terms.append((diag, idx, 0))

    # drive terms, per unit drive amplitude
    if photon is not None:
        lam = photon["drive"]
        if nu > 0:
            terms.append((-1j * nu * lam, (m, n, mu, nu - 1), 1))
        if mu > 0:
            terms.append((1j * mu * np.conj(lam), (m, n, mu - 1, nu), 1))
    if matter is not None:
        lam = matter["drive"]
        if matter["kind"] == "boson":
            if n > 0:
                terms.append((-1j * n * lam, (m, n - 1, mu, nu), 1))
            if m > 0:
                terms.append((1j * m * np.conj(lam), (m - 1, n, mu, nu), 1))
        else:
            if (m, n) == (0, 1):
                terms.append((2j * lam, (1, 1, mu, nu), 1))
                terms.append((-1j * lam, (0, 0, mu, nu), 1))
            elif (m, n) == (1, 0):
                terms.append((-2j * np.conj(lam), (1, 1, mu, nu), 1))
                terms.append((1j * np.conj(lam), (0, 0, mu, nu), 1))
            elif (m, n) == (1, 1):
                terms.append((-1j * lam, (1, 0, mu, nu), 1))
                terms.append((1j * np.conj(lam), (0, 1, mu, nu), 1))

    # coupling g (a+ M + M+ a)
    if g and matter is not None and photon is not None:
        if matter["kind"] == "boson":
            # i g [a+ b, O]
            if nu > 0:
                terms.append((-1j * g * nu, (m, n + 1, mu, nu - 1), 0))
            if m > 0:
                terms.append((1j * g * m, (m - 1, n, mu + 1, nu), 0))
            # i g [b+ a, O]
            if n > 0:
                terms.append((-1j * g * n, (m, n - 1, mu, nu + 1), 0))
            if mu > 0:
                terms.append((1j * g * mu, (m + 1, n, mu - 1, nu), 0))
        else:
            # i g [a+ sigma, O]
            if (m, n) == (0, 0) and nu > 0:
                terms.append((-1j * g * nu, (0, 1, mu, nu - 1), 0))
            elif (m, n) == (1, 0):
                terms.append((1j * g, (0, 0, mu + 1, nu), 0))
                terms.append((-2j * g, (1, 1, mu + 1, nu), 0))
                if nu > 0:
                    terms.append((-1j * g * nu, (1, 1, mu, nu - 1), 0))
            elif (m, n) == (1, 1):
                terms.append((1j * g, (0, 1, mu + 1, nu), 0))
            # i g [sigma+ a, O]
            if (m, n) == (0, 0) and mu > 0:
                terms.append((1j * g * mu, (1, 0, mu - 1, nu), 0))
            elif (m, n) == (0, 1):
                if mu > 0:
                    terms.append((1j * g * mu, (1, 1, mu - 1, nu), 0))
                terms.append((2j * g, (1, 1, mu, nu + 1), 0))
                terms.append((-1j * g, (0, 0, mu, nu + 1), 0))
            elif (m, n) == (1, 1):
                terms.append((-1j * g, (1, 0, mu, nu + 1), 0))

    if not include_higher:
        terms = [t for t in terms
                 if sum(t[1]) + t[2] <= order]
    return terms


def _block_indices(params, order, matter_cap=None):
    """All exponent tuples of a given total operator order, sorted."""
    kind = system_kind(params)
    if kind == "rf":
        out = [(m, n, 0, 0) for m in range(2) for n in range(2)
               if m + n == order]
    elif kind == "ao":
        out = [(0, 0, mu, nu) for mu in range(order + 1)
               for nu in range(order + 1) if mu + nu == order]
    else:
        mcap = 1 if kind == "jc" else order
        out = []
        for m in range(mcap + 1):
            for n in range(mcap + 1):
                for mu in range(order + 1):
                    for nu in range(order + 1):
                        if m + n + mu + nu == order:
                            out.append((m, n, mu, nu))
    return sorted(out, key=lambda k: (k[0] + k[1], k))


def low_drive_correlators(params: SystemParams, max_total_order: int
                          ) -> CorrelatorTable:
    """Leading-order steady correlators up to the requested operator order.

    Solves the block recursion v_k = -M_k^{-1} X_k v_{k-1} with one unit of
    the primary drive factored out of every drive coefficient, so the
    returned coefficients are exact vanishing-drive objects; entries are
    those coefficients evaluated at the parameter set's own drive.
    """
    if max_total_order < 2:
        raise ValueError("max_total_order must be >= 2")
    coeffs = {(0, 0, 0, 0): 1.0 + 0.0j}
    orders = {(0, 0, 0, 0): 0}
    prev = {(0, 0, 0, 0): 1.0 + 0.0j}
    for order in range(1, max_total_order + 1):
        idxs = _block_indices(params, order)
        if not idxs:
            prev = {}
            continue
        pos = {k: i for i, k in enumerate(idxs)}
        nblk = len(idxs)
        mat = np.zeros((nblk, nblk), dtype=complex)
        rhs = np.zeros(nblk, dtype=complex)
        for k in idxs:
            row = pos[k]
            for coeff, target, omega_power in correlator_eom_terms(
                    params, k, include_higher=False):
                target_order = sum(target)
                if omega_power == 0 and target_order == order:
                    mat[row, pos[target]] += coeff
                elif omega_power == 1 and target_order == order - 1:
                    val = coeffs.get(target)
                    if val is not None:
                        rhs[row] += coeff * val
        try:
            sol = np.linalg.solve(mat, -rhs)
        except np.linalg.LinAlgError as exc:
            raise DegenerateBlockError(
                f"singular correlator block at order {order}",
                block_order=order) from exc
        block = dict(zip(idxs, sol))
        # enforce exact conjugation symmetry of the stored table
        for k in idxs:
            ks = (k[1], k[0], k[3], k[2])
            if ks in block:
                avg = 0.5 * (block[k] + np.conj(block[ks]))
                block[k], block[ks] = avg, np.conj(avg)
        for k, v in block.items():
            coeffs[k] = v
            orders[k] = order
        prev = block

    drive = primary_drive(params)
    coeffs.pop((0, 0, 0, 0))
    orders.pop((0, 0, 0, 0))
    entries = {k: coeffs[k] * drive ** orders[k] for k in coeffs}
    return CorrelatorTable(system=system_kind(params), entries=entries,
                           drive_order=orders, coefficients=coeffs,
                           drive=drive)


def gN_limit(params: SystemParams, mode: str, n: int,
             table: CorrelatorTable = None) -> float:
    """Vanishing-driving g^(N) of a mode, exact leading-order ratio.

    mode is 'a' (photon), 'sigma' or 'b' (matter); for rf/ao the only mode
    of the system is used regardless.  Drive powers cancel between the
    numerator and denominator, so the result is drive-independent.
    """
    if n < 2:
        raise ValueError("gN_limit is defined for N >= 2")
    kind = system_kind(params)
    matter_like = mode in ("sigma",) or (kind == "pol" and mode == "b") \
        or (kind == "rf")
    if kind == "ao":
        matter_like = False
    if kind == "rf" and n >= 2:
        return 0.0
    if kind == "jc" and matter_like and n >= 2:
        return 0.0
    if table is None:
        table = low_drive_correlators(params, 2 * n)
    if matter_like:
        num_key = (n, n, 0, 0)
        den_key = (1, 1, 0, 0)
    else:
        num_key = (0, 0, n, n)
        den_key = (0, 0, 1, 1)
    num = table.coefficient(num_key).real
    den = table.coefficient(den_key).real
    if den <= 0:
        raise UndefinedCorrelationError(
            "leading population coefficient vanishes", raw_moment=num)
    return float(num / den ** n)


# ---------------------------------------------------------------------------
# route 3: wavefunction amplitudes


class HomodyneMix:
    """External-laser admixture labels (F, phi) with transmittance T.

    The admixed coherent amplitude in the signal frame is
    -i (drive/gamma) F e^{i phi}; see mixer.admixed_amplitude for the
    convention.
    """

    def __init__(self, f: float, phi: float, transmittance: float = 1.0):
        if f < 0:
            raise ValueError("F must be non-negative")
        self.f = float(f)
        self.phi = float(phi) % fs.TWO_PI
        self.transmittance = float(transmittance)

    def amplitude(self, drive, gamma) -> complex:
        return -1j * (drive / gamma) * self.f * np.exp(1j * self.phi)


@dataclass
class WavefunctionCoeffs:
    """Two-excitation amplitudes C[(n_photon, n_matter)], C[(0,0)] = 1."""

    system: str
    coeffs: dict
    drive: float

    def dominance(self) -> float:
        """Total weight outside the vacuum amplitude (should be << 1)."""
        return float(sum(abs(v) ** 2 for k, v in self.coeffs.items()
                         if k != (0, 0)))

    def observables(self) -> dict:
        c = self.coeffs
        out = {}
        c10 = c.get((1, 0), 0.0)
        c01 = c.get((0, 1), 0.0)
        out["n_a"] = abs(c10) ** 2
        out["n_matter"] = abs(c01) ** 2
        if (2, 0) in c:
            if abs(c10) ** 4 < POPULATION_FLOOR:
                raise UndefinedCorrelationError(
                    "photon amplitude vanishes", raw_moment=2 * abs(c[(2, 0)]) ** 2)
            out["g2_a"] = 2 * abs(c[(2, 0)]) ** 2 / abs(c10) ** 4
        if (0, 2) in c:
            if abs(c01) ** 4 < POPULATION_FLOOR:
                raise UndefinedCorrelationError(
                    "matter amplitude vanishes", raw_moment=2 * abs(c[(0, 2)]) ** 2)
            out["g2_b"] = 2 * abs(c[(0, 2)]) ** 2 / abs(c01) ** 4
        return out


WF_DRIVE_LIMIT = 1e-2


def _check_wf_drive(drive, gammas):
    if drive > WF_DRIVE_LIMIT * min(gammas):
        raise ValueError(
            "wavefunction approximation requires drive <= 1e-2 * min gamma")


def wavefunction_coefficients(params: SystemParams, mix: HomodyneMix = None
                              ) -> WavefunctionCoeffs:
    """Steady amplitudes of the two-excitation wavefunction approximation.

    Supports jc, pol, and rf with a broadband sensor realising the
    homodyne admixture (rf requires `mix`).  The vacuum amplitude is fixed
    to one; the leading-order solution is exact in that normalisation.
    """
    kind = system_kind(params)
    if kind == "rf":
        if mix is None:
            raise ValueError("rf wavefunction route needs a HomodyneMix")
        om, ga, de = params.drive_sigma, params.gamma_sigma, params.delta_sigma
        _check_wf_drive(om, [ga])
        b_pole = de - 0.5j * ga
        c01 = -om / b_pole
        u = mix.amplitude(om, ga)
        # sensor linewidth taken to infinity; amplitudes rescaled by
        # (Gamma / 2 T g)^n_sensor stay finite and give the mixed signal
        c10 = -1j * (u + c01)
        c11 = -1j * u * c01
        c20 = -(u * u + 2.0 * u * c01) / np.sqrt(2.0)
        coeffs = {(0, 0): 1.0 + 0j, (0, 1): c01, (1, 0): c10,
                  (1, 1): c11, (2, 0): c20}
        return WavefunctionCoeffs(system="rf", coeffs=coeffs, drive=om)

    if kind == "jc":
        _check_wf_drive(params.drive_a, [params.gamma_a, params.gamma_sigma])
        lam = params.drive_a * np.exp(1j * params.phi)
        lam_m = params.drive_sigma + 0j
        a_pole = params.delta_a - 0.5j * params.gamma_a
        b_pole = params.delta_sigma - 0.5j * params.gamma_sigma
        g = params.g
        one = np.linalg.solve(np.array([[a_pole, g], [g, b_pole]], complex),
                              -np.array([lam, lam_m]))
        c10, c01 = one
        two = np.linalg.solve(
            np.array([[2 * a_pole, np.sqrt(2) * g],
                      [np.sqrt(2) * g, a_pole + b_pole]], complex),
            -np.array([np.sqrt(2) * lam * c10, lam * c01 + lam_m * c10]))
        c20, c11 = two
        coeffs = {(0, 0): 1.0 + 0j, (1, 0): c10, (0, 1): c01,
                  (1, 1): c11, (2, 0): c20}
        return WavefunctionCoeffs(system="jc", coeffs=coeffs,
                                  drive=params.drive_a)

    if kind == "pol":
        _check_wf_drive(params.drive_a, [params.gamma_a, params.gamma_b])
        lam = params.drive_a * np.exp(1j * params.phi)
        lam_m = params.drive_b + 0j
        a_pole = params.delta_a - 0.5j * params.gamma_a
        b_pole = params.delta_b - 0.5j * params.gamma_b
        g, u = params.g, params.u
        one = np.linalg.solve(np.array([[a_pole, g], [g, b_pole]], complex),
                              -np.array([lam, lam_m]))
        c10, c01 = one
        r2 = np.sqrt(2)
        mat = np.array([[2 * a_pole, r2 * g, 0],
                        [r2 * g, a_pole + b_pole, r2 * g],
                        [0, r2 * g, 2 * b_pole + u]], complex)
        rhs = -np.array([r2 * lam * c10,
                         lam * c01 + lam_m * c10,
                         r2 * lam_m * c01])
        c20, c11, c02 = np.linalg.solve(mat, rhs)
        coeffs = {(0, 0): 1.0 + 0j, (1, 0): c10, (0, 1): c01,
                  (1, 1): c11, (2, 0): c20, (0, 2): c02}
        return WavefunctionCoeffs(system="pol", coeffs=coeffs,
                                  drive=params.drive_a)

    raise ValueError("wavefunction route covers rf (+sensor), jc and pol")


# ---------------------------------------------------------------------------
# drive-series tools


@dataclass
class SeriesFit:
    """Least-squares fit observable(drive) = sum_k c_k drive^{p_k}."""

    powers: tuple
    coefficients: np.ndarray
    residual: float
    condition: float
    samples: np.ndarray
    values: np.ndarray


def series_expand(params: SystemParams, observable: str, drive_powers,
                  window=(1e-3, 1e-2), n_samples=8, n_photons=None,
                  mode: str = None, cond_limit=1e12) -> SeriesFit:
    """Fit a numerically computed observable to the given drive powers.

    observable is one of 'n', 'g2', 'g3', 'g2_fluct', 'g3_fluct'
    (fluctuation variants subtract the mean field first).  The samples are
    log-spaced across `window`; the fit is weighted relatively so that
    widely varying magnitudes stay balanced.
    """
    if len(drive_powers) < 1:
        raise ValueError("need at least one drive power")
    if n_samples < max(4, len(drive_powers) + 1):
        raise ValueError("at least 4 drive samples are required")
    kind = system_kind(params)
    omegas = np.geomspace(window[0], window[1], n_samples)
    values = np.empty(n_samples)
    for i, om in enumerate(omegas):
        p = fs.with_drive(params, float(om))
        liou = fs.build_liouvillian(p, n_photons)
        rho = steady_state(liou)
        values[i] = _observable_from_rho(rho, p, liou.n_photons, observable,
                                         mode)
    design = np.column_stack([omegas ** float(pw) for pw in drive_powers])
    weights = 1.0 / np.maximum(np.abs(values), 1e-300)
    aw = design * weights[:, None]
    bw = values * weights
    coeff, _, _, svals = np.linalg.lstsq(aw, bw, rcond=None)
    cond = float(svals[0] / svals[-1]) if svals[-1] > 0 else np.inf
    if not np.isfinite(cond) or cond > cond_limit:
        raise FitWindowError(
            f"drive-power fit ill-conditioned (condition number {cond:.2e}); "
            "narrow the window or adjust the powers")
    resid = float(np.max(np.abs(design @ coeff - values) * weights))
    return SeriesFit(powers=tuple(drive_powers), coefficients=coeff,
                     residual=resid, condition=cond, samples=omegas,
                     values=values)


def _default_mode(params):
    kind = system_kind(params)
    return {"rf": "sigma", "ao": "b", "jc": "a", "pol": "a"}[kind]


def _observable_from_rho(rho, params, n_photons, observable, mode=None):
    from . import mixer  # local import to avoid a cycle

    kind = system_kind(params)
    mode = mode or _default_mode(params)
    ops = fs.mode_operators(params, n_photons)
    op = ops[mode]
    if observable == "n":
        return expectation(rho, adjoint(op) @ op).real
    if observable in ("g2", "g3"):
        return gN(rho, op, 2 if observable == "g2" else 3)
    if observable in ("g2_fluct", "g3_fluct"):
        n = 3 if observable == "g3_fluct" else 2
        table = moment_table(rho, params, n_photons, max_order=n)
        mean = table.value(_mode_key(kind, mode, 0, 1))
        fluct = mixer.mixed_table(-mean, table, max_order=n,
                                  photon_mode=_is_photon(kind, mode))
        num = fluct.value(_mode_key(kind, mode, n, n)).real
        den = fluct.value(_mode_key(kind, mode, 1, 1)).real
        if den ** n < POPULATION_FLOOR:
            raise UndefinedCorrelationError("fluctuation population vanishes",
                                            raw_moment=num)
        return num / den ** n
    raise ValueError(f"unknown observable {observable!r}")


def _is_photon(kind, mode):
    if kind == "rf":
        return False
    if kind == "ao":
        return True
    return mode == "a"


def _mode_key(kind, mode, p, q):
    if _is_photon(kind, mode):
        return (0, 0, p, q)
    return (p, q, 0, 0)


def extrapolate_vanishing_drive(fn, drives) -> float:
    """Richardson extrapolation in the square of the drive.

    fn(drive) is evaluated at each drive; a polynomial in drive^2 is fitted
    and its constant term returned.  Leading finite-drive corrections of
    steady-state observables scale as drive^2, so three samples remove
    them to O(drive^6).
    """
    drives = np.asarray(sorted(drives, reverse=True), dtype=float)
    vals = np.array([fn(float(om)) for om in drives])
    x = drives ** 2
    design = np.vander(x, len(drives), increasing=True)
    coeff = np.linalg.solve(design, vals)
    return float(coeff[0])
