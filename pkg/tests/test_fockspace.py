"""Operator algebra, Hamiltonians, Lindblad generators."""

import numpy as np
import pytest

from photonstats import fockspace as fs
from photonstats import steady as sd
from photonstats.checks import draw_system


def test_two_level_mode():
    s = fs.build_mode("two_level")
    assert s.shape == (2, 2)
    assert s[0, 1] == 1.0
    assert np.count_nonzero(s) == 1
    assert np.allclose(s @ s, 0.0)


def test_boson_ladder():
    a = fs.build_mode("boson", 3)
    assert a[1, 2] == pytest.approx(np.sqrt(2))
    n_op = fs.adjoint(a) @ a
    assert np.allclose(np.diag(n_op).real, [0, 1, 2])
    a8 = fs.build_mode("boson", 8)
    assert np.allclose(np.diag(fs.adjoint(a8) @ a8).real, np.arange(8))


def test_double_adjoint_exact():
    a = fs.build_mode("boson", 6)
    h = fs.build_hamiltonian(
        fs.JCParams(delta_a=0.4, delta_sigma=-0.2, g=1.0, drive_a=0.3,
                    chi=0.5, phi=1.2, gamma_a=1.0, gamma_sigma=0.5), 5)
    for op in (a, h):
        assert np.array_equal(fs.adjoint(fs.adjoint(op)), op)


def test_truncation_error():
    with pytest.raises(fs.TruncationError):
        fs.build_mode("boson", 1)


def test_param_validation():
    with pytest.raises(ValueError):
        fs.RFParams(delta_sigma=0.0, drive_sigma=0.1, gamma_sigma=0.0)
    with pytest.raises(ValueError):
        fs.AOParams(delta_b=0.0, u=-1.0, drive_b=0.1, gamma_b=1.0)
    p = fs.JCParams(delta_a=0, delta_sigma=0, g=1, drive_a=0.1, chi=0.5,
                    phi=7.0, gamma_a=1, gamma_sigma=1)
    assert 0.0 <= p.phi < 2 * np.pi
    assert p.drive_sigma == pytest.approx(0.05)


def test_from_frequencies():
    p = fs.JCParams.from_frequencies(omega_a=2.0, omega_sigma=0.5,
                                     omega_laser=1.5, g=1.0, drive_a=0.1,
                                     chi=0.0, phi=0.0, gamma_a=1.0,
                                     gamma_sigma=0.5)
    assert p.delta_a == pytest.approx(0.5)
    assert p.delta_sigma == pytest.approx(-1.0)


def test_hamiltonians_hermitian(rng):
    for kind in ("rf", "ao", "jc", "pol"):
        params = draw_system(kind, rng, drive=0.3)
        h = fs.build_hamiltonian(params, 5)
        assert np.allclose(h, fs.adjoint(h))


def test_rf_hamiltonian_zero_without_drive():
    p = fs.RFParams(delta_sigma=0.0, drive_sigma=0.0, gamma_sigma=1.0)
    assert np.allclose(fs.build_hamiltonian(p), 0.0)


def test_ao_u_zero_reduces_to_driven_oscillator():
    p0 = fs.AOParams(delta_b=0.7, u=0.0, drive_b=0.2, gamma_b=1.0)
    b = fs.build_mode("boson", 7)
    expected = 0.7 * fs.adjoint(b) @ b + 0.2 * (fs.adjoint(b) + b)
    assert np.allclose(fs.build_hamiltonian(p0, 6), expected)


def test_jc_decoupled_cavity_population():
    # g = 0, no dot drive: steady cavity population is the exact driven-cavity
    # value 4 drive^2 / (gamma^2 + 4 delta^2) at any drive
    p = fs.JCParams(delta_a=0.8, delta_sigma=0.0, g=0.0, drive_a=0.1,
                    chi=0.0, phi=0.4, gamma_a=1.0, gamma_sigma=1.0)
    liou = fs.build_liouvillian(p, 12)
    rho = sd.steady_state(liou)
    n_a = sd.expectation(rho, fs.adjoint(fs.mode_operators(p, 12)["a"])
                         @ fs.mode_operators(p, 12)["a"]).real
    assert n_a == pytest.approx(4 * 0.1 ** 2 / (1.0 + 4 * 0.8 ** 2), rel=1e-9)


def test_trace_preservation_random(rng):
    for kind in ("rf", "ao", "jc", "pol"):
        params = draw_system(kind, rng, drive=rng.uniform(0.01, 0.5))
        liou = fs.build_liouvillian(params, 5)
        assert liou.trace_residual() < 1e-12


def test_vacuum_steady_without_drive():
    for params in (
            fs.RFParams(delta_sigma=0.4, drive_sigma=0.0, gamma_sigma=1.0),
            fs.AOParams(delta_b=0.3, u=0.5, drive_b=0.0, gamma_b=1.0),
            fs.JCParams(delta_a=0.3, delta_sigma=-0.5, g=1.0, drive_a=0.0,
                        chi=0.0, phi=0.0, gamma_a=1.0, gamma_sigma=0.5)):
        liou = fs.build_liouvillian(params, 4)
        vac = np.zeros((liou.dim, liou.dim), dtype=complex)
        vac[0, 0] = 1.0
        resid = np.linalg.norm(liou.matrix @ vac.reshape(-1, order="F"))
        assert resid < 1e-13
        rho = sd.steady_state(liou)
        assert rho[0, 0].real == pytest.approx(1.0, abs=1e-12)


def test_steady_state_invariants(rng):
    for kind in ("rf", "ao", "jc", "pol"):
        params = draw_system(kind, rng, drive=rng.uniform(1e-3, 0.2))
        liou = fs.build_liouvillian(params, 8)
        rho = sd.steady_state(liou, warn_truncation=False)
        assert np.linalg.norm(rho - rho.conj().T) < 1e-10
        assert abs(np.trace(rho).real - 1.0) < 1e-10
        assert np.linalg.eigvalsh(rho).min() > -1e-8
        resid = np.linalg.norm(liou.matrix @ rho.reshape(-1, order="F"))
        assert resid < 1e-11


def test_truncation_warning():
    p = fs.AOParams(delta_b=0.0, u=0.0, drive_b=2.0, gamma_b=1.0)
    liou = fs.build_liouvillian(p, 4)  # far too small for n ~ 16
    with pytest.warns(fs.TruncationWarning):
        sd.steady_state(liou)


def test_gn_truncation_doubling():
    # doubling the Fock space leaves reported correlations unchanged
    p = fs.JCParams(delta_a=0.5, delta_sigma=-0.2, g=1.0, drive_a=0.05,
                    chi=0.3, phi=0.7, gamma_a=0.8, gamma_sigma=0.4)
    gs = []
    for n_ph in (6, 12):
        rho = sd.steady_state(fs.build_liouvillian(p, n_ph),
                              warn_truncation=False)
        ops = fs.mode_operators(p, n_ph)
        gs.append([sd.gN(rho, ops["a"], n) for n in (2, 3)])
    assert np.allclose(gs[0], gs[1], rtol=1e-7)


def _random_low_state(dim, rng, keep_mask):
    """Random density matrix supported away from the truncation edge."""
    vecs = rng.normal(size=(3, dim)) + 1j * rng.normal(size=(3, dim))
    vecs[:, ~keep_mask] = 0.0
    rho = sum(np.outer(v, v.conj()) for v in vecs)
    return rho / np.trace(rho).real


def test_correlator_eom_terms_match_adjoint_action(rng):
    """The symbolic equation-of-motion coefficients reproduce the exact
    adjoint generator on states away from the truncation edge."""
    n_ph = 9
    for kind in ("jc", "pol", "ao", "rf"):
        params = draw_system(kind, rng, drive=0.17)
        liou_dim = {"rf": 2, "ao": n_ph + 1, "jc": 2 * (n_ph + 1),
                    "pol": (n_ph + 1) ** 2}[kind]
        h = fs.build_hamiltonian(params, n_ph)
        channels = fs.decay_channels(params, n_ph)
        ops = fs.mode_operators(params, n_ph)
        matter = ops.get("sigma", ops.get("b"))
        photon = ops.get("a") if kind in ("jc", "pol") else (
            ops.get("b") if kind == "ao" else None)
        if kind == "ao":
            matter = None
        # keep every mode occupation well below its truncation so operator
        # products act exactly
        idx = np.arange(liou_dim)
        if kind == "pol":
            keep = ((idx // (n_ph + 1)) <= 3) & ((idx % (n_ph + 1)) <= 3)
        elif kind == "jc":
            keep = (idx // 2) <= 4
        else:
            keep = idx <= min(4, liou_dim - 1)
        rho = _random_low_state(liou_dim, rng, keep)

        def op_for(idx):
            m, n, mu, nu = idx
            out = np.eye(liou_dim, dtype=complex)
            if matter is not None:
                out = (np.linalg.matrix_power(fs.adjoint(matter), m)
                       @ np.linalg.matrix_power(matter, n))
            if photon is not None:
                ph = (np.linalg.matrix_power(fs.adjoint(photon), mu)
                      @ np.linalg.matrix_power(photon, nu))
                out = out @ ph
            return out

        lrho = (-1j * (h @ rho - rho @ h)
                + sum(0.5 * r * (2 * c @ rho @ fs.adjoint(c)
                                 - fs.adjoint(c) @ c @ rho
                                 - rho @ fs.adjoint(c) @ c)
                      for r, c in channels))
        drive = fs.primary_drive(params)
        for _ in range(6):
            if kind == "rf":
                idx = (rng.integers(0, 2), rng.integers(0, 2), 0, 0)
            elif kind == "ao":
                idx = (0, 0, rng.integers(0, 3), rng.integers(0, 3))
            else:
                mcap = 2 if kind == "jc" else 3
                idx = (rng.integers(0, mcap), rng.integers(0, mcap),
                       rng.integers(0, 3), rng.integers(0, 3))
            lhs = np.trace(op_for(idx) @ lrho)
            rhs = 0.0
            for coeff, target, om_pow in sd.correlator_eom_terms(
                    params, idx, include_higher=True):
                rhs += coeff * drive ** om_pow * np.trace(op_for(target) @ rho)
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(lhs)), (kind, idx)


def test_degenerate_superoperator_reports_null_dimension():
    liou = fs.Superoperator(dim=2, matrix=np.zeros((4, 4), dtype=complex))
    with pytest.raises(sd.DegenerateSteadyStateError) as err:
        sd.steady_state(liou)
    assert err.value.null_dimension and err.value.null_dimension > 1
