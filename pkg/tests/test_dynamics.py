import math

import numpy as np
import pytest

from su11pncs.algebra import build_discrete_series_rep
from su11pncs.displacement import make_params, pncs_series
from su11pncs.dynamics import (
    Su11Hamiltonian,
    dense_evolution,
    eigen_energy,
    eigen_residual,
    hamiltonian_matrix,
    tilt_parameters,
    time_evolve,
)
from su11pncs.errors import AboveThresholdError

SQRT3 = 1.7320508075688772


def test_hamiltonian_is_hermitian_by_construction():
    rep = build_discrete_series_rep(1.0, 32)
    h = hamiltonian_matrix(rep, Su11Hamiltonian(f=2.0, gamma=0.7, phase=0.9))
    assert np.abs(h - h.conj().T).max() == 0.0


def test_hamiltonian_decoupled_case_diagonal():
    rep = build_discrete_series_rep(1.0, 16)
    h = hamiltonian_matrix(rep, Su11Hamiltonian(f=3.0, gamma=0.0, phase=0.0))
    assert np.allclose(h, np.diag(3.0 * (1.0 + np.arange(16))), atol=0)


def test_lowest_eigenvalue_matches_sqrt3():
    rep = build_discrete_series_rep(1.0, 96)
    h = hamiltonian_matrix(rep, Su11Hamiltonian(f=2.0, gamma=0.5, phase=0.0))
    eigs = np.linalg.eigvalsh(h)
    assert np.sort(eigs)[0] == pytest.approx(SQRT3, abs=1e-10)


def test_tilt_parameters_values():
    t = tilt_parameters(Su11Hamiltonian(f=2.0, gamma=0.5, phase=0.3))
    assert t.params.tau == pytest.approx(0.5493061443340548, abs=1e-15)
    assert t.params.phi == pytest.approx(0.3)
    assert t.omega_eff == pytest.approx(SQRT3, abs=1e-15)


def test_tilt_gamma_zero():
    t = tilt_parameters(Su11Hamiltonian(f=2.5, gamma=0.0, phase=0.0))
    assert t.params.tau == 0.0
    assert t.omega_eff == pytest.approx(2.5)


def test_tilt_above_threshold_raises():
    with pytest.raises(AboveThresholdError, match="above threshold"):
        tilt_parameters(Su11Hamiltonian(f=2.0, gamma=1.1, phase=0.0))
    with pytest.raises(AboveThresholdError):
        tilt_parameters(Su11Hamiltonian(f=2.0, gamma=1.0, phase=0.0))


def test_tilted_hamiltonian_is_diagonal():
    from su11pncs.displacement import displacement_exponential

    h = Su11Hamiltonian(f=2.0, gamma=0.5, phase=0.4)
    tilt = tilt_parameters(h)
    rep = build_discrete_series_rep(1.0, 128)
    hmat = hamiltonian_matrix(rep, h)
    d = displacement_exponential(rep, tilt.params)
    tilted = d.conj().T @ hmat @ d
    block = tilted[:24, :24].copy()
    np.fill_diagonal(block, 0.0)
    assert np.abs(block).max() < 1e-9
    diag = np.diag(tilted)[:24]
    assert np.abs(diag - tilt.omega_eff * (1.0 + np.arange(24))).max() < 1e-9


def test_eigen_energy_values():
    t = tilt_parameters(Su11Hamiltonian(f=2.0, gamma=0.5))
    assert eigen_energy(1.0, 0, t) == pytest.approx(SQRT3, abs=1e-14)
    t2 = tilt_parameters(Su11Hamiltonian(f=3.0, gamma=1.0))
    assert eigen_energy(0.5, 3, t2) == pytest.approx(7.826237921249264, abs=1e-12)
    t3 = tilt_parameters(Su11Hamiltonian(f=2.0, gamma=0.0))
    assert eigen_energy(1.0, 2, t3) == pytest.approx(6.0)


def test_eigen_residuals():
    assert eigen_residual(Su11Hamiltonian(f=2.0, gamma=0.0), 1.0, 2, 64) < 1e-13
    assert eigen_residual(Su11Hamiltonian(f=2.0, gamma=0.5), 1.0, 2, 128) < 1e-8
    assert eigen_residual(Su11Hamiltonian(f=2.0, gamma=0.8), 1.0, 0, 192) < 1e-7


def test_time_evolve_is_pure_phase():
    h = Su11Hamiltonian(f=2.0, gamma=0.5)
    tilt = tilt_parameters(h)
    res = pncs_series(1.0, 0, tilt.params, 128, tol=1e-13)
    out0 = time_evolve(res, 0.0, tilt)
    assert np.array_equal(out0.amplitudes, res.state.amplitudes)
    out = time_evolve(res, 1.0, tilt)
    overlap = np.vdot(res.state.amplitudes, out.amplitudes)
    assert abs(abs(overlap) - 1.0) < 1e-12
    assert np.angle(overlap) == pytest.approx(-SQRT3, abs=1e-12)


def test_time_evolve_matches_dense_oracle():
    h = Su11Hamiltonian(f=2.0, gamma=0.5)
    tilt = tilt_parameters(h)
    rep = build_discrete_series_rep(1.0, 128)
    res = pncs_series(1.0, 0, tilt.params, 128, tol=1e-13)
    for t in (0.1, 1.0, 5.0):
        dense = dense_evolution(rep, h, res.state.amplitudes, t)
        analytic = time_evolve(res, t, tilt).amplitudes
        assert np.linalg.norm(dense - analytic) < 1e-8


def test_time_evolve_rejects_mismatched_parameters():
    h = Su11Hamiltonian(f=2.0, gamma=0.5)
    tilt = tilt_parameters(h)
    res = pncs_series(1.0, 0, make_params(0.3, 0.0), 64)
    with pytest.raises(ValueError, match="tilt"):
        time_evolve(res, 1.0, tilt)


def test_from_complex_coupling_round_trip():
    g = 0.4 * np.exp(-1j * 0.9)
    h = Su11Hamiltonian.from_complex_coupling(2.0, g)
    assert h.gamma == pytest.approx(0.4)
    assert h.phase == pytest.approx(0.9)
    assert h.coupling == pytest.approx(g)


def test_hamiltonian_rejects_negative_gamma():
    with pytest.raises(ValueError):
        Su11Hamiltonian(f=1.0, gamma=-0.2)
