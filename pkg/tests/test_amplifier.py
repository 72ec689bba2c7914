import math

import numpy as np
import pytest
import scipy.special

from su11pncs.amplifier import (
    AmplifierSpec,
    PolarGrid,
    TwoModeQuantumNumbers,
    amplifier_energy,
    closed_form_audit,
    fixed_m_norm,
    fixed_m_overlap,
    gauss_radial,
    ho_eigenfunction,
    laguerre,
    pncs_wavefunction_closed,
    pncs_wavefunction_closed_corrected,
    pncs_wavefunction_series,
    radial_cutoff,
    realization_checks,
    sigma_parameter,
)
from su11pncs.displacement import make_params
from su11pncs.errors import AboveThresholdError, SingularClosedFormError

INV_SQRT_PI = 0.5641895835477563


# ----------------------------------------------------------------- laguerre

def test_laguerre_degree_zero_is_one():
    assert laguerre(0, 2.5, 7.0) == 1.0
    assert np.all(laguerre(0, 0.0, np.linspace(0, 5, 7)) == 1.0)


def test_laguerre_degree_one():
    # L_1^m(x) = m + 1 - x
    assert laguerre(1, 2.0, 1.5) == pytest.approx(1.5, abs=1e-15)


def test_laguerre_cubic_against_expansion():
    # explicit expansion: sum_j (-1)^j C(n+a, n-j) x^j / j!
    def explicit(n, a, x):
        return sum(
            (-1) ** j * math.comb(n + a, n - j) * x**j / math.factorial(j)
            for j in range(n + 1)
        )

    x = 2.0
    assert laguerre(3, 1, x) == pytest.approx(explicit(3, 1, x), abs=1e-13)
    for n in range(8):
        for a in (0, 1, 3):
            assert laguerre(n, a, 1.7) == pytest.approx(explicit(n, a, 1.7), rel=1e-12)


def test_laguerre_matches_scipy_reference():
    x = np.linspace(0.0, 30.0, 41)
    for n in (0, 1, 5, 20):
        for a in (0.0, 1.0, 2.5):
            mine = laguerre(n, a, x)
            ref = scipy.special.eval_genlaguerre(n, a, x)
            assert np.abs(mine - ref).max() < 1e-10 * max(1.0, np.abs(ref).max())


# ----------------------------------------------------- quantum number bookkeeping

def test_quantum_numbers_derived_labels():
    q = TwoModeQuantumNumbers(N=4, m=2)
    assert q.n_r == 1
    assert q.l == 2.5
    assert q.k == 1.5
    # K0 eigenvalue (N+1)/2 equals k + n_r
    assert 0.5 * (q.N + 1) == pytest.approx(q.k + q.n_r)


def test_quantum_numbers_validation():
    with pytest.raises(ValueError):
        TwoModeQuantumNumbers(N=3, m=2)  # N - m odd
    with pytest.raises(ValueError):
        TwoModeQuantumNumbers(N=2, m=3)  # m > N
    with pytest.raises(ValueError):
        TwoModeQuantumNumbers(N=-1, m=0)


def test_from_radial_round_trip():
    q = TwoModeQuantumNumbers.from_radial(3, 2)
    assert (q.N, q.m, q.n_r) == (8, 2, 3)


# --------------------------------------------------------------- eigenfunctions

def test_ho_ground_value_at_origin():
    q = TwoModeQuantumNumbers(N=0, m=0)
    val = ho_eigenfunction(q, 0.0, 0.0)
    assert complex(val) == pytest.approx(INV_SQRT_PI, abs=1e-15)


def test_ho_quadrature_norm_is_one():
    r, w = gauss_radial(128, radial_cutoff(2, 4))
    for n_r, m in ((0, 0), (1, 0), (2, 1), (3, 2)):
        q = TwoModeQuantumNumbers.from_radial(n_r, m)
        vals = ho_eigenfunction(q, r, 0.0)
        assert fixed_m_norm(vals, w) == pytest.approx(1.0, abs=1e-8)


def test_ho_same_m_orthogonality():
    r, w = gauss_radial(128, radial_cutoff(1, 4))
    a = ho_eigenfunction(TwoModeQuantumNumbers.from_radial(0, 1), r, 0.0)
    b = ho_eigenfunction(TwoModeQuantumNumbers.from_radial(1, 1), r, 0.0)
    assert abs(fixed_m_overlap(a, b, w)) < 1e-8


# ------------------------------------------------------------------- amplifier

def test_amplifier_energy_values():
    assert amplifier_energy(
        TwoModeQuantumNumbers.from_radial(0, 0), AmplifierSpec(omega=1.0, chi=0.0)
    ) == pytest.approx(0.0, abs=1e-15)
    assert amplifier_energy(
        TwoModeQuantumNumbers.from_radial(1, 2), AmplifierSpec(omega=1.0, chi=0.6)
    ) == pytest.approx(3.0, abs=1e-12)


def test_amplifier_energy_matches_group_route():
    from su11pncs.dynamics import eigen_energy

    spec = AmplifierSpec(omega=1.3, chi=0.4, Phi=0.2)
    q = TwoModeQuantumNumbers.from_radial(2, 1)
    tilt = spec.tilt()
    assert amplifier_energy(q, spec) == pytest.approx(
        eigen_energy(q.k, q.n_r, tilt) - spec.omega, abs=1e-12
    )


def test_amplifier_above_threshold():
    q = TwoModeQuantumNumbers.from_radial(0, 0)
    with pytest.raises(AboveThresholdError):
        amplifier_energy(q, AmplifierSpec(omega=1.0, chi=1.0))
    with pytest.raises(AboveThresholdError):
        AmplifierSpec(omega=1.0, chi=1.2).tilt()


def test_amplifier_spec_validation():
    with pytest.raises(ValueError):
        AmplifierSpec(omega=0.0, chi=0.0)
    with pytest.raises(ValueError):
        AmplifierSpec(omega=1.0, chi=-0.1)


# ------------------------------------------------------------- wavefunctions

def test_series_zero_displacement_equals_eigenfunction():
    q = TwoModeQuantumNumbers.from_radial(2, 1)
    p = make_params(0.0, 0.0)
    r = np.linspace(0.0, 4.0, 17)
    assert np.array_equal(
        pncs_wavefunction_series(q, p, r, 0.7), ho_eigenfunction(q, r, 0.7)
    )


def test_series_quadrature_norm():
    q = TwoModeQuantumNumbers.from_radial(2, 1)
    p = make_params(0.9, 1.1)
    r, w = gauss_radial(160, radial_cutoff(1, 4, p.zeta))
    vals = pncs_wavefunction_series(q, p, r, 0.0, tol=1e-13)
    assert fixed_m_norm(vals, w) == pytest.approx(1.0, abs=1e-7)


def test_corrected_closed_form_matches_series():
    r = np.linspace(0.02, 5.0, 37)
    for n_r, m, tau, phi in ((0, 0, 0.3, 0.0), (2, 1, 0.8, 0.4), (3, 2, 0.9, 1.0)):
        q = TwoModeQuantumNumbers.from_radial(n_r, m)
        p = make_params(tau, phi)
        sv = pncs_wavefunction_series(q, p, r, 0.3, tol=1e-13)
        cv = pncs_wavefunction_closed_corrected(q, p, r, 0.3)
        assert np.abs(sv - cv).max() < 1e-12


def test_direct_closed_form_deviates_and_audit_documents_it():
    q = TwoModeQuantumNumbers.from_radial(2, 1)
    p = make_params(0.8, 0.4)
    r = np.linspace(0.05, 5.0, 25)
    audit = closed_form_audit(q, p, r, (0.0, 1.3), tol=1e-8)
    assert not audit.direct_ok
    assert audit.corrected_ok
    assert audit.max_diff_corrected < 1e-12
    assert "correction" in audit.conclusion or "corrected" in audit.conclusion
    assert "sqrt(2)" in audit.correction


def test_closed_form_sigma_singularity():
    # zeta = -tanh(tau/2) = -0.5 puts sigma exactly at 1
    tau = 2.0 * math.atanh(0.5)
    p = make_params(tau, 0.0)
    assert sigma_parameter(p.zeta) == pytest.approx(1.0, abs=1e-14)
    q = TwoModeQuantumNumbers.from_radial(1, 1)
    with pytest.raises(SingularClosedFormError):
        pncs_wavefunction_closed(q, p, np.linspace(0.1, 3.0, 5), 0.0)
    audit = closed_form_audit(q, p, np.linspace(0.1, 3.0, 5), (0.0,), tol=1e-8)
    assert audit.direct_singular
    assert audit.corrected_ok


def test_closed_form_zero_displacement_delegates():
    q = TwoModeQuantumNumbers.from_radial(1, 2)
    p = make_params(0.0, 0.0)
    r = np.linspace(0.0, 3.0, 9)
    assert np.array_equal(
        pncs_wavefunction_closed(q, p, r, 0.2), ho_eigenfunction(q, r, 0.2)
    )


def test_ground_state_closed_form_reduction():
    # n = 0 collapses the corrected closed form to a plain squeezed profile
    q = TwoModeQuantumNumbers.from_radial(0, 1)
    p = make_params(0.6, 0.9)
    r = np.linspace(0.0, 5.0, 21)
    sv = pncs_wavefunction_series(q, p, r, 1.0, tol=1e-13)
    cv = pncs_wavefunction_closed_corrected(q, p, r, 1.0)
    assert np.abs(sv - cv).max() < 1e-10


# ------------------------------------------------------------- polar realization

def test_realization_eigenvalues_and_ladders():
    q = TwoModeQuantumNumbers(N=4, m=2)
    rep = realization_checks(q, PolarGrid(r_max=6.0, radial_step=0.01, angular_points=192))
    assert rep.k0_eigenvalue == pytest.approx(2.5)
    assert rep.casimir_eigenvalue == pytest.approx(0.75)
    assert rep.k0_residual < 1e-3
    assert rep.casimir_residual < 1e-3
    assert rep.a_residual < 1e-3
    assert rep.b_residual < 1e-3
    assert rep.a_dagger_residual < 1e-3
    assert rep.b_dagger_residual < 1e-3


def test_realization_ground_state_values():
    q = TwoModeQuantumNumbers(N=0, m=0)
    rep = realization_checks(q, PolarGrid(r_max=5.0, radial_step=0.02, angular_points=64))
    assert rep.k0_eigenvalue == pytest.approx(0.5)
    assert rep.casimir_eigenvalue == pytest.approx(-0.25)
    assert rep.k0_residual < 1e-3
    assert rep.casimir_residual < 1e-10  # angular derivative of a constant phase


def test_realization_second_order_convergence():
    q = TwoModeQuantumNumbers(N=4, m=2)
    coarse = PolarGrid(r_max=6.0, radial_step=0.025, angular_points=96)
    rc = realization_checks(q, coarse)
    rf = realization_checks(q, coarse.refined())
    assert rc.k0_residual / rf.k0_residual == pytest.approx(4.0, abs=1.0)
    assert rc.casimir_residual / rf.casimir_residual == pytest.approx(4.0, abs=1.0)
