import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su11pncs.algebra import (
    StateVector,
    apply_kzero,
    apply_lowering,
    apply_raising,
    basis_state,
    build_discrete_series_rep,
    casimir,
    guard_band,
    inner_product,
    interior_dim,
)


def test_kplus_entry_half_integer():
    rep = build_discrete_series_rep(0.5, 4)
    # sqrt(1 * (2*0.5 + 0)) = 1
    assert rep.kplus[1, 0] == pytest.approx(1.0, abs=1e-15)


def test_kzero_diagonal_k1():
    rep = build_discrete_series_rep(1.0, 4)
    assert np.allclose(np.diag(rep.kzero), [1.0, 2.0, 3.0, 4.0], atol=0)


def test_kminus_is_adjoint_of_kplus_exactly():
    rep = build_discrete_series_rep(1.7, 48)
    assert np.array_equal(rep.kminus, rep.kplus.conj().T)


def test_commutators_on_interior_block():
    rep = build_discrete_series_rep(1.0, 64)
    i = interior_dim(64)
    comm = rep.kminus @ rep.kplus - rep.kplus @ rep.kminus - 2 * rep.kzero
    assert np.abs(comm)[:i, :i].max() < 1e-12
    comm0 = rep.kzero @ rep.kplus - rep.kplus @ rep.kzero - rep.kplus
    assert np.abs(comm0)[:i, :i].max() < 1e-12


def test_rejects_bad_arguments():
    with pytest.raises(ValueError):
        build_discrete_series_rep(0.0, 16)
    with pytest.raises(ValueError):
        build_discrete_series_rep(-1.0, 16)
    with pytest.raises(ValueError):
        build_discrete_series_rep(1.0, 1)


@pytest.mark.parametrize(
    "k,expected", [(0.75, -3.0 / 16.0), (1.0, 0.0), (0.3, -0.21)]
)
def test_casimir_interior_value(k, expected):
    rep = build_discrete_series_rep(k, 32)
    cas = casimir(rep)
    i = interior_dim(32)
    dev = np.abs(cas - expected * np.eye(32))[:i, :i].max()
    assert dev < 1e-12


def test_raising_lowest_state():
    out = apply_raising(basis_state(1.0, 0, 8))
    expected = np.zeros(8, dtype=complex)
    expected[1] = np.sqrt(2.0)
    assert np.allclose(out.amplitudes, expected, atol=1e-15)


def test_lowering_annihilates_ground():
    out = apply_lowering(basis_state(2.0, 0, 8))
    assert np.all(out.amplitudes == 0)


def test_raising_tracks_leaked_weight():
    top = basis_state(1.0, 7, 8)
    out = apply_raising(top)
    assert np.all(out.amplitudes == 0)
    # sqrt(8 * (2 + 7))^2 = 72
    assert out.leaked == pytest.approx(72.0)
    assert out.tail_mass == pytest.approx(72.0)


def test_tail_mass_counts_guard_band():
    dim = 32
    amps = np.zeros(dim, dtype=complex)
    amps[0] = 1.0
    amps[-1] = 0.5
    st_vec = StateVector(k=1.0, amplitudes=amps)
    assert guard_band(dim) == 4
    assert st_vec.tail_mass == pytest.approx(0.25)


def test_ladder_actions_match_matrix_route():
    rng = np.random.default_rng(11)
    k, dim = 1.0, 64
    rep = build_discrete_series_rep(k, dim)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    v /= np.linalg.norm(v)
    state = StateVector(k=k, amplitudes=v)
    assert np.abs(rep.kplus @ v - apply_raising(state).amplitudes).max() < 1e-14
    assert np.abs(rep.kminus @ v - apply_lowering(state).amplitudes).max() < 1e-14
    assert np.abs(rep.kzero @ v - apply_kzero(state).amplitudes).max() < 1e-14


def test_inner_product_basis_orthonormality():
    a = basis_state(1.5, 2, 16)
    b = basis_state(1.5, 1, 16)
    assert inner_product(a, a) == pytest.approx(1.0)
    assert inner_product(b, a) == pytest.approx(0.0)


def test_inner_product_rejects_mismatch():
    with pytest.raises(ValueError):
        inner_product(basis_state(1.0, 0, 8), basis_state(2.0, 0, 8))
    with pytest.raises(ValueError):
        inner_product(basis_state(1.0, 0, 8), basis_state(1.0, 0, 16))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**31))
def test_inner_product_conjugate_symmetry(seed):
    rng = np.random.default_rng(seed)
    a = StateVector(k=1.0, amplitudes=rng.normal(size=12) + 1j * rng.normal(size=12))
    b = StateVector(k=1.0, amplitudes=rng.normal(size=12) + 1j * rng.normal(size=12))
    assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)), abs=1e-15)
    assert inner_product(a, a).imag == pytest.approx(0.0, abs=1e-15)
    assert inner_product(a, a).real >= 0
