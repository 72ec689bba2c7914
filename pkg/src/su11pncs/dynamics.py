"""Coherence-preserving Hamiltonian, tilting diagonalization, and evolution.

``H = f K0 + gamma (K+ e^{-i phase} + K- e^{i phase})`` is Hermitian by
construction. Below threshold (``f > 2 gamma``) the tilt angle
``tau = atanh(2 gamma / f)`` with displacement phase equal to the coupling
phase turns ``D+ H D`` into ``omega_eff * K0`` with
``omega_eff = sqrt(f^2 - 4 gamma^2)``, so the PNCS built with the tilt
parameters are exact eigenvectors with energies ``(k + n) omega_eff``
(hbar = 1 throughout). At or above threshold the effective frequency is
imaginary and :class:`~su11pncs.errors.AboveThresholdError` is raised.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import TruncatedRep, validate_bargmann_index
from .displacement import (
    DisplacementParams,
    PncsResult,
    build_rep_cached,
    make_params,
    pncs_series,
)
from .algebra import StateVector
from .errors import AboveThresholdError


@dataclass(frozen=True)
class Su11Hamiltonian:
    """Coefficient bundle (f, gamma >= 0, phase) of the Hermitian form."""

    f: float
    gamma: float
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.f) and math.isfinite(self.gamma) and math.isfinite(self.phase)):
            raise ValueError("Hamiltonian coefficients must be finite")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")

    @property
    def coupling(self) -> complex:
        """Complex coupling g = gamma e^{-i phase} multiplying K+."""
        return self.gamma * np.exp(-1j * self.phase)

    @classmethod
    def from_complex_coupling(cls, f: float, g: complex) -> "Su11Hamiltonian":
        """Build from H = f K0 + g K+ + conj(g) K- (always Hermitian)."""
        g = complex(g)
        return cls(f=float(f), gamma=abs(g), phase=float(-np.angle(g)) if g != 0 else 0.0)


def hamiltonian_matrix(rep: TruncatedRep, h: Su11Hamiltonian) -> np.ndarray:
    """Dense f K0 + gamma (e^{-i phase} K+ + e^{i phase} K-)."""
    g = h.coupling
    return h.f * rep.kzero + g * rep.kplus + np.conj(g) * rep.kminus


@dataclass(frozen=True)
class TiltResult:
    """Displacement parameters that diagonalize H, plus the level spacing."""

    params: DisplacementParams
    omega_eff: float


def tilt_parameters(h: Su11Hamiltonian) -> TiltResult:
    """tau = atanh(2 gamma / f) and omega_eff = sqrt(f^2 - 4 gamma^2).

    Defined only below threshold, f > 2 gamma >= 0.
    """
    if h.f <= 2.0 * h.gamma:
        raise AboveThresholdError(
            f"above threshold: tilting undefined for f = {h.f} <= 2 gamma = "
            f"{2.0 * h.gamma} (effective frequency would be imaginary)"
        )
    tau = math.atanh(2.0 * h.gamma / h.f)
    omega = math.sqrt(h.f * h.f - 4.0 * h.gamma * h.gamma)
    return TiltResult(params=make_params(tau, h.phase), omega_eff=omega)


def eigen_energy(k: float, n: int, t: TiltResult) -> float:
    """E = (n + k) * omega_eff."""
    k = validate_bargmann_index(k)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return (n + k) * t.omega_eff


def eigen_residual(h: Su11Hamiltonian, k: float, n: int, dim: int) -> float:
    """|| H |z,k,n> - E |z,k,n> || for the PNCS built with the tilt parameters."""
    tilt = tilt_parameters(h)
    rep = build_rep_cached(k, dim)
    result = pncs_series(k, n, tilt.params, dim, tol=1e-13)
    if result.state.tail_mass > 1e-10:
        warnings.warn(
            f"eigen_residual: tail mass {result.state.tail_mass:.3e} suggests "
            f"dim={dim} is too small for n={n}, |zeta|={abs(tilt.params.zeta):.3f}",
            stacklevel=2,
        )
    hmat = hamiltonian_matrix(rep, h)
    e = eigen_energy(k, n, tilt)
    psi = result.state.amplitudes
    return float(np.linalg.norm(hmat @ psi - e * psi))


def _params_close(a: DisplacementParams, b: DisplacementParams, tol: float) -> bool:
    dphi = (a.phi - b.phi + math.pi) % (2.0 * math.pi) - math.pi
    return abs(a.tau - b.tau) <= tol and abs(dphi) <= tol


def time_evolve(state: PncsResult, t: float, tilt: TiltResult) -> StateVector:
    """Evolution of an eigen-PNCS: a pure phase e^{-i omega_eff (k+n) t}.

    Valid only for states built with the tilt's own displacement
    parameters; anything else is rejected because the closed-form phase
    does not apply there.
    """
    if not _params_close(state.params, tilt.params, 1e-12):
        raise ValueError(
            "state displacement parameters do not match the tilt parameters; "
            "the pure-phase evolution formula only holds at the tilt point"
        )
    e = eigen_energy(state.state.k, state.source_n, tilt)
    phase = np.exp(-1j * e * float(t))
    return StateVector(
        k=state.state.k,
        amplitudes=phase * state.state.amplitudes,
        leaked=state.state.leaked,
    )


def dense_evolution(
    rep: TruncatedRep, h: Su11Hamiltonian, amplitudes: np.ndarray, t: float
) -> np.ndarray:
    """Oracle propagation expm(-i H t) applied to a coefficient vector."""
    u = scipy.linalg.expm(-1j * hamiltonian_matrix(rep, h) * float(t))
    return u @ np.asarray(amplitudes, dtype=complex)
