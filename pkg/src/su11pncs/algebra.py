"""Truncated discrete-series representation of the su(1,1) algebra.

The three generators act on a Fock-type ladder ``|k,n>`` labelled by the
Bargmann index ``k > 0``:

    K+ |k,n> = sqrt((n+1)(2k+n)) |k,n+1>
    K- |k,n> = sqrt(n(2k+n-1))   |k,n-1>
    K0 |k,n> = (k+n)             |k,n>

Everything here works on a finite window ``n = 0 .. dim-1``. Truncation
necessarily breaks the algebra at the top edge, so identity checks are
meaningful only on an interior block; the top ``max(4, dim // 8)`` levels
are treated as a guard band. All values are immutable after construction
and every operation is a pure function.

A Bargmann index is represented as a plain positive float, validated by
:func:`validate_bargmann_index`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def validate_bargmann_index(k: float) -> float:
    """Check that ``k`` is a valid discrete-series label (finite, > 0)."""
    k = float(k)
    if not math.isfinite(k) or k <= 0.0:
        raise ValueError(f"Bargmann index must be a finite positive number, got {k}")
    return k


def guard_band(dim: int) -> int:
    """Width of the top guard band excluded from identity checks."""
    return max(4, dim // 8)


def interior_dim(dim: int) -> int:
    """Size of the interior block on which algebraic identities are asserted."""
    return dim - guard_band(dim)


def raising_factors(k: float, dim: int) -> np.ndarray:
    """sqrt((n+1)(2k+n)) for n = 0 .. dim-1 (weight moved from n to n+1)."""
    n = np.arange(dim, dtype=float)
    return np.sqrt((n + 1.0) * (2.0 * k + n))


def lowering_factors(k: float, dim: int) -> np.ndarray:
    """sqrt(n(2k+n-1)) for n = 0 .. dim-1 (weight moved from n to n-1)."""
    n = np.arange(dim, dtype=float)
    return np.sqrt(n * (2.0 * k + n - 1.0))


@dataclass(frozen=True)
class TruncatedRep:
    """Dense matrices of K+, K-, K0 on the window n = 0 .. dim-1.

    ``kplus`` has its only nonzero entries on the first subdiagonal,
    ``kminus`` is its exact conjugate transpose and ``kzero`` is the real
    diagonal k + n. Arrays are marked read-only.
    """

    k: float
    dim: int
    kplus: np.ndarray
    kminus: np.ndarray
    kzero: np.ndarray

    def __post_init__(self):
        for arr in (self.kplus, self.kminus, self.kzero):
            arr.flags.writeable = False

    @property
    def guard_band(self) -> int:
        return guard_band(self.dim)

    @property
    def interior_dim(self) -> int:
        return interior_dim(self.dim)


def build_discrete_series_rep(k: float, dim: int) -> TruncatedRep:
    """Construct the truncated representation from the closed formulas.

    Parameters
    ----------
    k : float
        Bargmann index, must be > 0.
    dim : int
        Window size, must be >= 2.
    """
    k = validate_bargmann_index(k)
    dim = int(dim)
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    kplus = np.zeros((dim, dim), dtype=complex)
    kplus[np.arange(1, dim), np.arange(dim - 1)] = raising_factors(k, dim)[:-1]
    kminus = kplus.conj().T.copy()
    kzero = np.diag((k + np.arange(dim)).astype(complex))
    return TruncatedRep(k=k, dim=dim, kplus=kplus, kminus=kminus, kzero=kzero)


def casimir(rep: TruncatedRep) -> np.ndarray:
    """K0^2 - (K+K- + K-K+)/2; equals k(k-1) * I on the interior block."""
    return rep.kzero @ rep.kzero - 0.5 * (
        rep.kplus @ rep.kminus + rep.kminus @ rep.kplus
    )


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over the truncated basis ``|k,n>``.

    ``leaked`` accumulates squared weight pushed past the top of the window
    by raising operations. ``tail_mass`` adds the weight currently sitting
    in the guard band, so truncation leakage is always reported.
    """

    k: float
    amplitudes: np.ndarray
    leaked: float = field(default=0.0)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("amplitudes must be a 1-d array of length >= 2")
        object.__setattr__(self, "amplitudes", amps)
        amps.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def tail_mass(self) -> float:
        g = guard_band(self.dim)
        return float(np.sum(np.abs(self.amplitudes[self.dim - g:]) ** 2)) + self.leaked


def basis_state(k: float, n: int, dim: int) -> StateVector:
    """The basis vector ``|k,n>`` on a window of size ``dim``."""
    k = validate_bargmann_index(k)
    if not 0 <= n < dim:
        raise ValueError(f"level n={n} outside window of size {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return StateVector(k=k, amplitudes=amps)


def apply_raising(state: StateVector) -> StateVector:
    """K+ applied by amplitude shift; the top component leaves the window
    and its squared weight is added to ``leaked``."""
    c = raising_factors(state.k, state.dim)
    out = np.zeros(state.dim, dtype=complex)
    out[1:] = c[:-1] * state.amplitudes[:-1]
    lost = abs(c[-1] * state.amplitudes[-1]) ** 2
    return StateVector(k=state.k, amplitudes=out, leaked=state.leaked + lost)


def apply_lowering(state: StateVector) -> StateVector:
    """K- applied by amplitude shift; annihilates the lowest level."""
    d = lowering_factors(state.k, state.dim)
    out = np.zeros(state.dim, dtype=complex)
    out[:-1] = d[1:] * state.amplitudes[1:]
    return StateVector(k=state.k, amplitudes=out, leaked=state.leaked)


def apply_kzero(state: StateVector) -> StateVector:
    """K0 applied by elementwise scaling with k + n."""
    scale = state.k + np.arange(state.dim)
    return StateVector(
        k=state.k, amplitudes=scale * state.amplitudes, leaked=state.leaked
    )


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.k != b.k:
        raise ValueError(f"Bargmann indices differ: {a.k} vs {b.k}")
    if a.dim != b.dim:
        raise ValueError(f"dimensions differ: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
