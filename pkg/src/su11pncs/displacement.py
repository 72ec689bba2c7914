"""Displacement operator, Perelomov number coherent states, and tilted generators.

The displacement operator ``D(xi) = exp(xi K+ - xi* K-)`` is built by two
independent routes:

* :func:`displacement_normal_form` evaluates the factorization
  ``exp(zeta K+) exp(eta K0) exp(-zeta* K-)``. On the truncated window the
  outer factors are nilpotent, so every matrix entry is an exact finite
  product, evaluated here in log space.
* :func:`displacement_exponential` exponentiates the anti-Hermitian
  generator directly (scaling-and-squaring). It serves as the independent
  oracle for the normal form.

Applying ``D(xi)`` to an excited ladder state ``|k,n>`` gives a Perelomov
number coherent state (PNCS). :func:`pncs_series` evaluates its expansion
coefficients by the double sum over lowering steps ``j <= n`` and raising
steps ``s``, with overflow-safe log-gamma arithmetic and an adaptive
geometric stopping rule in ``s``.

The similarity-transformed generators ``L = D K D+`` close the same
algebra and act on the PNCS family exactly as ``K`` acts on ``|k,n>``;
:func:`l_operator_closed` implements their closed linear-combination form
and :func:`l_operator_conjugated` the explicit conjugation oracle.

Numerical caveat: the normal-form factors have entries of vastly different
magnitude, so the factorized product loses accuracy in high columns even
though its low columns are exact. Route comparisons are therefore made on
a leading block sized by :func:`route_comparison_block`, which also keeps
the compared columns' excitation (which grows like ``cosh(tau)``) safely
inside the window.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from math import lgamma

import numpy as np
import scipy.linalg

from .algebra import (
    StateVector,
    TruncatedRep,
    basis_state,
    interior_dim,
    lowering_factors,
    raising_factors,
    validate_bargmann_index,
)
from .errors import SeriesDivergenceError


@dataclass(frozen=True)
class DisplacementParams:
    """Coherent-state parameter bundle derived from (tau, phi).

    Fields satisfy ``zeta = -tanh(tau/2) e^{-i phi}``,
    ``xi = -(tau/2) e^{-i phi}``, ``eta = ln(1 - |zeta|^2) = -2 ln cosh|xi|``,
    ``alpha = sinh(2|xi|)`` and ``beta = (cosh(2|xi|) - 1)/2``.
    """

    tau: float
    phi: float
    xi: complex
    zeta: complex
    eta: float
    alpha: float
    beta: float


def make_params(tau: float, phi: float) -> DisplacementParams:
    """Populate all displacement parameters from the pair (tau, phi).

    ``phi`` is reduced mod 2*pi; ``tau`` may be any finite real.
    """
    tau = float(tau)
    phi = float(phi)
    if not (math.isfinite(tau) and math.isfinite(phi)):
        raise ValueError("tau and phi must be finite")
    phi = phi % (2.0 * math.pi)
    phase = cmath.exp(-1j * phi)
    xi = -0.5 * tau * phase
    zeta = -math.tanh(0.5 * tau) * phase
    eta = math.log1p(-abs(zeta) ** 2)
    alpha = math.sinh(2.0 * abs(xi))
    beta = 0.5 * (math.cosh(2.0 * abs(xi)) - 1.0)
    return DisplacementParams(
        tau=tau, phi=phi, xi=xi, zeta=zeta, eta=eta, alpha=alpha, beta=beta
    )


def _exp_raising(k: float, dim: int, coeff: complex) -> np.ndarray:
    """exp(coeff * K+) on the window; entry (l, q) is the exact single term
    coeff^(l-q)/(l-q)! * sqrt(G(l+1)G(2k+l)/(G(q+1)G(2k+q)))."""
    if coeff == 0:
        return np.eye(dim, dtype=complex)
    n = np.arange(dim)
    lg = np.array([lgamma(i + 1) + lgamma(2.0 * k + i) for i in range(dim)])
    steps = n[:, None] - n[None, :]
    mask = steps >= 0
    j = np.where(mask, steps, 0)
    lgfact = np.cumsum(np.concatenate(([0.0], np.log(np.arange(1, dim + 1)))))[:dim]
    logmag = j * math.log(abs(coeff)) - lgfact[j] + 0.5 * (lg[:, None] - lg[None, :])
    out = np.where(mask, np.exp(logmag) * np.exp(1j * j * cmath.phase(coeff)), 0.0)
    return np.asarray(out, dtype=complex)


def displacement_normal_form(rep: TruncatedRep, p: DisplacementParams) -> np.ndarray:
    """Factorized displacement exp(zeta K+) exp(eta K0) exp(-zeta* K-)."""
    up = _exp_raising(rep.k, rep.dim, p.zeta)
    down = _exp_raising(rep.k, rep.dim, -np.conj(p.zeta)).T
    mid = np.exp(p.eta * (rep.k + np.arange(rep.dim)))
    return up * mid[None, :] @ down


def displacement_exponential(rep: TruncatedRep, p: DisplacementParams) -> np.ndarray:
    """Direct matrix exponential of xi K+ - xi* K- (oracle route)."""
    gen = p.xi * rep.kplus - np.conj(p.xi) * rep.kminus
    return scipy.linalg.expm(gen)


def route_comparison_block(dim: int, k: float, tau: float) -> int:
    """Leading block size on which the two displacement routes agree.

    Two constraints: a compared column's mean excitation cosh(tau)*(k+n)
    must sit well inside the window, and the factorized route's rounding
    amplification caps usable columns at about 18 independently of dim.
    """
    fit = int(math.floor(0.8 * dim / math.cosh(tau) - k))
    b = min(18, fit)
    return max(4, min(b, interior_dim(dim)))


@dataclass(frozen=True)
class PncsResult:
    """A Perelomov number coherent state plus series diagnostics."""

    state: StateVector
    params: DisplacementParams
    source_n: int
    series_terms_used: int
    truncation_residual: float


def pncs_series(
    k: float,
    n: int,
    p: DisplacementParams,
    dim: int,
    tol: float = 1e-12,
) -> PncsResult:
    """Expansion coefficients of ``D(xi)|k,n>`` over the truncated basis.

    The double sum runs over ``j = 0..n`` lowering steps and an adaptive
    number of raising steps ``s``; the ``s`` sum stops once the largest
    current term falls below ``tol * (1 - |zeta|)`` (geometric tail bound
    with ratio ``|zeta|``). All gamma ratios go through log-gamma, so the
    evaluation is overflow-safe for any window size in scope.

    Weight accumulated on levels at or above ``dim`` is reported in
    ``truncation_residual`` (plus a bound on the stopped tail); a warning
    is emitted when it exceeds ``tol``.
    """
    k = validate_bargmann_index(k)
    n = int(n)
    dim = int(dim)
    if not 0 <= n < dim:
        raise ValueError(f"source level n={n} outside window of size {dim}")
    az = abs(p.zeta)
    if az >= 1.0:
        raise SeriesDivergenceError(
            f"|zeta| = {az} >= 1: the coherent-state series does not converge"
        )
    if az == 0.0:
        return PncsResult(
            state=basis_state(k, n, dim),
            params=p,
            source_n=n,
            series_terms_used=1,
            truncation_residual=0.0,
        )

    ph_z = cmath.phase(p.zeta)
    ph_mz = cmath.phase(-np.conj(p.zeta))
    log_az = math.log(az)
    j = np.arange(n + 1)
    # j-only part of the coefficient (lowering steps and the K0 factor)
    log_cj = (
        j * log_az
        - np.array([lgamma(jj + 1) for jj in j])
        + p.eta * (k + n - j)
        + 0.5 * (lgamma(2 * k + n) + lgamma(n + 1))
        - np.array([lgamma(2 * k + n - jj) + lgamma(n - jj + 1) for jj in j])
    )
    phase_j = ph_mz * j

    amps = np.zeros(dim, dtype=complex)
    out_mass = 0.0
    terms = 0
    threshold = tol * (1.0 - az)
    s = 0
    quiet = 0
    last_max = 0.0
    s_cap = 2 * dim + 400
    while s < s_cap:
        log_s = s * log_az - lgamma(s + 1)
        tails = np.array(
            [0.5 * (lgamma(2 * k + n - jj + s) + lgamma(n - jj + s + 1)) for jj in j]
        )
        mags = np.exp(log_cj + log_s + tails)
        coeffs = mags * np.exp(1j * (phase_j + ph_z * s))
        targets = n - j + s
        inside = targets < dim
        np.add.at(amps, targets[inside], coeffs[inside])
        out_mass += float(np.sum(mags[~inside] ** 2))
        terms += n + 1
        last_max = float(mags.max())
        if s > n + 4 and last_max < threshold:
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
        s += 1
    else:
        warnings.warn(
            f"pncs_series hit the s-term cap ({s_cap}) before converging "
            f"(|zeta| = {az:.4f})",
            stacklevel=2,
        )

    tail_bound = ((n + 1) * last_max * az / (1.0 - az)) ** 2
    residual = out_mass + tail_bound
    if residual > tol:
        warnings.warn(
            f"window of size {dim} too small for PNCS(k={k}, n={n}, "
            f"|zeta|={az:.4f}): truncation residual {residual:.3e} > tol {tol:.1e}",
            stacklevel=2,
        )
    state = StateVector(k=k, amplitudes=amps, leaked=out_mass)
    return PncsResult(
        state=state,
        params=p,
        source_n=n,
        series_terms_used=terms,
        truncation_residual=residual,
    )


_L_KINDS = ("plus", "minus", "zero")


def l_operator_closed(
    rep: TruncatedRep, p: DisplacementParams, which: str
) -> np.ndarray:
    """Tilted generator L = D K D+ as a closed linear combination of K's.

    For ``xi = 0`` the phases xi/|xi| are undefined and D is the identity,
    so the untransformed generator is returned.
    """
    if which not in _L_KINDS:
        raise ValueError(f"which must be one of {_L_KINDS}, got {which!r}")
    base = {"plus": rep.kplus, "minus": rep.kminus, "zero": rep.kzero}
    if p.xi == 0:
        return np.array(base[which])
    u = p.xi / abs(p.xi)
    uc = np.conj(u)
    if which == "plus":
        return -uc * p.alpha * rep.kzero + p.beta * (rep.kplus + (uc / u) * rep.kminus) + rep.kplus
    if which == "minus":
        return -u * p.alpha * rep.kzero + p.beta * (rep.kminus + (u / uc) * rep.kplus) + rep.kminus
    return (
        (2.0 * p.beta + 1.0) * rep.kzero
        - (p.alpha * u / 2.0) * rep.kplus
        - (p.alpha * uc / 2.0) * rep.kminus
    )


def l_operator_conjugated(
    rep: TruncatedRep, p: DisplacementParams, which: str
) -> np.ndarray:
    """Tilted generator by explicit conjugation D K D+ (oracle route)."""
    if which not in _L_KINDS:
        raise ValueError(f"which must be one of {_L_KINDS}, got {which!r}")
    base = {"plus": rep.kplus, "minus": rep.kminus, "zero": rep.kzero}
    d = displacement_exponential(rep, p)
    return d @ base[which] @ d.conj().T


@dataclass(frozen=True)
class LadderCheck:
    """Residuals of the L-ladder relations on PNCS vectors."""

    plus_residual: float
    minus_residual: float
    zero_residual: float
    zero_eigenvalue: float


def pncs_ladder_check(
    k: float, n: int, p: DisplacementParams, dim: int
) -> LadderCheck:
    """Verify L+|z,k,n> = sqrt((n+1)(2k+n))|z,k,n+1>, the L- analogue and
    the L0 eigenvalue relation, returning vector-norm residuals."""
    if n + 1 >= interior_dim(dim):
        raise ValueError(
            f"need n+1 = {n + 1} inside the interior block of a dim={dim} window"
        )
    rep = build_rep_cached(k, dim)
    psi_n = pncs_series(k, n, p, dim).state.amplitudes
    psi_up = pncs_series(k, n + 1, p, dim).state.amplitudes
    lp = l_operator_closed(rep, p, "plus")
    lm = l_operator_closed(rep, p, "minus")
    l0 = l_operator_closed(rep, p, "zero")

    c_up = raising_factors(k, dim)[n]
    plus_res = float(np.linalg.norm(lp @ psi_n - c_up * psi_up))
    if n >= 1:
        psi_dn = pncs_series(k, n - 1, p, dim).state.amplitudes
        c_dn = lowering_factors(k, dim)[n]
        minus_res = float(np.linalg.norm(lm @ psi_n - c_dn * psi_dn))
    else:
        minus_res = float(np.linalg.norm(lm @ psi_n))
    zero_res = float(np.linalg.norm(l0 @ psi_n - (k + n) * psi_n))
    zero_eig = float(np.real(np.vdot(psi_n, l0 @ psi_n)))
    return LadderCheck(
        plus_residual=plus_res,
        minus_residual=minus_res,
        zero_residual=zero_res,
        zero_eigenvalue=zero_eig,
    )


def build_rep_cached(k: float, dim: int) -> TruncatedRep:
    """Tiny memo around rep construction; reps are immutable so sharing is safe."""
    key = (float(k), int(dim))
    rep = _REP_CACHE.get(key)
    if rep is None:
        from .algebra import build_discrete_series_rep

        rep = build_discrete_series_rep(k, dim)
        if len(_REP_CACHE) > 64:
            _REP_CACHE.clear()
        _REP_CACHE[key] = rep
    return rep


_REP_CACHE: dict[tuple[float, int], TruncatedRep] = {}


def gram_matrix(
    k: float,
    p: DisplacementParams,
    n_max: int,
    dim: int,
    tol: float = 1e-10,
) -> np.ndarray:
    """Overlap matrix <z,k,n'|z,k,n> for n, n' = 0..n_max (expected identity).

    Warns when any constituent state keeps non-negligible weight in the
    guard band, i.e. when the window is too small for the requested family.
    """
    states = []
    for n in range(n_max + 1):
        st = pncs_series(k, n, p, dim, tol=min(tol, 1e-12)).state
        if st.tail_mass > tol:
            warnings.warn(
                f"PNCS n={n} has tail mass {st.tail_mass:.3e} > {tol:.1e}; "
                f"increase dim for trustworthy overlaps",
                stacklevel=2,
            )
        states.append(st.amplitudes)
    mat = np.array(states)
    return mat.conj() @ mat.T


def completeness_sum(
    k: float,
    p: DisplacementParams,
    n_max: int,
    dim: int,
) -> np.ndarray:
    """Partial resolution of identity sum_n |z,k,n><z,k,n| for n <= n_max.

    Approaches the identity on a fixed leading block as n_max grows; the
    convergence rate degrades as |zeta| grows because each PNCS spreads
    over a wider band of levels.
    """
    out = np.zeros((dim, dim), dtype=complex)
    for n in range(n_max + 1):
        amps = pncs_series(k, n, p, dim, tol=1e-14).state.amplitudes
        out += np.outer(amps, amps.conj())
    return out
