"""Runnable verification suite covering every module invariant.

Each check computes a residual with an independent oracle route and
compares it against the tolerance the invariant is stated at. Checks that
depend on the truncation window being large enough are downgraded from
``fail`` to ``warn`` when the configured window is smaller than the
default 128, so a deliberately starved run (``--dim 16``) reports honest
residuals without being scored as broken code.

Numerical notes, load-bearing for the tolerances used here:

* The pure algebra identities (commutators, Casimir, tilted-generator
  closure) are exact statements about closed-form matrix entries. At
  window sizes near 128 the entries reach ~2.5e4, so a float64 product
  carries ~1e-11 of honest rounding, above the 1e-12 the identities are
  asserted at. Those checks therefore evaluate the band structure exactly
  and the band values in extended precision (float64 construction is
  separately asserted to match its closed formulas entrywise).
* The factorized displacement route is entrywise exact in its low columns
  but amplifies rounding in high ones, and any column whose displaced
  excitation spills past the window is unusable in either route, so route
  comparisons run on the leading block from ``route_comparison_block``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import lgamma

import numpy as np

from . import algebra, amplifier, displacement, dynamics
from .algebra import interior_dim
from .amplifier import (
    AmplifierSpec,
    ClosedFormAudit,
    PolarGrid,
    TwoModeQuantumNumbers,
    closed_form_audit,
    fixed_m_norm,
    fixed_m_overlap,
    gauss_radial,
    ho_eigenfunction,
    pncs_wavefunction_series,
    radial_cutoff,
    realization_checks,
)
from .displacement import (
    build_rep_cached,
    completeness_sum,
    gram_matrix,
    l_operator_closed,
    l_operator_conjugated,
    make_params,
    pncs_ladder_check,
    pncs_series,
    route_comparison_block,
)
from .dynamics import (
    Su11Hamiltonian,
    dense_evolution,
    eigen_energy,
    hamiltonian_matrix,
    tilt_parameters,
)

K_GRID = (0.5, 1.0, 1.5, 2.3)
PHI_GRID = (0.0, 0.7, math.pi)
BAND1_TAUS = (0.2, 0.5, 0.9, 1.2)        # |zeta| up to 0.537
BAND2_TAUS = (2.0, 2.1972245773362196)   # |zeta| up to 0.800
TILT_CASES = ((2.0, 0.5), (2.0, 0.8), (3.0, 1.0))
DEFAULT_DIM = 128


@dataclass(frozen=True)
class VerifyConfig:
    """Suite configuration: window size and an optional tolerance override."""

    dim: int = DEFAULT_DIM
    tol: float | None = None

    def scaled(self, base: int) -> int:
        return max(12, round(base * self.dim / DEFAULT_DIM))


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float
    status: str               # "pass" | "warn" | "fail"
    truncation_sensitive: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checks: tuple[CheckResult, ...]
    dim: int
    tol_override: float | None

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "warn": 0, "fail": 0}
        for c in self.checks:
            out[c.status] += 1
        return out


def _result(
    cfg: VerifyConfig,
    name: str,
    residual: float,
    tol: float,
    sensitive: bool,
    detail: str = "",
) -> CheckResult:
    tol_eff = cfg.tol if cfg.tol is not None else tol
    if residual <= tol_eff:
        status = "pass"
    elif sensitive and cfg.dim < DEFAULT_DIM:
        status = "warn"
    else:
        status = "fail"
    return CheckResult(
        name=name,
        residual=float(residual),
        tolerance=float(tol_eff),
        status=status,
        truncation_sensitive=sensitive,
        detail=detail,
    )


# ---------------------------------------------------------------- algebra

def check_algebra(cfg: VerifyConfig) -> list[CheckResult]:
    dims = sorted({cfg.scaled(32), cfg.scaled(64), cfg.dim})
    comm_res = 0.0
    cas_res = 0.0
    structure_res = 0.0
    ladder_res = 0.0
    rng = np.random.default_rng(0)
    for k in K_GRID:
        for dim in dims:
            rep = build_rep_cached(k, dim)
            sub = rep.kplus[np.arange(1, dim), np.arange(dim - 1)]
            # construction matches its closed formulas entrywise, and the
            # matrices carry no spurious entries
            expect = algebra.raising_factors(k, dim)[:-1]
            structure_res = max(structure_res, float(np.abs(sub - expect).max()))
            off = rep.kplus.copy()
            off[np.arange(1, dim), np.arange(dim - 1)] = 0.0
            structure_res = max(structure_res, float(np.abs(off).max()))
            structure_res = max(
                structure_res, float(np.abs(rep.kminus - rep.kplus.conj().T).max())
            )
            structure_res = max(
                structure_res,
                float(np.abs(np.diag(rep.kzero) - (k + np.arange(dim))).max()),
            )
            # band-value identities in extended precision (float64 products
            # of ~1e4-sized entries round above the 1e-12 assertion level)
            n = np.arange(dim, dtype=np.longdouble)
            kl = np.longdouble(k)
            c = np.sqrt((n + 1) * (2 * kl + n))     # raising factors
            d = np.sqrt(n * (2 * kl + n - 1))       # lowering factors
            idim = interior_dim(dim)
            comm_zero_plus = np.abs((kl + n[:-1] + 1) * c[:-1] - c[:-1] * (kl + n[:-1]) - c[:-1])
            comm_minus_plus = np.abs(c[: dim - 1] ** 2 - d[: dim - 1] ** 2 - 2 * (kl + n[: dim - 1]))
            comm_res = max(
                comm_res,
                float(comm_zero_plus[: idim - 1].max()),
                float(comm_minus_plus[:idim].max()),
            )
            casimir_diag = (kl + n) ** 2 - 0.5 * (d**2 + c**2)
            cas_res = max(
                cas_res, float(np.abs(casimir_diag[:idim] - kl * (kl - 1)).max())
            )
            # vector ladder actions against the matrix route
            v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            v /= np.linalg.norm(v)
            st = algebra.StateVector(k=k, amplitudes=v)
            ladder_res = max(
                ladder_res,
                float(np.abs(rep.kplus @ v - algebra.apply_raising(st).amplitudes).max()),
                float(np.abs(rep.kminus @ v - algebra.apply_lowering(st).amplitudes).max()),
                float(np.abs(rep.kzero @ v - algebra.apply_kzero(st).amplitudes).max()),
            )
    detail = f"k in {K_GRID}, dims {dims}, interior excludes top guard band"
    return [
        _result(cfg, "algebra.commutators", comm_res, 1e-12, False, detail),
        _result(cfg, "algebra.casimir", cas_res, 1e-12, False, detail),
        _result(cfg, "algebra.adjoint_structure", structure_res, 0.0, False,
                "entrywise equality of constructed bands; exact zero expected"),
        _result(cfg, "algebra.ladder_vs_matrix", ladder_res, 1e-14, False,
                "amplitude-shift ladder actions vs dense matrix products"),
    ]


# ----------------------------------------------------------- displacement

def _eq8_amplitudes(k: float, zeta: complex, dim: int) -> np.ndarray:
    """Ground-state coherent amplitudes (independent direct evaluation)."""
    s = np.arange(dim)
    logmag = 0.5 * np.array([lgamma(ss + 2 * k) - lgamma(ss + 1.0) - lgamma(2 * k) for ss in s])
    az = abs(zeta)
    if az == 0:
        out = np.zeros(dim, dtype=complex)
        out[0] = 1.0
        return out
    mags = np.exp(logmag + s * math.log(az)) * (1 - az * az) ** k
    return mags * np.exp(1j * s * cmath.phase(zeta))


def check_displacement(cfg: VerifyConfig) -> list[CheckResult]:
    out: list[CheckResult] = []
    series_res = 0.0
    ground_res = 0.0
    for band, taus, base_dim, tol in (
        (1, BAND1_TAUS, cfg.dim, 1e-10),
        (2, BAND2_TAUS, cfg.scaled(192), 1e-8),
    ):
        eq_res = 0.0
        unit_res = 0.0
        inv_res = 0.0
        for k in K_GRID:
            rep = build_rep_cached(k, base_dim)
            for tau in taus:
                for phi in PHI_GRID:
                    p = make_params(tau, phi)
                    pm = make_params(-tau, phi)
                    b = route_comparison_block(base_dim, k, tau)
                    dn = displacement.displacement_normal_form(rep, p)
                    de = displacement.displacement_exponential(rep, p)
                    eq_res = max(eq_res, float(np.abs(dn - de)[:b, :b].max()))
                    unit_res = max(
                        unit_res,
                        float(np.abs(de.conj().T @ de - np.eye(base_dim)).max()),
                    )
                    if band == 1:
                        # full columns enter the product, and factorized
                        # columns beyond ~12 carry amplified rounding in
                        # their mid rows, so this sub-check uses a tighter
                        # column block than the route comparison
                        bu = min(12, b)
                        unit_res = max(
                            unit_res,
                            float(np.abs((dn.conj().T @ dn) - np.eye(base_dim))[:bu, :bu].max()),
                        )
                    dnm = displacement.displacement_normal_form(rep, pm)
                    inv_res = max(
                        inv_res,
                        float(np.abs(dnm - dn.conj().T)[:b, :b].max()),
                        float(np.abs(displacement.displacement_exponential(rep, pm) - de.conj().T).max()),
                    )
                    top = interior_dim(base_dim)
                    if band == 1:
                        for n in range(7):
                            amps = pncs_series(k, n, p, base_dim, tol=1e-13).state.amplitudes
                            series_res = max(
                                series_res, float(np.abs(amps - de[:, n])[:top].max())
                            )
                    ground = pncs_series(k, 0, p, base_dim, tol=1e-13).state.amplitudes
                    ground_res = max(
                        ground_res,
                        float(np.abs(ground - _eq8_amplitudes(k, p.zeta, base_dim)).max()),
                    )
        bd = f"band {band}: tau in {taus}, dim {base_dim}, leading comparison block"
        out.append(_result(cfg, f"displacement.route_equivalence.band{band}", eq_res, tol, True, bd))
        out.append(_result(cfg, f"displacement.unitarity.band{band}", unit_res, tol, True, bd))
        out.append(_result(cfg, f"displacement.inverse_adjoint.band{band}", inv_res, tol, True, bd))
    out.append(
        _result(cfg, "pncs.series_vs_matrix", series_res, 1e-10, True,
                "series amplitudes vs exponential-route columns, n <= 6, band 1 grid")
    )
    out.append(
        _result(cfg, "pncs.ground_state_reduction", ground_res, 1e-12, True,
                "n = 0 series against the direct coherent-state amplitude formula")
    )
    return out


# ------------------------------------------------------------ L operators

def check_l_operators(cfg: VerifyConfig) -> list[CheckResult]:
    conj_res = 0.0
    comm_res = 0.0
    ladder_res = 0.0
    eig_res = 0.0
    dim = cfg.dim
    for k in K_GRID:
        rep = build_rep_cached(k, dim)
        for tau in (0.5, 0.9):
            for phi in (0.0, 0.7):
                p = make_params(tau, phi)
                b = route_comparison_block(dim, k, tau)
                for which in ("plus", "minus", "zero"):
                    lc = l_operator_closed(rep, p, which)
                    lo = l_operator_conjugated(rep, p, which)
                    conj_res = max(conj_res, float(np.abs(lc - lo)[:b, :b].max()))

    # closure of the closed forms, extended precision on a small window
    # (float64 products round above 1e-11 once entries reach ~1e4)
    dim_c = cfg.scaled(48)
    for k in K_GRID:
        n = np.arange(dim_c, dtype=np.longdouble)
        kl = np.longdouble(k)
        kplus = np.zeros((dim_c, dim_c), dtype=np.clongdouble)
        kplus[np.arange(1, dim_c), np.arange(dim_c - 1)] = np.sqrt(
            (n[:-1] + 1) * (2 * kl + n[:-1])
        )
        rep_l = algebra.TruncatedRep(
            k=k, dim=dim_c, kplus=kplus, kminus=kplus.conj().T.copy(),
            kzero=np.diag((kl + n).astype(np.clongdouble)),
        )
        for tau in (0.6, 1.2):
            p = make_params(tau, 0.7)
            lp = l_operator_closed(rep_l, p, "plus")
            lm = l_operator_closed(rep_l, p, "minus")
            l0 = l_operator_closed(rep_l, p, "zero")
            idim = interior_dim(dim_c)
            comm_res = max(
                comm_res,
                float(np.abs((l0 @ lp - lp @ l0) - lp)[:idim, :idim].max()),
                float(np.abs((l0 @ lm - lm @ l0) + lm)[:idim, :idim].max()),
                float(np.abs((lm @ lp - lp @ lm) - 2 * l0)[:idim, :idim].max()),
            )

    for k in (0.5, 1.5):
        for n in (0, 1, 3):
            p = make_params(0.6, 0.2)
            chk = pncs_ladder_check(k, n, p, cfg.dim)
            ladder_res = max(
                ladder_res, chk.plus_residual, chk.minus_residual, chk.zero_residual
            )
            eig_res = max(eig_res, abs(chk.zero_eigenvalue - (k + n)))
    return [
        _result(cfg, "l_operators.closed_vs_conjugation", conj_res, 1e-10, True,
                "closed linear combinations vs explicit D K D+ on the leading block"),
        _result(cfg, "l_operators.commutators", comm_res, 1e-11, False,
                f"extended-precision closure on a dim={dim_c} window"),
        _result(cfg, "l_operators.pncs_ladder", ladder_res, 1e-9, True,
                "L ladder relations on PNCS vectors"),
        _result(cfg, "l_operators.zero_eigenvalue", eig_res, 1e-9, True,
                "Rayleigh quotient of L0 on PNCS equals k + n"),
    ]


# -------------------------------------------------- orthonormality and sums

def check_orthonormality(cfg: VerifyConfig) -> list[CheckResult]:
    p = make_params(0.8, 0.0)
    g = gram_matrix(1.0, p, 10, cfg.dim)
    gram_res = float(np.abs(g - np.eye(11)).max())

    # partial identity resolution converges on a fixed block only while the
    # per-state spread stays well below n_max; tau = 0.3 keeps 41 states
    # comfortably inside levels 0..20 + spread
    pc = make_params(0.3, 0.0)
    dim_c = cfg.scaled(160)
    n_max_c = min(40, dim_c - 1)
    s = completeness_sum(1.0, pc, n_max_c, dim_c)
    comp_res = float(np.abs(s - np.eye(dim_c))[:21, :21].max())
    return [
        _result(cfg, "pncs.gram_identity", gram_res, 1e-10, True,
                "overlaps of PNCS n,n' <= 10 at tau = 0.8"),
        _result(cfg, "pncs.completeness_partial_sum", comp_res, 1e-8, True,
                f"sum over n <= {n_max_c} at tau = 0.3, block 0..20, dim {dim_c}"),
    ]


# ----------------------------------------------------------------- tilting

def check_tilting(cfg: VerifyConfig) -> list[CheckResult]:
    off_res = 0.0
    spec_res = 0.0
    dim = cfg.dim
    for f, gam in TILT_CASES:
        for phi in (0.0, 0.4):
            h = Su11Hamiltonian(f=f, gamma=gam, phase=phi)
            tilt = tilt_parameters(h)
            for k in (0.5, 1.0, 2.3):
                rep = build_rep_cached(k, dim)
                hmat = hamiltonian_matrix(rep, h)
                d = displacement.displacement_exponential(rep, tilt.params)
                tilted = d.conj().T @ hmat @ d
                b = max(
                    8,
                    min(
                        interior_dim(dim),
                        int(0.7 * dim * math.exp(-tilt.params.tau) - k),
                    ),
                )
                block = tilted[:b, :b].copy()
                np.fill_diagonal(block, 0.0)
                off_res = max(off_res, float(np.abs(block).max()))
                eigs = np.linalg.eigvalsh(hmat)
                expected = tilt.omega_eff * (k + np.arange(8))
                spec_res = max(spec_res, float(np.abs(np.sort(eigs)[:8] - expected).max()))
    detail = f"(f, gamma) in {TILT_CASES}, dim {dim}"
    return [
        _result(cfg, "dynamics.tilted_diagonality", off_res, 1e-9, True, detail),
        _result(cfg, "dynamics.spectrum_match", spec_res, 1e-7, True,
                detail + ", lowest 8 eigenvalues vs (n+k) omega_eff"),
    ]


# ---------------------------------------------------------------- evolution

def check_evolution(cfg: VerifyConfig) -> list[CheckResult]:
    phase_res = 0.0
    overlap_res = 0.0
    dim = cfg.dim
    h = Su11Hamiltonian(f=2.0, gamma=0.5, phase=0.0)
    tilt = tilt_parameters(h)
    rep = build_rep_cached(1.0, dim)
    for n in (0, 2):
        result = pncs_series(1.0, n, tilt.params, dim, tol=1e-13)
        psi = result.state.amplitudes
        e = eigen_energy(1.0, n, tilt)
        for t in (0.1, 1.0, 5.0):
            evolved = dense_evolution(rep, h, psi, t)
            analytic = dynamics.time_evolve(result, t, tilt).amplitudes
            phase_oracle = cmath.phase(complex(np.vdot(psi, evolved)))
            wrapped = cmath.phase(cmath.exp(1j * (-e * t - phase_oracle)))
            phase_res = max(
                phase_res,
                abs(wrapped),
                float(np.linalg.norm(evolved - analytic)),
            )
            overlap_res = max(overlap_res, abs(abs(np.vdot(psi, evolved)) - 1.0))
    return [
        _result(cfg, "dynamics.evolution_phase", phase_res, 1e-8, True,
                "pure-phase evolution vs dense expm(-iHt), t in {0.1, 1, 5}"),
        _result(cfg, "dynamics.evolution_overlap", overlap_res, 1e-12, True,
                "overlap modulus with the initial state"),
    ]


# ---------------------------------------------------------------- amplifier

def check_amplifier(cfg: VerifyConfig) -> list[CheckResult]:
    spec_res = 0.0
    chi0_res = 0.0
    dim = cfg.dim
    for omega, chi, m in ((1.0, 0.6, 2), (1.0, 0.3, 0), (2.0, 0.9, 1)):
        spec = AmplifierSpec(omega=omega, chi=chi, Phi=0.0)
        rep = build_rep_cached(0.5 * (m + 1), dim)
        hmat = hamiltonian_matrix(rep, spec.hamiltonian())
        eigs = np.sort(np.linalg.eigvalsh(hmat))
        for n in range(6):
            q = TwoModeQuantumNumbers.from_radial(n, m)
            formula = amplifier.amplifier_energy(q, spec)
            spec_res = max(spec_res, abs(formula - (eigs[n] - omega)))
    for omega in (1.0, 1.7):
        for m in (0, 1, 3):
            for n in range(4):
                q = TwoModeQuantumNumbers.from_radial(n, m)
                e = amplifier.amplifier_energy(q, AmplifierSpec(omega=omega, chi=0.0))
                chi0_res = max(chi0_res, abs(e - omega * q.N))
    return [
        _result(cfg, "amplifier.spectrum_vs_eigensolve", spec_res, 1e-7, True,
                "closed-form energies vs dense eigensolve of the mapped Hamiltonian"),
        _result(cfg, "amplifier.chi0_oscillator_ladder", chi0_res, 1e-12, False,
                "chi = 0 spectrum reduces to omega * N"),
    ]


# ------------------------------------------------------------- wavefunctions

WAVEFUNCTION_GRID = tuple(
    (m, n, tau, phi)
    for m in (0, 1, 2)
    for n in (0, 1, 2, 3)
    for tau in (0.3, 0.6, 0.9)
    for phi in (0.0, 1.0)
)
AUDIT_ANGLES = (0.0, 1.3, math.pi, 4.4)


def run_wavefunction_audits(tol: float = 1e-8) -> list[ClosedFormAudit]:
    """Closed-form-vs-series audits across the full wavefunction grid."""
    audits = []
    r20 = gauss_radial(20, 6.0)[0]
    for m, n, tau, phi in WAVEFUNCTION_GRID:
        q = TwoModeQuantumNumbers.from_radial(n, m)
        p = make_params(tau, phi)
        audits.append(closed_form_audit(q, p, r20, AUDIT_ANGLES, tol=tol))
    return audits


def check_wavefunctions(cfg: VerifyConfig) -> list[CheckResult]:
    norm_res = 0.0
    orth_res = 0.0
    for n_r, m in ((0, 0), (1, 0), (2, 1), (3, 2), (1, 3)):
        q = TwoModeQuantumNumbers.from_radial(n_r, m)
        r, w = gauss_radial(128, radial_cutoff(m, n_r + 2))
        vals = ho_eigenfunction(q, r, 0.0)
        norm_res = max(norm_res, abs(fixed_m_norm(vals, w) - 1.0))
    for m in (0, 1, 2):
        r, w = gauss_radial(128, radial_cutoff(m, 4))
        for na, nb in ((0, 1), (1, 2), (0, 3)):
            va = ho_eigenfunction(TwoModeQuantumNumbers.from_radial(na, m), r, 0.0)
            vb = ho_eigenfunction(TwoModeQuantumNumbers.from_radial(nb, m), r, 0.0)
            orth_res = max(orth_res, abs(fixed_m_overlap(va, vb, w)))

    series_norm_res = 0.0
    for m, n, tau, phi in WAVEFUNCTION_GRID:
        q = TwoModeQuantumNumbers.from_radial(n, m)
        p = make_params(tau, phi)
        r, w = gauss_radial(160, radial_cutoff(m, n + 2, p.zeta))
        vals = pncs_wavefunction_series(q, p, r, 0.0, tol=1e-13)
        series_norm_res = max(series_norm_res, abs(fixed_m_norm(vals, w) - 1.0))

    audits = run_wavefunction_audits(tol=1e-8)
    audit_res = 0.0
    n_direct_ok = 0
    all_resolved = True
    for a in audits:
        if a.direct_ok:
            n_direct_ok += 1
            audit_res = max(audit_res, a.max_diff_direct)
        elif a.corrected_ok:
            audit_res = max(audit_res, a.max_diff_corrected)
        else:
            all_resolved = False
            audit_res = math.inf

    ground_direct = 0.0
    ground_corrected = 0.0
    r20 = gauss_radial(20, 6.0)[0]
    for m in (0, 1, 2):
        for tau, phi in ((0.3, 0.0), (0.6, 1.0), (0.9, 0.4)):
            q = TwoModeQuantumNumbers.from_radial(0, m)
            p = make_params(tau, phi)
            a = closed_form_audit(q, p, r20, AUDIT_ANGLES, tol=1e-10)
            ground_direct = max(ground_direct, a.max_diff_direct)
            ground_corrected = max(ground_corrected, a.max_diff_corrected)
    ground_res = ground_direct if ground_direct <= 1e-10 else ground_corrected
    ground_note = (
        "direct ground-state closed form matches the series"
        if ground_direct <= 1e-10
        else (
            f"direct ground-state closed form deviates by {ground_direct:.3e}; "
            f"documented correction ({amplifier.CLOSED_FORM_CORRECTION}) "
            f"reproduces the series"
        )
    )
    audit_note = (
        f"{n_direct_ok}/{len(audits)} grid points match the direct closed "
        f"form; all points match after the documented correction "
        f"({amplifier.CLOSED_FORM_CORRECTION})"
        if all_resolved
        else "unresolved discrepancy: tested corrections do not reproduce the series"
    )
    return [
        _result(cfg, "wavefunctions.ho_quadrature_norm", norm_res, 1e-8, False,
                "plane-measure norms of oscillator eigenfunctions"),
        _result(cfg, "wavefunctions.ho_orthogonality", orth_res, 1e-8, False,
                "same-m radial overlaps"),
        _result(cfg, "wavefunctions.series_norm", series_norm_res, 1e-7, False,
                "quadrature norm of the series route over the displacement grid"),
        _result(cfg, "wavefunctions.ground_state_closed_form", ground_res, 1e-10, False,
                ground_note),
        _result(cfg, "wavefunctions.closed_form_audit", audit_res, 1e-8, False,
                audit_note),
    ]


# ---------------------------------------------------------------- realization

def check_realization(cfg: VerifyConfig) -> list[CheckResult]:
    coarse = PolarGrid(r_max=6.0, radial_step=0.025, angular_points=96)
    fine = coarse.refined()
    res_fine = 0.0
    ratio_lo, ratio_hi = math.inf, 0.0
    ladder_res = 0.0
    for n_r, m in ((2, 0), (1, 2), (1, 1)):
        q = TwoModeQuantumNumbers.from_radial(n_r, m)
        rc = realization_checks(q, coarse)
        rf = realization_checks(q, fine)
        res_fine = max(res_fine, rf.k0_residual)
        ratios = [rc.k0_residual / rf.k0_residual]
        if m >= 1:
            res_fine = max(res_fine, rf.casimir_residual)
            ratios.append(rc.casimir_residual / rf.casimir_residual)
        for r in ratios:
            ratio_lo = min(ratio_lo, r)
            ratio_hi = max(ratio_hi, r)
        ladder_res = max(
            ladder_res,
            rf.a_residual, rf.b_residual, rf.a_dagger_residual, rf.b_dagger_residual,
        )
    ratio_res = max(abs(ratio_lo - 4.0), abs(ratio_hi - 4.0))
    return [
        _result(cfg, "realization.eigenvalue_residuals", res_fine, 2e-3, False,
                f"finite-difference K0 and Casimir actions at h = {fine.radial_step}"),
        _result(cfg, "realization.second_order_convergence", ratio_res, 1.0, False,
                f"residual ratios on step halving in [{ratio_lo:.2f}, {ratio_hi:.2f}], expected ~4"),
        _result(cfg, "realization.mode_ladder_actions", ladder_res, 2e-3, False,
                "two-mode raising/lowering bookkeeping N -> N+-1, m -> m+-1"),
    ]


CHECK_GROUPS = (
    check_algebra,
    check_displacement,
    check_l_operators,
    check_orthonormality,
    check_tilting,
    check_evolution,
    check_amplifier,
    check_wavefunctions,
    check_realization,
)


def run_verification(cfg: VerifyConfig | None = None) -> VerificationReport:
    """Execute every invariant check and collect the structured report."""
    cfg = cfg or VerifyConfig()
    checks: list[CheckResult] = []
    for group in CHECK_GROUPS:
        checks.extend(group(cfg))
    passed = all(c.status != "fail" for c in checks)
    return VerificationReport(
        passed=passed, checks=tuple(checks), dim=cfg.dim, tol_override=cfg.tol
    )
