"""HTTP service exposing the package's operations.

Stateless JSON-in/JSON-out endpoints wrapping the pure core functions;
the CLI is a thin client of this app (in-process by default). Domain
errors (above-threshold coupling, the singular closed form) map to 409,
malformed parameters to 400/422.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .amplifier import (
    AmplifierSpec,
    TwoModeQuantumNumbers,
    amplifier_energy,
    closed_form_audit,
    pncs_wavefunction_closed,
    pncs_wavefunction_series,
    radial_cutoff,
)
from .displacement import build_rep_cached, make_params, pncs_series
from .dynamics import dense_evolution, eigen_energy, tilt_parameters
from .errors import DomainError
from .verification import VerifyConfig, run_verification

AUDIT_ANGLES = (0.0, 1.3, math.pi, 4.4)


class StateRequest(BaseModel):
    k: float = Field(default=1.0, gt=0)
    n: int = Field(default=0, ge=0)
    tau: float = 0.5
    phi: float = 0.0
    dim: int = Field(default=128, ge=2, le=2048)
    tol: float = Field(default=1e-10, gt=0)


class Amplitude(BaseModel):
    n: int
    re: float
    im: float
    abs2: float


class StateMeta(BaseModel):
    k: float
    n_source: int
    zeta_re: float
    zeta_im: float
    eta: float
    tail_mass: float
    series_terms: int


class StateResponse(BaseModel):
    meta: StateMeta
    amplitudes: list[Amplitude]


class SpectrumRequest(BaseModel):
    omega: float = Field(default=1.0, gt=0)
    chi: float = Field(default=0.5, ge=0)
    m: int = Field(default=0, ge=0)
    n_max: int = Field(default=10, ge=0)


class SpectrumRow(BaseModel):
    n: int
    m: int
    omega: float
    chi: float
    energy: float


class SpectrumResponse(BaseModel):
    rows: list[SpectrumRow]


class WavefunctionRequest(BaseModel):
    m: int = Field(default=0, ge=0)
    n: int = Field(default=0, ge=0)
    tau: float = 0.5
    phi: float = 0.0
    radial_points: int = Field(default=32, ge=1, le=4096)
    angular_points: int = Field(default=8, ge=1, le=4096)
    tol: float = Field(default=1e-10, gt=0)


class WavefunctionRow(BaseModel):
    r: float
    angle: float
    series_re: float
    series_im: float
    series_abs2: float
    closed_re: float | None
    closed_im: float | None
    closed_abs2: float | None
    abs_diff: float | None
    closed_singular: bool


class AuditModel(BaseModel):
    tolerance: float
    n_points: int
    max_diff_direct: float | None
    max_diff_corrected: float
    direct_ok: bool
    corrected_ok: bool
    direct_singular: bool
    correction: str
    conclusion: str


class WavefunctionResponse(BaseModel):
    rows: list[WavefunctionRow]
    audit: AuditModel


class EvolveRequest(BaseModel):
    k: float = Field(default=1.0, gt=0)
    n: int = Field(default=0, ge=0)
    omega: float = Field(default=1.0, gt=0)
    chi: float = Field(default=0.5, ge=0)
    Phi: float = 0.0
    t: float = 1.0
    steps: int = Field(default=10, ge=1, le=4096)
    dim: int = Field(default=128, ge=2, le=2048)


class EvolveRow(BaseModel):
    t: float
    phase_analytic: float
    phase_oracle: float
    phase_diff: float
    overlap_modulus: float


class EvolveResponse(BaseModel):
    omega_eff: float
    energy: float
    rows: list[EvolveRow]


class VerifyRequest(BaseModel):
    dim: int = Field(default=128, ge=12, le=1024)
    tol: float | None = Field(default=None, gt=0)


class CheckModel(BaseModel):
    name: str
    residual: float | None
    tolerance: float
    status: str
    truncation_sensitive: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    dim: int
    tol_override: float | None
    counts: dict[str, int]
    checks: list[CheckModel]


def _finite_or_none(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


def create_app() -> FastAPI:
    app = FastAPI(title="su11pncs", version=__version__)

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        return JSONResponse(
            status_code=409,
            content={"detail": {"code": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"detail": {"code": "invalid_parameters", "message": str(exc)}},
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/state", response_model=StateResponse)
    def state(req: StateRequest) -> StateResponse:
        p = make_params(req.tau, req.phi)
        result = pncs_series(req.k, req.n, p, req.dim, tol=req.tol)
        amps = result.state.amplitudes
        nonzero = np.nonzero(amps)[0]
        amps = amps[: int(nonzero[-1]) + 1] if nonzero.size else amps[:1]
        return StateResponse(
            meta=StateMeta(
                k=req.k,
                n_source=req.n,
                zeta_re=p.zeta.real,
                zeta_im=p.zeta.imag,
                eta=p.eta,
                tail_mass=result.state.tail_mass,
                series_terms=result.series_terms_used,
            ),
            amplitudes=[
                Amplitude(n=i, re=a.real, im=a.imag, abs2=abs(a) ** 2)
                for i, a in enumerate(amps)
            ],
        )

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest) -> SpectrumResponse:
        spec = AmplifierSpec(omega=req.omega, chi=req.chi)
        reference = AmplifierSpec(omega=req.omega, chi=0.0)
        rows = []
        for chi_val, sp in ((req.chi, spec), (0.0, reference)):
            for n in range(req.n_max + 1):
                q = TwoModeQuantumNumbers.from_radial(n, req.m)
                rows.append(
                    SpectrumRow(
                        n=n, m=req.m, omega=req.omega, chi=chi_val,
                        energy=amplifier_energy(q, sp),
                    )
                )
        return SpectrumResponse(rows=rows)

    @app.post("/wavefunction", response_model=WavefunctionResponse)
    def wavefunction(req: WavefunctionRequest) -> WavefunctionResponse:
        q = TwoModeQuantumNumbers.from_radial(req.n, req.m)
        p = make_params(req.tau, req.phi)
        r_max = radial_cutoff(req.m, req.n, p.zeta)
        r_grid = np.linspace(0.0, r_max, req.radial_points)
        angles = np.arange(req.angular_points) * 2.0 * math.pi / req.angular_points

        audit = closed_form_audit(
            q, p, np.linspace(0.05, r_max, 25), AUDIT_ANGLES, tol=req.tol
        )
        rows: list[WavefunctionRow] = []
        for r_val in r_grid:
            series_row = pncs_wavefunction_series(q, p, r_val, angles, tol=req.tol)
            closed_row = None
            if not audit.direct_singular:
                closed_row = pncs_wavefunction_closed(q, p, r_val, angles)
            for j, ang in enumerate(angles):
                sv = complex(series_row[j])
                if closed_row is None:
                    rows.append(
                        WavefunctionRow(
                            r=float(r_val), angle=float(ang),
                            series_re=sv.real, series_im=sv.imag,
                            series_abs2=abs(sv) ** 2,
                            closed_re=None, closed_im=None, closed_abs2=None,
                            abs_diff=None, closed_singular=True,
                        )
                    )
                else:
                    cv = complex(closed_row[j])
                    rows.append(
                        WavefunctionRow(
                            r=float(r_val), angle=float(ang),
                            series_re=sv.real, series_im=sv.imag,
                            series_abs2=abs(sv) ** 2,
                            closed_re=cv.real, closed_im=cv.imag,
                            closed_abs2=abs(cv) ** 2,
                            abs_diff=abs(sv - cv), closed_singular=False,
                        )
                    )
        return WavefunctionResponse(
            rows=rows,
            audit=AuditModel(
                tolerance=audit.tolerance,
                n_points=audit.n_points,
                max_diff_direct=_finite_or_none(audit.max_diff_direct),
                max_diff_corrected=audit.max_diff_corrected,
                direct_ok=audit.direct_ok,
                corrected_ok=audit.corrected_ok,
                direct_singular=audit.direct_singular,
                correction=audit.correction,
                conclusion=audit.conclusion,
            ),
        )

    @app.post("/evolve", response_model=EvolveResponse)
    def evolve(req: EvolveRequest) -> EvolveResponse:
        spec = AmplifierSpec(omega=req.omega, chi=req.chi, Phi=req.Phi)
        h = spec.hamiltonian()
        tilt = tilt_parameters(h)
        result = pncs_series(req.k, req.n, tilt.params, req.dim, tol=1e-12)
        psi = result.state.amplitudes
        energy = eigen_energy(req.k, req.n, tilt)
        rep = build_rep_cached(req.k, req.dim)
        rows = []
        for i in range(req.steps + 1):
            t_i = req.t * i / req.steps
            evolved = dense_evolution(rep, h, psi, t_i)
            overlap = complex(np.vdot(psi, evolved))
            phase_analytic = cmath.phase(cmath.exp(-1j * energy * t_i))
            phase_oracle = cmath.phase(overlap) if abs(overlap) > 0 else 0.0
            diff = abs(cmath.phase(cmath.exp(1j * (phase_analytic - phase_oracle))))
            rows.append(
                EvolveRow(
                    t=t_i,
                    phase_analytic=phase_analytic,
                    phase_oracle=phase_oracle,
                    phase_diff=diff,
                    overlap_modulus=abs(overlap),
                )
            )
        return EvolveResponse(omega_eff=tilt.omega_eff, energy=energy, rows=rows)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        report = run_verification(VerifyConfig(dim=req.dim, tol=req.tol))
        return VerifyResponse(
            passed=report.passed,
            dim=report.dim,
            tol_override=report.tol_override,
            counts=report.counts,
            checks=[
                CheckModel(
                    name=c.name,
                    residual=_finite_or_none(c.residual),
                    tolerance=c.tolerance,
                    status=c.status,
                    truncation_sensitive=c.truncation_sensitive,
                    detail=c.detail,
                )
                for c in report.checks
            ],
        )

    return app


app = create_app()
