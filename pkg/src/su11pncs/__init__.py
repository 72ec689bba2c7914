"""SU(1,1) Perelomov number coherent states on truncated Fock windows.

Core layers: :mod:`~su11pncs.algebra` (discrete-series representation),
:mod:`~su11pncs.displacement` (displacement operator and PNCS),
:mod:`~su11pncs.dynamics` (tilting diagonalization and evolution),
:mod:`~su11pncs.amplifier` (two-mode realization and wavefunctions),
:mod:`~su11pncs.verification` (runnable invariant suite). The FastAPI app
lives in :mod:`~su11pncs.service`; the ``su11`` CLI is a thin client.
"""

__version__ = "0.1.0"

from .algebra import (
    StateVector,
    TruncatedRep,
    apply_kzero,
    apply_lowering,
    apply_raising,
    basis_state,
    build_discrete_series_rep,
    casimir,
    inner_product,
)
from .amplifier import (
    AmplifierSpec,
    ClosedFormAudit,
    PolarGrid,
    RealizationReport,
    TwoModeQuantumNumbers,
    amplifier_energy,
    closed_form_audit,
    ho_eigenfunction,
    laguerre,
    pncs_wavefunction_closed,
    pncs_wavefunction_closed_corrected,
    pncs_wavefunction_series,
    realization_checks,
)
from .displacement import (
    DisplacementParams,
    LadderCheck,
    PncsResult,
    completeness_sum,
    displacement_exponential,
    displacement_normal_form,
    gram_matrix,
    l_operator_closed,
    l_operator_conjugated,
    make_params,
    pncs_ladder_check,
    pncs_series,
)
from .dynamics import (
    Su11Hamiltonian,
    TiltResult,
    dense_evolution,
    eigen_energy,
    eigen_residual,
    hamiltonian_matrix,
    tilt_parameters,
    time_evolve,
)
from .errors import (
    AboveThresholdError,
    DomainError,
    SeriesDivergenceError,
    SingularClosedFormError,
)
from .verification import VerifyConfig, run_verification

__all__ = [
    "AboveThresholdError",
    "AmplifierSpec",
    "ClosedFormAudit",
    "DisplacementParams",
    "DomainError",
    "LadderCheck",
    "PncsResult",
    "PolarGrid",
    "RealizationReport",
    "SeriesDivergenceError",
    "SingularClosedFormError",
    "StateVector",
    "Su11Hamiltonian",
    "TiltResult",
    "TruncatedRep",
    "TwoModeQuantumNumbers",
    "VerifyConfig",
    "amplifier_energy",
    "apply_kzero",
    "apply_lowering",
    "apply_raising",
    "basis_state",
    "build_discrete_series_rep",
    "casimir",
    "closed_form_audit",
    "completeness_sum",
    "dense_evolution",
    "displacement_exponential",
    "displacement_normal_form",
    "eigen_energy",
    "eigen_residual",
    "gram_matrix",
    "hamiltonian_matrix",
    "ho_eigenfunction",
    "inner_product",
    "l_operator_closed",
    "l_operator_conjugated",
    "laguerre",
    "make_params",
    "pncs_ladder_check",
    "pncs_series",
    "pncs_wavefunction_closed",
    "pncs_wavefunction_closed_corrected",
    "pncs_wavefunction_series",
    "realization_checks",
    "run_verification",
    "tilt_parameters",
    "time_evolve",
]
