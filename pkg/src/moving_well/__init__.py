"""Exact dynamics of a 1D infinite well with uniformly moving walls.

Closed-form modes, an exact spectral propagator for arbitrary states, an
independent Crank-Nicolson solver on the transformed fixed domain, and a
numerical audit layer (PDE residuals, boundary and orthonormality checks,
sign-convention audit). See the README for the CLI.
"""

from .errors import (
    AuditFailedError,
    HorizonExceededError,
    InvalidParameterError,
    InvalidProbeError,
    MovingWellError,
    QuadratureBudgetError,
)
from .fdm import GridState, LabField, SolverSettings, fidelity, init_from_lab, kernel_backend, map_to_lab, solve, step
from .geometry import PhysicalConstants, WellGeometry, make_geometry
from .modes import (
    MovingMode,
    PhaseParts,
    eval_mode,
    eval_mode_grid,
    gauge_exponent,
    gauge_phase,
    mode_energy,
    time_phase_integral,
)
from .spectral import (
    Observables,
    ProjectionReport,
    SpectralState,
    eval_state,
    initial_box_mode,
    initial_from_csv,
    initial_gaussian,
    mode_state,
    norm,
    observables,
    project,
)
from .verify import (
    AuditResult,
    ConvergenceEstimate,
    PhaseIdentityReport,
    ResidualReport,
    boundary_check,
    convergence_order,
    mode_field,
    orthonormality_check,
    phase_identity_checks,
    random_probes,
    residual_convergence,
    residual_lab,
    sign_convention_audit,
)

__version__ = "0.1.0"

__all__ = [
    "AuditFailedError",
    "AuditResult",
    "ConvergenceEstimate",
    "GridState",
    "HorizonExceededError",
    "InvalidParameterError",
    "InvalidProbeError",
    "LabField",
    "MovingMode",
    "MovingWellError",
    "Observables",
    "PhaseIdentityReport",
    "PhaseParts",
    "PhysicalConstants",
    "ProjectionReport",
    "QuadratureBudgetError",
    "ResidualReport",
    "SolverSettings",
    "SpectralState",
    "WellGeometry",
    "boundary_check",
    "convergence_order",
    "eval_mode",
    "eval_mode_grid",
    "eval_state",
    "fidelity",
    "gauge_exponent",
    "gauge_phase",
    "init_from_lab",
    "initial_box_mode",
    "initial_from_csv",
    "initial_gaussian",
    "kernel_backend",
    "make_geometry",
    "map_to_lab",
    "mode_energy",
    "mode_field",
    "mode_state",
    "norm",
    "observables",
    "orthonormality_check",
    "phase_identity_checks",
    "project",
    "random_probes",
    "residual_convergence",
    "residual_lab",
    "sign_convention_audit",
    "solve",
    "step",
    "time_phase_integral",
]
