"""Independent Crank-Nicolson solver on the fixed transformed domain.

The gauge map ψbar(xbar, t) = e^{-Θ(x,t)} ψ(x, t), with x = L(t)·xbar +
u_left·t and Θ the complex exponent from :func:`modes.gauge_exponent`,
turns the moving-wall problem into

    i ħ ∂ψbar/∂t = -(ħ²/2m) · 1/L²(t) · ∂²ψbar/∂xbar²

on the fixed interval [0, a] with ordinary Dirichlet ends. This module
discretizes that equation directly (uniform grid, 3-point stencil,
Crank-Nicolson with the 1/L² coefficient frozen at each step midpoint) and
never uses the closed-form modes, so it is a genuinely independent check
of the analytic propagator. The tridiagonal solve per step runs in the
compiled kernel when available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import BACKEND, cn_evolve, cn_step
from .errors import InvalidParameterError
from .geometry import WellGeometry
from .modes import gauge_exponent


def kernel_backend() -> str:
    """Which Crank-Nicolson kernel is active: "compiled" or "python"."""
    return BACKEND


@dataclass(frozen=True)
class SolverSettings:
    """Time step and coefficient rule (1/L² frozen at each step midpoint)."""

    dt: float
    coefficient_rule: str = "midpoint"

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise InvalidParameterError(f"dt must be finite and > 0, got {self.dt}")
        if self.coefficient_rule != "midpoint":
            raise InvalidParameterError(
                f"unknown coefficient rule {self.coefficient_rule!r}; only 'midpoint' is defined"
            )


@dataclass(frozen=True)
class GridState:
    """Transformed-field samples at the nx interior points xbar_j = j·a/(nx+1).

    The Dirichlet end values are identically zero and are not stored.
    """

    geometry: WellGeometry
    samples: np.ndarray
    t: float

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise InvalidParameterError("samples must be a non-empty 1d array")
        object.__setattr__(self, "samples", arr)

    @property
    def nx(self) -> int:
        return self.samples.size

    @property
    def spacing(self) -> float:
        return self.geometry.a / (self.nx + 1)

    @property
    def grid(self) -> np.ndarray:
        return self.spacing * np.arange(1, self.nx + 1)

    def discrete_norm(self) -> float:
        """h · Σ|ψbar_j|², the quantity Crank-Nicolson conserves."""
        return float(self.spacing * np.sum(np.abs(self.samples) ** 2))


@dataclass(frozen=True)
class LabField:
    """Lab-frame samples on the image of the transformed grid at one time."""

    xs: np.ndarray
    values: np.ndarray
    t: float


def init_from_lab(g: WellGeometry, lab_state, nx: int, t0: float = 0.0) -> GridState:
    """Sample a lab-frame state onto the transformed grid at time t0."""
    if not isinstance(nx, (int, np.integer)) or nx < 8:
        raise InvalidParameterError(f"nx must be an integer >= 8, got {nx!r}")
    g.require_valid(t0)
    h = g.a / (nx + 1)
    xbar = h * np.arange(1, nx + 1)
    xs = g.from_comoving(xbar, t0)
    values = np.exp(-gauge_exponent(g, xs, t0)) * np.asarray(lab_state(xs), dtype=np.complex128)
    return GridState(geometry=g, samples=values, t=t0)


def _alpha(g: WellGeometry, h: float, t_mid: float, dt: float) -> float:
    L = g.scale_factor(t_mid)
    c = g.constants
    return c.hbar * dt / (2.0 * c.mass * h * h * L * L)


def step(state: GridState, settings: SolverSettings) -> GridState:
    """Advance one Crank-Nicolson step of size settings.dt."""
    g = state.geometry
    dt = settings.dt
    g.require_valid(state.t + dt)
    alpha = _alpha(g, state.spacing, state.t + 0.5 * dt, dt)
    return GridState(geometry=g, samples=cn_step(state.samples, alpha), t=state.t + dt)


def _segment_alphas(g: WellGeometry, h: float, t0: float, t1: float, dt: float):
    span = t1 - t0
    n_full = int(math.floor(span / dt + 1e-12))
    if n_full * dt > span:
        n_full -= 1
    remainder = span - n_full * dt
    mids = t0 + dt * (np.arange(n_full) + 0.5)
    alphas = [_alpha(g, h, tm, dt) for tm in mids]
    if remainder > 1e-12 * max(dt, abs(span)):
        alphas.append(_alpha(g, h, t0 + n_full * dt + 0.5 * remainder, remainder))
    return np.asarray(alphas, dtype=np.float64)


def advance(state: GridState, t1: float, settings: SolverSettings) -> GridState:
    """Step an existing grid state to exactly t1 (final step may be fractional)."""
    g = state.geometry
    if t1 < state.t:
        raise InvalidParameterError(f"cannot step backwards: t1={t1} < t={state.t}")
    g.require_valid(t1)
    if t1 == state.t:
        return state
    alphas = _segment_alphas(g, state.spacing, state.t, t1, settings.dt)
    return GridState(geometry=g, samples=cn_evolve(state.samples, alphas), t=t1)


def solve(g: WellGeometry, lab_state, t0: float, t1: float, nx: int,
          settings: SolverSettings) -> GridState:
    """Initialize from a lab-frame state at t0 and advance to t1."""
    return advance(init_from_lab(g, lab_state, nx, t0), t1, settings)


def map_to_lab(state: GridState) -> LabField:
    """Multiply the gauge factor back on; no interpolation, grid image only."""
    g = state.geometry
    xs = g.from_comoving(state.grid, state.t)
    values = np.exp(gauge_exponent(g, xs, state.t)) * state.samples
    return LabField(xs=xs, values=values, t=state.t)


def _trapezoid_weights(xs: np.ndarray, x_left: float, x_right: float) -> np.ndarray:
    # Trapezoid rule over the full well [x_left, x_right] with the implicit
    # zero boundary samples; on the affinely stretched uniform grid this
    # reduces to uniform weights equal to the local spacing.
    padded = np.concatenate(([x_left], xs, [x_right]))
    return 0.5 * (padded[2:] - padded[:-2])


def fidelity(field_a: LabField, field_b: LabField) -> float:
    """|⟨A, B⟩| / (‖A‖ ‖B‖) with trapezoid weights on the shared lab grid."""
    if field_a.xs.shape != field_b.xs.shape or not np.array_equal(field_a.xs, field_b.xs):
        raise InvalidParameterError("fidelity requires identical sample grids")
    xs = field_a.xs
    n = xs.size
    if n < 2:
        raise InvalidParameterError("fidelity needs at least two samples")
    h = (xs[-1] - xs[0]) / (n - 1)
    w = _trapezoid_weights(xs, xs[0] - h, xs[-1] + h)
    overlap = np.sum(w * np.conj(field_a.values) * field_b.values)
    norm_a = math.sqrt(float(np.sum(w * np.abs(field_a.values) ** 2)))
    norm_b = math.sqrt(float(np.sum(w * np.abs(field_b.values) ** 2)))
    if norm_a == 0.0 or norm_b == 0.0:
        raise InvalidParameterError("fidelity of a zero field is undefined")
    return float(abs(overlap) / (norm_a * norm_b))
