"""Exact propagation of arbitrary states over the moving-mode basis.

Because every basis mode solves the time-dependent equation exactly and the
equation is linear, the expansion coefficients of a state are constants of
the motion: project once at t=0, then evaluate the superposition at any
valid time. The modes at equal times share one gauge factor, so their Gram
matrix is the identity and the projection is an ordinary sine transform
against the gauge-twisted initial function.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import modes as modes_mod
from .errors import InvalidParameterError
from .geometry import WellGeometry
from .quadrature import DEFAULT_PANEL_BUDGET, integrate


@dataclass(frozen=True)
class SpectralState:
    """Complex coefficients over modes n = 1..n_max; evolution never mutates them."""

    geometry: WellGeometry
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=np.complex128)
        if coeffs.ndim != 1 or coeffs.size < 1:
            raise InvalidParameterError("coefficients must be a non-empty 1d sequence")
        if not np.all(np.isfinite(coeffs.view(np.float64))):
            raise InvalidParameterError("coefficients must be finite")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n_max(self) -> int:
        return self.coefficients.size


@dataclass(frozen=True)
class ProjectionReport:
    """Projection output: coefficients plus captured-norm accounting."""

    coefficients: np.ndarray
    captured_norm: float
    truncation_error: float
    quadrature_estimate: float

    def state(self, g: WellGeometry) -> SpectralState:
        return SpectralState(g, self.coefficients)


@dataclass(frozen=True)
class Observables:
    norm_x: float
    mean_x: float
    xs: np.ndarray
    density: np.ndarray


def project(g: WellGeometry, initial, n_max: int, quad_tol: float = 1e-10,
            budget: int = DEFAULT_PANEL_BUDGET) -> ProjectionReport:
    """Project a lab-frame function on [0, a] onto modes 1..n_max at t=0.

    ``initial`` must accept an ndarray of positions and return amplitudes.
    Each coefficient is an adaptive Gauss-Legendre integral to ``quad_tol``.
    """
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise InvalidParameterError(f"n_max must be an integer >= 1, got {n_max!r}")
    if not quad_tol > 0:
        raise InvalidParameterError(f"quad_tol must be > 0, got {quad_tol}")

    probe = np.asarray(initial(np.linspace(0.0, g.a, 33)), dtype=np.complex128)
    if not np.all(np.isfinite(probe.view(np.float64))):
        raise InvalidParameterError("initial state is not finite on [0, a]")

    coeffs = np.empty(n_max, dtype=np.complex128)
    quad_err = 0.0
    for n in range(1, n_max + 1):
        mode = modes_mod.MovingMode(g, n)

        def integrand(xs, _mode=mode):
            return np.conj(modes_mod.eval_mode_grid(_mode, xs, 0.0)) * initial(xs)

        result = integrate(integrand, 0.0, g.a, tol=quad_tol, budget=budget)
        coeffs[n - 1] = result.value
        quad_err += result.error

    captured = float(np.sum(np.abs(coeffs) ** 2))
    return ProjectionReport(
        coefficients=coeffs,
        captured_norm=captured,
        truncation_error=1.0 - captured,
        quadrature_estimate=quad_err,
    )


def eval_state(state: SpectralState, xs, t: float) -> np.ndarray:
    """ψ(x,t) = Σ c_n ψ_n(x,t), vectorized over positions.

    The per-mode factors split into one shared gauge factor and a sine
    series with energy phases, so the sum is a single matrix product.
    """
    g = state.geometry
    x_left, x_right = g.wall_positions(t)
    arr = np.atleast_1d(np.asarray(xs, dtype=float))

    tau = modes_mod.time_phase_integral(g, t)
    exponent = modes_mod.gauge_exponent(g, arr, t)
    xbar = g.to_comoving(arr, t)

    ns = np.arange(1, state.n_max + 1)
    energies = (ns * math.pi / g.a) ** 2 * g.constants.hbar**2 / (2.0 * g.constants.mass)
    weights = state.coefficients * np.exp(-1j * energies * tau / g.constants.hbar)
    series = np.sin(np.outer(xbar, ns * math.pi / g.a)) @ weights

    values = math.sqrt(2.0 / g.a) * np.exp(exponent) * series
    inside = (arr > x_left) & (arr < x_right)
    values = np.where(inside, values, 0.0 + 0.0j)
    if np.isscalar(xs) or np.asarray(xs).ndim == 0:
        return complex(values[0])
    return values


def norm(state: SpectralState) -> float:
    """Σ|c_n|²; constant in time by construction."""
    return float(np.sum(np.abs(state.coefficients) ** 2))


def observables(state: SpectralState, t: float, grid_size: int = 256,
                quad_tol: float = 1e-10) -> Observables:
    """Position-space norm, mean position, and a sampled density profile."""
    if not isinstance(grid_size, (int, np.integer)) or grid_size < 16:
        raise InvalidParameterError(f"grid_size must be an integer >= 16, got {grid_size!r}")
    g = state.geometry
    x_left, x_right = g.wall_positions(t)

    def density_f(xs):
        return np.abs(eval_state(state, xs, t)) ** 2

    norm_x = integrate(density_f, x_left, x_right, tol=quad_tol).value.real
    first_moment = integrate(lambda xs: xs * density_f(xs), x_left, x_right,
                             tol=quad_tol).value.real

    xs = np.linspace(x_left, x_right, grid_size)
    return Observables(
        norm_x=norm_x,
        mean_x=first_moment / norm_x,
        xs=xs,
        density=density_f(xs),
    )


def mode_state(g: WellGeometry, n: int) -> SpectralState:
    """State with unit weight on mode n (exact, no quadrature)."""
    coeffs = np.zeros(n, dtype=np.complex128)
    coeffs[n - 1] = 1.0
    return SpectralState(g, coeffs)


def initial_box_mode(g: WellGeometry, n: int):
    """Static-box eigenfunction sqrt(2/a) sin(nπx/a) as an initial state.

    Note this is *not* mode n of a moving well (the gauge chirp is missing),
    so on a moving geometry it spreads over several coefficients.
    """
    k = modes_mod.MovingMode(g, n).k
    amp = math.sqrt(2.0 / g.a)
    return lambda xs: amp * np.sin(k * np.asarray(xs, dtype=float)) + 0.0j


def initial_gaussian(g: WellGeometry, center: float, width: float, momentum: float):
    """Normalized Gaussian packet exp(-(x-c)²/4w² + i p x/ħ), clipped to [0, a]."""
    if not width > 0:
        raise InvalidParameterError(f"gaussian width must be > 0, got {width}")
    hbar = g.constants.hbar

    def raw(xs):
        xs = np.asarray(xs, dtype=float)
        return np.exp(-((xs - center) ** 2) / (4.0 * width**2) + 1j * momentum * xs / hbar)

    n2 = integrate(lambda xs: np.abs(raw(xs)) ** 2, 0.0, g.a, tol=1e-13).value.real
    scale = 1.0 / math.sqrt(n2)
    return lambda xs: scale * raw(xs)


def initial_from_csv(path):
    """Sampled initial state from CSV columns x, Re ψ [, Im ψ]; header required.

    Linear interpolation between samples; zero outside the sampled range.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise InvalidParameterError(f"empty initial-state file: {path}")
    header = rows[0]
    if len(header) not in (2, 3):
        raise InvalidParameterError("initial-state CSV must have 2 or 3 columns")
    try:
        float(header[0])
    except ValueError:
        pass
    else:
        raise InvalidParameterError("initial-state CSV must start with a header row")

    data = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    if data.shape[0] < 2:
        raise InvalidParameterError("initial-state CSV needs at least two samples")
    order = np.argsort(data[:, 0])
    xs = data[order, 0]
    re = data[order, 1]
    im = data[order, 2] if data.shape[1] == 3 else np.zeros_like(re)

    def f(points):
        points = np.asarray(points, dtype=float)
        return (np.interp(points, xs, re, left=0.0, right=0.0)
                + 1j * np.interp(points, xs, im, left=0.0, right=0.0))

    return f
