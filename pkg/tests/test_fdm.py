import math

import numpy as np
import pytest

from moving_well import (
    HorizonExceededError,
    InvalidParameterError,
    MovingMode,
    SolverSettings,
    eval_mode_grid,
    fidelity,
    init_from_lab,
    make_geometry,
    map_to_lab,
    mode_energy,
    solve,
    step,
    time_phase_integral,
)
from moving_well import fdm
from moving_well.verify import convergence_order


def mode_initial(g, n):
    mode = MovingMode(g, n)
    return lambda xs: eval_mode_grid(mode, xs, 0.0)


def test_settings_validation():
    with pytest.raises(InvalidParameterError):
        SolverSettings(dt=0.0)
    with pytest.raises(InvalidParameterError):
        SolverSettings(dt=1e-4, coefficient_rule="forward")


def test_init_static_mode_is_real_sine(static_well):
    state = init_from_lab(static_well, mode_initial(static_well, 1), 63, 0.0)
    expected = math.sqrt(2.0) * np.sin(math.pi * state.grid)
    np.testing.assert_allclose(state.samples, expected, atol=1e-14)
    assert np.max(np.abs(state.samples.imag)) <= 1e-14


def test_init_moving_mode_is_standing_wave(expanding_well):
    # the transformed field of an exact mode is a sine times a global phase
    t0 = 0.8
    n = 2
    mode = MovingMode(expanding_well, n)
    state = init_from_lab(expanding_well, lambda xs: eval_mode_grid(mode, xs, t0), 127, t0)
    tau = time_phase_integral(expanding_well, t0)
    expected = (math.sqrt(2.0) * np.sin(n * math.pi * state.grid)
                * np.exp(-1j * mode.energy * tau))
    np.testing.assert_allclose(state.samples, expected, atol=1e-12)


def test_init_zero_function(expanding_well):
    state = init_from_lab(expanding_well, lambda xs: np.zeros_like(xs, dtype=complex), 32, 0.0)
    assert np.all(state.samples == 0.0)


def test_init_rejects_small_grid(expanding_well):
    with pytest.raises(InvalidParameterError):
        init_from_lab(expanding_well, mode_initial(expanding_well, 1), 4, 0.0)


def test_step_conserves_discrete_norm(expanding_well):
    state = init_from_lab(expanding_well, mode_initial(expanding_well, 1), 255, 0.0)
    settings = SolverSettings(dt=1e-3)
    before = state.discrete_norm()
    after = step(state, settings).discrete_norm()
    assert abs(after - before) / before <= 1e-12


def test_step_zero_state(expanding_well):
    state = init_from_lab(expanding_well, lambda xs: np.zeros_like(xs, dtype=complex), 32, 0.0)
    assert np.all(step(state, SolverSettings(dt=1e-3)).samples == 0.0)


def test_step_beyond_horizon_raises():
    g = make_geometry(1.0, 0.5, -0.5)  # closes at t* = 1
    state = init_from_lab(g, mode_initial(g, 1), 32, 0.9)
    with pytest.raises(HorizonExceededError):
        step(state, SolverSettings(dt=0.2))


def test_static_eigenstate_returns_after_a_period(static_well):
    # after T = 2*pi/E_1 the discrete state equals itself up to a global phase
    settings = SolverSettings(dt=1e-4)
    period = 2.0 * math.pi / mode_energy(static_well, 1)
    initial = init_from_lab(static_well, mode_initial(static_well, 1), 511, 0.0)
    final = fdm.advance(initial, period, settings)
    overlap = fidelity(map_to_lab(initial), map_to_lab(final))
    assert overlap >= 1.0 - 1e-6


def test_solve_composes(expanding_well):
    settings = SolverSettings(dt=1e-3)
    direct = solve(expanding_well, mode_initial(expanding_well, 1), 0.0, 0.4, 64, settings)
    first = solve(expanding_well, mode_initial(expanding_well, 1), 0.0, 0.2, 64, settings)
    second = fdm.advance(first, 0.4, settings)
    np.testing.assert_allclose(second.samples, direct.samples, atol=1e-12)
    assert second.t == direct.t == 0.4


def test_solve_lands_exactly_with_fractional_step(expanding_well):
    settings = SolverSettings(dt=3e-3)  # does not divide 0.01
    state = solve(expanding_well, mode_initial(expanding_well, 1), 0.0, 0.01, 64, settings)
    assert state.t == 0.01


def test_map_to_lab_static_is_identity(static_well):
    state = init_from_lab(static_well, mode_initial(static_well, 1), 63, 0.0)
    lab = map_to_lab(state)
    np.testing.assert_allclose(lab.xs, state.grid, atol=1e-15)
    np.testing.assert_allclose(lab.values, state.samples, atol=1e-15)


def test_map_to_lab_modulus_scaling(expanding_well):
    from moving_well import gauge_phase

    t0 = 1.0
    state = init_from_lab(expanding_well, mode_initial(expanding_well, 1), 63, t0)
    lab = map_to_lab(state)
    factor = math.exp(gauge_phase(expanding_well, t0).log_amplitude)
    np.testing.assert_allclose(np.abs(lab.values), factor * np.abs(state.samples),
                               atol=1e-13)


def test_frame_round_trip(expanding_well):
    t0 = 0.7
    mode = MovingMode(expanding_well, 3)
    initial = lambda xs: eval_mode_grid(mode, xs, t0)
    lab = map_to_lab(init_from_lab(expanding_well, initial, 127, t0))
    np.testing.assert_allclose(lab.values, initial(lab.xs), atol=1e-13)


def test_expanding_well_matches_analytic_mode(expanding_well):
    settings = SolverSettings(dt=1e-4)
    final = solve(expanding_well, mode_initial(expanding_well, 1), 0.0, 1.0, 1023, settings)
    lab = map_to_lab(final)
    exact = eval_mode_grid(MovingMode(expanding_well, 1), lab.xs, 1.0)
    assert np.max(np.abs(lab.values - exact)) <= 1e-5


def test_second_order_convergence(expanding_well):
    # halving both h and dt should roughly quarter the max-norm error
    initial = mode_initial(expanding_well, 2)
    errors = []
    spacings = []
    for nx, dt in ((63, 8e-4), (127, 4e-4), (255, 2e-4)):
        final = solve(expanding_well, initial, 0.0, 0.5, nx, SolverSettings(dt=dt))
        lab = map_to_lab(final)
        exact = eval_mode_grid(MovingMode(expanding_well, 2), lab.xs, 0.5)
        errors.append(float(np.max(np.abs(lab.values - exact))))
        spacings.append(expanding_well.a / (nx + 1))
    estimate = convergence_order(list(zip(spacings, errors)))
    assert 1.8 <= estimate.fitted_order <= 2.2


def test_fidelity_properties(expanding_well):
    state = init_from_lab(expanding_well, mode_initial(expanding_well, 1), 255, 0.0)
    lab = map_to_lab(state)
    assert fidelity(lab, lab) == pytest.approx(1.0, abs=1e-14)

    phased = fdm.LabField(xs=lab.xs, values=lab.values * np.exp(0.73j), t=lab.t)
    assert fidelity(lab, phased) == pytest.approx(1.0, abs=1e-14)

    other = map_to_lab(init_from_lab(expanding_well, mode_initial(expanding_well, 2), 255, 0.0))
    assert fidelity(lab, other) <= 1e-6

    mismatched = fdm.LabField(xs=lab.xs[:-1], values=lab.values[:-1], t=lab.t)
    with pytest.raises(InvalidParameterError):
        fidelity(lab, mismatched)


def test_norm_drift_over_long_run(expanding_well):
    settings = SolverSettings(dt=5e-4)  # 2000 steps
    initial = init_from_lab(expanding_well, mode_initial(expanding_well, 1), 255, 0.0)
    final = fdm.advance(initial, 1.0, settings)
    drift = abs(final.discrete_norm() - initial.discrete_norm())
    assert drift <= 1e-10
