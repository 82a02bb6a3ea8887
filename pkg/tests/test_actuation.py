import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diffbot.actuation import (
    EncoderState,
    MotorParams,
    MotorState,
    encoder_sample,
    encoder_speed,
    motor_step,
    steady_state_speed,
)

P = MotorParams()
STEP = 2 * math.pi / 48


@pytest.mark.parametrize(
    "pwm, speed",
    [(0, 0.0), (10, 0.0), (20, 0.0), (30, 1.0), (180, 6.0), (210, 8.0), (255, 11.0), (400, 11.0)],
)
def test_static_map(pwm, speed):
    assert steady_state_speed(pwm, P) == pytest.approx(speed)
    assert steady_state_speed(-pwm, P) == pytest.approx(-speed)


def test_calibration_slope_between_one_and_six():
    # 1 rad/s per 30 PWM
    for pwm in range(30, 181, 30):
        assert steady_state_speed(pwm, P) == pytest.approx(pwm / 30)


pwms = st.floats(-400, 400, allow_nan=False)


@given(pwms, pwms)
def test_static_map_odd_and_monotone(a, b):
    assert steady_state_speed(-a, P) == -steady_state_speed(a, P)
    lo, hi = sorted((a, b))
    assert steady_state_speed(lo, P) <= steady_state_speed(hi, P)


def test_static_map_continuous():
    grid = np.linspace(-300, 300, 60001)
    speeds = np.array([steady_state_speed(p, P) for p in grid])
    # steepest segment is the breakaway ramp, 0.1 rad/s per PWM
    assert np.max(np.abs(np.diff(speeds))) <= 0.1 * (grid[1] - grid[0]) + 1e-12


def test_motor_fixed_point():
    assert motor_step(MotorState(), 0, 0.002, P) == MotorState(0.0, 0.0)


def test_motor_step_response_matches_exponential():
    params = MotorParams(tau_s=0.15)
    state, dt = MotorState(), 0.002
    for _ in range(round(0.45 / dt)):
        state = motor_step(state, 150, dt, params)
    assert state.omega_radps == pytest.approx(5.0, rel=0.05)
    assert state.omega_radps == pytest.approx(5.0 * (1 - math.exp(-0.45 / 0.15)), rel=2e-3)


def test_motor_reversal_converges_to_negated_speed():
    state = MotorState(omega_radps=5.0)
    for _ in range(1000):
        state = motor_step(state, -150, 0.002, P)
    assert state.omega_radps == pytest.approx(-5.0, rel=1e-3)


@given(st.floats(-20, 20), pwms, st.floats(1e-4, 0.149))
def test_motor_step_contracts_toward_target(omega, pwm, dt):
    target = steady_state_speed(pwm, P)
    nxt = motor_step(MotorState(omega, 0.0), pwm, dt, P)
    if omega != target:
        assert abs(nxt.omega_radps - target) < abs(omega - target)


def test_motor_step_rejects_bad_dt():
    with pytest.raises(ValueError):
        motor_step(MotorState(), 100, 0.0, P)


def test_motor_params_validation():
    with pytest.raises(ValueError, match="tau_s"):
        MotorParams(tau_s=0)
    with pytest.raises(ValueError, match="deadband"):
        MotorParams(deadband_pwm=300)


@pytest.mark.parametrize(
    "theta, counts",
    [
        (2 * math.pi, 48),
        (math.radians(7.49), 0),
        (math.radians(7.51), 1),
        (-2 * math.pi, -48),
        (0.0, 0),
    ],
)
def test_encoder_counts(theta, counts):
    enc = encoder_sample(EncoderState(48), theta, 0.0)
    assert enc.counts == counts
    assert enc.history[-1] == (0.0, counts)


@given(st.floats(-1e4, 1e4, allow_nan=False))
def test_encoder_angle_error_below_one_count(theta):
    enc = encoder_sample(EncoderState(48), theta, 0.0)
    err = theta - enc.counts * STEP
    assert 0 <= err < STEP * (1 + 1e-9)


def _constant_speed_estimates(omega, window, dt=0.002, seconds=2.0, phase=0.0):
    enc = EncoderState(48, depth=int(window / dt) + 3)
    out = []
    for k in range(round(seconds / dt)):
        t = k * dt
        encoder_sample(enc, phase + omega * t, t)
        s = encoder_speed(enc, window)
        if not s.cold:
            out.append(s.radps)
    return np.array(out)


@pytest.mark.parametrize("window", [0.05, 0.5])
def test_windowed_speed_within_one_count_bound(window):
    est = _constant_speed_estimates(5.0, window, seconds=3.0)
    bound = STEP / window
    assert len(est) > 0
    assert np.all(np.abs(est - 5.0) <= bound + 1e-9)


def test_window_bounds_from_examples():
    assert STEP / 0.05 == pytest.approx(2.618, abs=1e-3)
    est = _constant_speed_estimates(5.0, 0.5, seconds=3.0)
    assert np.all(np.abs(est - 5.0) <= 0.27)


def test_zero_motion_reads_zero():
    assert np.all(_constant_speed_estimates(0.0, 0.05, phase=0.3) == 0.0)


def test_cold_start_flag():
    enc = EncoderState(48)
    assert encoder_speed(enc, 0.05) == (0.0, True)
    encoder_sample(enc, 1.0, 0.0)
    encoder_sample(enc, 2.0, 0.002)
    assert encoder_speed(enc, 0.05).cold
    with pytest.raises(ValueError):
        encoder_speed(enc, 0.0)


def test_doubling_window_halves_worst_error():
    rng = np.random.default_rng(3)
    worst = {}
    for window in (0.05, 0.1):
        errs = []
        for omega, phase in zip(rng.uniform(2, 7, 40), rng.uniform(0, STEP, 40)):
            errs.append(np.max(np.abs(_constant_speed_estimates(omega, window, seconds=1.0, phase=phase) - omega)))
        worst[window] = max(errs)
        assert worst[window] <= STEP / window
    assert worst[0.1] / worst[0.05] == pytest.approx(0.5, rel=0.1)
