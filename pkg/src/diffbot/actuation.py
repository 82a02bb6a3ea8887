"""Plant models: PWM-driven DC micromotor and quantized incremental encoder.

The motor is a static PWM -> speed map followed by a first-order lag. The map
is odd and piecewise linear:

* ``|pwm| <= deadband_pwm``: no motion (static friction).
* ``deadband_pwm .. breakaway_pwm``: ramps from 0 up to
  ``linear_gain * breakaway_pwm``; 30 PWM is needed to get 1 rad/s.
* above breakaway: ``linear_gain * pwm`` (1 rad/s per 30 PWM) up to the knee.
* past the knee: slope ``upper_gain`` (2 rad/s per 30 PWM).

The encoder is modeled at its net resolution (48 counts/rev, 7.5 deg/count).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

TAU = 2.0 * math.pi

__all__ = [
    "MotorParams",
    "MotorState",
    "EncoderState",
    "SpeedSample",
    "steady_state_speed",
    "motor_step",
    "encoder_sample",
    "encoder_speed",
]


@dataclass(frozen=True)
class MotorParams:
    deadband_pwm: float = 20.0
    breakaway_pwm: float = 30.0
    linear_gain: float = 1.0 / 30.0
    linear_knee_radps: float = 6.0
    upper_gain: float = 2.0 / 30.0
    max_pwm: float = 255.0
    tau_s: float = 0.15

    def __post_init__(self):
        if not 0 <= self.deadband_pwm < self.max_pwm:
            raise ValueError("deadband_pwm must satisfy 0 <= deadband_pwm < max_pwm")
        if not self.deadband_pwm < self.breakaway_pwm <= self.knee_pwm:
            raise ValueError("breakaway_pwm must lie in (deadband_pwm, knee pwm]")
        for name in ("linear_gain", "linear_knee_radps", "upper_gain", "tau_s"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")

    @property
    def knee_pwm(self) -> float:
        return self.linear_knee_radps / self.linear_gain


@dataclass(frozen=True)
class MotorState:
    omega_radps: float = 0.0
    theta_rad: float = 0.0


def steady_state_speed(pwm: float, params: MotorParams) -> float:
    """Static wheel speed (rad/s) reached under a constant PWM command."""
    mag = min(abs(pwm), params.max_pwm)
    if mag <= params.deadband_pwm:
        return 0.0
    if mag <= params.breakaway_pwm:
        frac = (mag - params.deadband_pwm) / (params.breakaway_pwm - params.deadband_pwm)
        speed = frac * params.linear_gain * params.breakaway_pwm
    elif mag <= params.knee_pwm:
        speed = params.linear_gain * mag
    else:
        speed = params.linear_knee_radps + params.upper_gain * (mag - params.knee_pwm)
    return speed if pwm > 0 else -speed


def motor_step(state: MotorState, pwm: float, dt: float, params: MotorParams) -> MotorState:
    """Advance the first-order motor lag by ``dt`` under a held PWM command.

    The shaft angle is advanced with the updated speed.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    target = steady_state_speed(pwm, params)
    omega = state.omega_radps + (dt / params.tau_s) * (target - state.omega_radps)
    return MotorState(omega_radps=omega, theta_rad=state.theta_rad + omega * dt)


class SpeedSample(NamedTuple):
    radps: float
    cold: bool


class EncoderState:
    """Tick counter with a bounded history of ``(time, counts)`` samples.

    Instances are mutable and owned by a single wheel; ``encoder_sample``
    updates them in place.
    """

    def __init__(self, cpr: int = 48, depth: int = 64):
        if cpr <= 0:
            raise ValueError(f"cpr must be > 0, got {cpr}")
        if depth < 2:
            raise ValueError(f"depth must be >= 2, got {depth}")
        self.cpr = int(cpr)
        self.counts = 0
        self.history: deque[tuple[float, int]] = deque(maxlen=depth)

    @property
    def rad_per_count(self) -> float:
        return TAU / self.cpr

    def __repr__(self):
        return f"EncoderState(cpr={self.cpr}, counts={self.counts}, samples={len(self.history)})"


def encoder_sample(enc: EncoderState, theta_rad: float, t: float) -> EncoderState:
    """Quantize the shaft angle to whole counts and record it at time ``t``."""
    enc.counts = math.floor(theta_rad * enc.cpr / TAU)
    enc.history.append((t, enc.counts))
    return enc


def encoder_speed(enc: EncoderState, window_s: float) -> SpeedSample:
    """Speed from the count difference across the last ``window_s`` seconds.

    Returns ``SpeedSample(0.0, cold=True)`` until the history spans the window.
    """
    if not window_s > 0:
        raise ValueError(f"window_s must be > 0, got {window_s}")
    if not enc.history:
        return SpeedSample(0.0, True)
    t_now, c_now = enc.history[-1]
    cutoff = t_now - window_s * (1.0 - 1e-9)
    start = None
    for t, c in enc.history:
        if t > cutoff:
            break
        start = (t, c)
    if start is None:
        return SpeedSample(0.0, True)
    t0, c0 = start
    return SpeedSample((c_now - c0) * enc.rad_per_count / (t_now - t0), False)
