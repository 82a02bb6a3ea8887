"""Wheel speed regulation: PI controller, first-order low-pass, ZN tuning."""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PiGains",
    "PiState",
    "LpfState",
    "ReactionCurve",
    "REACTION_CURVE_GAINS",
    "RETUNED_GAINS",
    "pi_step",
    "lpf_step",
    "zn_tune_pi",
]


@dataclass(frozen=True)
class PiGains:
    """PI gains; ``kd`` is carried for completeness and always 0."""

    kp: float = 0.375
    ki: float = 1.0
    kd: float = 0.0

    def __post_init__(self):
        if not self.kp >= 0:
            raise ValueError(f"kp must be >= 0, got {self.kp}")
        if not self.ki >= 0:
            raise ValueError(f"ki must be >= 0, got {self.ki}")
        if self.kd != 0:
            raise ValueError("kd is fixed at 0 (no derivative path)")


# Gains from the reaction-curve tuning, and the later retune used on the robot.
REACTION_CURVE_GAINS = PiGains(kp=0.375, ki=1.0)
RETUNED_GAINS = PiGains(kp=0.479, ki=1.0)


@dataclass(frozen=True)
class PiState:
    integral: float = 0.0
    last_output: float = 0.0


@dataclass(frozen=True)
class LpfState:
    y: float = 0.0
    cutoff_hz: float = 1.0

    def __post_init__(self):
        if not self.cutoff_hz > 0:
            raise ValueError(f"cutoff_hz must be > 0, got {self.cutoff_hz}")


@dataclass(frozen=True)
class ReactionCurve:
    """Open-loop step response fit: dead time L, time constant T, gain K."""

    dead_time_L_s: float
    time_constant_T_s: float
    process_gain_K: float

    def __post_init__(self):
        for name in ("dead_time_L_s", "time_constant_T_s", "process_gain_K"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


def pi_step(
    state: PiState,
    reference: float,
    measurement: float,
    gains: PiGains,
    dt: float,
    max_pwm: float,
) -> tuple[PiState, float]:
    """One PI update with output clamping and conditional-integration anti-windup.

    The integral only accumulates when doing so does not push an already
    saturated output further into saturation.

    Args:
        state: controller memory.
        reference: desired speed (rad/s).
        measurement: fed-back speed (rad/s).
        gains: PI gains.
        dt: sample period (s).
        max_pwm: symmetric output limit.

    Returns:
        ``(new_state, output)`` with ``|output| <= max_pwm``.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    error = reference - measurement
    integral = state.integral + error * dt
    u_raw = gains.kp * error + gains.ki * integral
    if abs(u_raw) > max_pwm and u_raw * error > 0:
        integral = state.integral
        u_raw = gains.kp * error + gains.ki * integral
    output = min(max(u_raw, -max_pwm), max_pwm)
    return PiState(integral=integral, last_output=output), output


def lpf_step(state: LpfState, x: float, dt: float) -> LpfState:
    """Discrete RC low-pass: ``y += alpha * (x - y)``."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    alpha = dt / (dt + 1.0 / (2.0 * math.pi * state.cutoff_hz))
    return LpfState(y=state.y + alpha * (x - state.y), cutoff_hz=state.cutoff_hz)


def zn_tune_pi(curve: ReactionCurve) -> PiGains:
    """Ziegler-Nichols open-loop (reaction curve) PI rule.

    ``kp = 0.9 T / (K L)``, ``Ti = L / 0.3``, ``ki = kp / Ti``.
    """
    kp = 0.9 * curve.time_constant_T_s / (curve.process_gain_K * curve.dead_time_L_s)
    ti = curve.dead_time_L_s / 0.3
    return PiGains(kp=kp, ki=kp / ti)
