"""Scalar Kalman filter for a single wheel speed.

Model::

    x[k+1] = a x[k] + b u[k] + process noise (variance q)
    y[k]   = c x[k] + measurement noise (variance w)

With ``b = 0`` and ``a`` close to 1 the filter is a measurement-driven
random-walk tracker. :meth:`KalmanParams.motor_model` instead builds the
prediction from the motor's first-order lag, with ``u`` the steady-state
speed of the applied PWM command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "KalmanParams",
    "KalmanState",
    "kf_predict",
    "kf_update",
    "kf_step",
    "kf_init",
    "steady_state_variance",
    "steady_state_gain",
]


@dataclass(frozen=True)
class KalmanParams:
    a: float = 1.0
    c: float = 1.0
    q: float = 1e4
    w: float = 1e8
    b: float = 0.0
    p0: float | None = None  # None -> w

    def __post_init__(self):
        if not self.q >= 0:
            raise ValueError(f"q must be >= 0, got {self.q}")
        if not self.w > 0:
            raise ValueError(f"w must be > 0, got {self.w}")
        if self.p0 is not None and not self.p0 > 0:
            raise ValueError(f"p0 must be > 0, got {self.p0}")

    @classmethod
    def random_walk(cls, decay_rate: float = -1e-4, ts: float = 0.002, **kw) -> "KalmanParams":
        """Measurement-driven tracker; ``a = 1 + decay_rate * ts`` and ``b = 0``."""
        return cls(a=1.0 + decay_rate * ts, b=0.0, **kw)

    @classmethod
    def motor_model(cls, tau_s: float = 0.15, ts: float = 0.002, **kw) -> "KalmanParams":
        """Prediction follows the motor lag: ``a = 1 - ts/tau``, ``b = 1 - a``."""
        a = 1.0 - ts / tau_s
        return cls(a=a, b=1.0 - a, **kw)

    @property
    def initial_variance(self) -> float:
        return self.w if self.p0 is None else self.p0


@dataclass(frozen=True)
class KalmanState:
    x_hat: float
    p: float


def kf_init(y0: float, params: KalmanParams) -> KalmanState:
    """Cold start from the first measurement."""
    return KalmanState(x_hat=y0 / params.c if params.c else y0, p=params.initial_variance)


def kf_predict(state: KalmanState, u: float, params: KalmanParams) -> KalmanState:
    return KalmanState(
        x_hat=params.a * state.x_hat + params.b * u,
        p=params.a * params.a * state.p + params.q,
    )


def kf_update(state: KalmanState, y: float, params: KalmanParams) -> tuple[KalmanState, float]:
    """Correct a predicted state with measurement ``y``; returns ``(state, gain)``."""
    if not params.w > 0:
        raise ValueError(f"w must be > 0, got {params.w}")
    c = params.c
    gain = state.p * c / (c * c * state.p + params.w)
    x_hat = state.x_hat + gain * (y - c * state.x_hat)
    return KalmanState(x_hat=x_hat, p=(1.0 - gain * c) * state.p), gain


def kf_step(state: KalmanState, u: float, y: float, params: KalmanParams) -> tuple[KalmanState, float]:
    """Predict then correct, once per sample."""
    return kf_update(kf_predict(state, u, params), y, params)


def _steady_prior(params: KalmanParams) -> float:
    # Positive root of c^2 m^2 + (w(1 - a^2) - q c^2) m - q w = 0, m = prior variance.
    a, c, q, w = params.a, params.c, params.q, params.w
    if c == 0:
        if abs(a) >= 1:
            return math.inf
        return q / (1.0 - a * a)
    b = w * (1.0 - a * a) - q * c * c
    disc = math.sqrt(b * b + 4.0 * c * c * q * w)
    if b > 0:
        return 2.0 * q * w / (b + disc)
    return (disc - b) / (2.0 * c * c)


def steady_state_variance(params: KalmanParams) -> float:
    """Posterior variance the filter converges to for constant parameters."""
    m = _steady_prior(params)
    if math.isinf(m):
        return m
    c = params.c
    return m * params.w / (c * c * m + params.w)


def steady_state_gain(params: KalmanParams) -> float:
    m = _steady_prior(params)
    c = params.c
    if math.isinf(m):
        return 1.0 / c if c else 0.0
    return m * c / (c * c * m + params.w)
