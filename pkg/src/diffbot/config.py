"""Flat ``key = value`` configuration files.

Blank lines and ``#`` comments are ignored. Nested parameters use dotted
keys. Any key left out keeps its default::

    ts_s = 0.002
    estimator_mode = kf          # raw | lpf | kf
    drive_gain = 660             # PWM counts per unit of PI output
    lpf_cutoff_hz = 1.0
    speed_window_s = 0.05
    meas_noise_std = 0.3         # rad/s, Gaussian, added to encoder speed
    rng_seed = 0
    arena_m = 1.0                # side of the square arena centered on the origin
    left_tau_scale = 1.0         # >1 makes the left motor sluggish
    max_duration_s = 120
    encoder.cpr = 48
    geometry.wheel_radius_m = 0.021
    geometry.axle_length_m = 0.09
    motor.deadband_pwm = 20      # also breakaway_pwm, linear_gain,
    motor.tau_s = 0.15           # linear_knee_radps, upper_gain, max_pwm
    gains.preset = reaction-curve   # or retuned (kp = 0.479)
    gains.kp = 0.375
    gains.ki = 1
    kalman.preset = motor        # motor | random-walk
    kalman.decay_rate = -0.0001  # random-walk only: a = 1 + decay_rate * ts
    kalman.q = 10000             # also a, b, c, w, p0
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from .actuation import MotorParams
from .control import REACTION_CURVE_GAINS, RETUNED_GAINS, PiGains
from .estimation import KalmanParams
from .kinematics import RobotGeometry
from .simulation import KF_DEFAULT_Q, KF_DEFAULT_W, SimConfig

__all__ = ["ConfigError", "KEYS", "parse_config", "load_config", "build_config"]


class ConfigError(ValueError):
    pass


_TOP = {
    "ts_s": float,
    "estimator_mode": str,
    "drive_gain": float,
    "lpf_cutoff_hz": float,
    "speed_window_s": float,
    "meas_noise_std": float,
    "rng_seed": int,
    "arena_m": float,
    "left_tau_scale": float,
    "max_duration_s": float,
}
_SECTIONS = {
    "geometry": {f.name: float for f in dataclasses.fields(RobotGeometry)},
    "motor": {f.name: float for f in dataclasses.fields(MotorParams)},
    "gains": {"preset": str, "kp": float, "ki": float},
    "kalman": {"preset": str, "decay_rate": float, "a": float, "b": float, "c": float, "q": float, "w": float, "p0": float},
    "encoder": {"cpr": int},
}

KEYS: dict[str, type] = dict(_TOP)
for _sec, _fields in _SECTIONS.items():
    KEYS.update({f"{_sec}.{k}": t for k, t in _fields.items()})

_GAIN_PRESETS = {"reaction-curve": REACTION_CURVE_GAINS, "retuned": RETUNED_GAINS}
_KALMAN_PRESETS = ("motor", "random-walk")


def _convert(key: str, raw: str):
    kind = KEYS[key]
    if kind is str:
        return raw
    try:
        if kind is int:
            return int(raw, 0)
        return float(raw)
    except ValueError:
        raise ValueError(f"{key}: expected {kind.__name__}, got {raw!r}") from None


def parse_config(text: str, source: str = "<config>") -> dict[str, object]:
    """Parse config text into a ``{dotted_key: value}`` dict."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        where = f"{source}:{lineno}"
        if not sep or not key or not raw:
            raise ConfigError(f"{where}: expected 'key = value', got {line.strip()!r}")
        if key not in KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{where}: duplicate key {key!r}")
        try:
            values[key] = _convert(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    return values


def _section(values: dict, name: str) -> dict:
    prefix = name + "."
    return {k[len(prefix):]: v for k, v in values.items() if k.startswith(prefix)}


def build_config(values: dict[str, object]) -> SimConfig:
    """Turn parsed key/values into a validated :class:`SimConfig`."""
    top = {k: v for k, v in values.items() if k in _TOP}
    ts = top.get("ts_s", SimConfig.ts_s)

    try:
        geometry = RobotGeometry(**_section(values, "geometry"))
    except ValueError as exc:
        raise ConfigError(f"geometry.{exc}") from None
    try:
        motor = MotorParams(**_section(values, "motor"))
    except ValueError as exc:
        raise ConfigError(f"motor.{exc}") from None

    g = _section(values, "gains")
    preset = g.pop("preset", "reaction-curve")
    if preset not in _GAIN_PRESETS:
        raise ConfigError(f"gains.preset must be one of {sorted(_GAIN_PRESETS)}, got {preset!r}")
    try:
        gains = dataclasses.replace(_GAIN_PRESETS[preset], **g)
    except ValueError as exc:
        raise ConfigError(f"gains.{exc}") from None

    kv = _section(values, "kalman")
    kpreset = kv.pop("preset", "motor")
    decay = kv.pop("decay_rate", None)
    if kpreset not in _KALMAN_PRESETS:
        raise ConfigError(f"kalman.preset must be one of {list(_KALMAN_PRESETS)}, got {kpreset!r}")
    if decay is not None and kpreset != "random-walk":
        raise ConfigError("kalman.decay_rate only applies to kalman.preset = random-walk")
    if not (isinstance(ts, float) and ts > 0):
        raise ConfigError(f"ts_s out of range: {ts!r}")
    try:
        noise = {"q": kv.pop("q", KF_DEFAULT_Q), "w": kv.pop("w", KF_DEFAULT_W)}
        if kpreset == "motor":
            base = KalmanParams.motor_model(tau_s=motor.tau_s, ts=ts, **noise)
        else:
            base = KalmanParams.random_walk(-1e-4 if decay is None else decay, ts=ts, **noise)
        kalman = dataclasses.replace(base, **kv)
    except ValueError as exc:
        raise ConfigError(f"kalman.{exc}") from None

    enc = _section(values, "encoder")
    try:
        return SimConfig(geometry=geometry, motor=motor, gains=gains, kalman=kalman, cpr=enc.get("cpr", 48), **top)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path | None) -> SimConfig:
    """Read a config file; ``None`` gives the default preset."""
    if path is None:
        return SimConfig()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {str(path)!r}: {exc.strerror or exc}") from None
    return build_config(parse_config(text, source=str(path)))
