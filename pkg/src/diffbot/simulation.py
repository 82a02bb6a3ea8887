"""Closed-loop scenario engine.

Each control period, per wheel::

    encoder -> speed (+ noise) -> estimator (raw | lpf | kf) -> PI -> PWM -> motor

The reference wheel speeds come from inverse kinematics of the active plan
segment. The true pose is integrated from the true wheel speeds, the odometry
pose from the estimator outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .actuation import EncoderState, MotorParams, MotorState, encoder_sample, encoder_speed, motor_step, steady_state_speed
from .control import LpfState, PiGains, PiState, lpf_step, pi_step
from .estimation import KalmanParams, kf_init, kf_step
from .kinematics import (
    BodyTwist,
    Pose,
    RobotGeometry,
    WheelSpeeds,
    forward_kinematics,
    integrate_pose,
    inverse_kinematics,
)

__all__ = [
    "ESTIMATOR_MODES",
    "Segment",
    "TrajectoryPlan",
    "SimConfig",
    "SimTrace",
    "TrackingMetrics",
    "make_plan",
    "paper_replay_plan",
    "simulate_run",
    "compute_metrics",
    "settling_time",
    "reference_path",
    "inside_arena",
]

ESTIMATOR_MODES = ("raw", "lpf", "kf")
SETTLING_BAND = 0.05
SETTLING_HOLD_S = 0.2


@dataclass(frozen=True)
class Segment:
    v_mps: float
    w_radps: float
    duration_s: float

    def __post_init__(self):
        if not self.duration_s > 0:
            raise ValueError(f"segment duration must be > 0, got {self.duration_s}")
        if not (math.isfinite(self.v_mps) and math.isfinite(self.w_radps)):
            raise ValueError("segment speeds must be finite")

    @property
    def twist(self) -> BodyTwist:
        return BodyTwist(self.v_mps, self.w_radps)


@dataclass(frozen=True)
class TrajectoryPlan:
    """Piecewise-constant twist schedule."""

    segments: tuple[Segment, ...]
    closed: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("plan has no segments")

    @property
    def duration_s(self) -> float:
        return math.fsum(s.duration_s for s in self.segments)

    @property
    def total_turn_rad(self) -> float:
        return math.fsum(s.w_radps * s.duration_s for s in self.segments)

    def wheel_references(self, geom: RobotGeometry) -> list[WheelSpeeds]:
        return [inverse_kinematics(s.twist, geom) for s in self.segments]


def make_plan(kind: str, **params) -> TrajectoryPlan:
    """Build a named plan.

    Kinds and parameters (defaults in brackets):

    * ``line``: ``v`` [0.1 m/s], ``duration`` [5 s]
    * ``turn_in_place``: ``w`` [2 rad/s], ``duration`` [pi/w, half a turn]
    * ``circle``: ``v`` [0.1], ``w`` [1 rad/s]; one full lap
    * ``hexagon``: ``edge`` [0.25 m], ``v`` [0.1], ``w`` [2 rad/s]; a regular
      hexagon driven counter-clockwise, six straight edges each followed by a
      60 degree turn in place
    """
    kind = kind.replace("-", "_")
    for name, value in params.items():
        if not (isinstance(value, (int, float)) and value > 0):
            raise ValueError(f"{kind}: parameter {name} must be positive, got {value!r}")
    if kind == "line":
        v, d = params.get("v", 0.1), params.get("duration", 5.0)
        return TrajectoryPlan((Segment(v, 0.0, d),), name="line")
    if kind in ("turn_in_place", "turn"):
        w = params.get("w", 2.0)
        d = params.get("duration", math.pi / w)
        return TrajectoryPlan((Segment(0.0, w, d),), name="turn")
    if kind == "circle":
        v, w = params.get("v", 0.1), params.get("w", 1.0)
        return TrajectoryPlan((Segment(v, w, 2.0 * math.pi / w),), closed=True, name="circle")
    if kind == "hexagon":
        edge, v, w = params.get("edge", 0.25), params.get("v", 0.1), params.get("w", 2.0)
        segs = []
        for _ in range(6):
            segs.append(Segment(v, 0.0, edge / v))
            segs.append(Segment(0.0, w, (math.pi / 3.0) / w))
        return TrajectoryPlan(tuple(segs), closed=True, name="hexagon")
    raise ValueError(f"unknown plan kind {kind!r}")


# (wr, wl, duration) triples: straight at 4 rad/s for 0.7 s, then a 0.7 s left
# turn made of a stop, a slow phase and a fast phase; three turns in 5 s.
_REPLAY_PATTERN = (
    (4.0, 4.0, 0.7),
    (0.0, 0.0, 0.2),
    (0.6, -0.4, 0.25),
    (7.5, 6.2, 0.25),
)


def paper_replay_plan(geom: RobotGeometry | None = None) -> TrajectoryPlan:
    """Literal transcription of the recorded three-turn run (not a closed path)."""
    geom = geom or RobotGeometry()
    segs = []
    for _ in range(3):
        for wr, wl, d in _REPLAY_PATTERN:
            tw = forward_kinematics(WheelSpeeds(wr, wl), geom)
            segs.append(Segment(tw.v_mps, tw.w_radps, d))
    tw = forward_kinematics(WheelSpeeds(4.0, 4.0), geom)
    segs.append(Segment(tw.v_mps, tw.w_radps, 0.7))
    segs.append(Segment(0.0, 0.0, 0.1))
    return TrajectoryPlan(tuple(segs), name="hexagon-paper-replay")


# Process variance 1e4 with a q/w ratio of 3e-4 (steady gain ~0.015 per step).
KF_DEFAULT_Q = 1e4
KF_DEFAULT_W = KF_DEFAULT_Q / 3e-4


def _default_kalman() -> KalmanParams:
    return KalmanParams.motor_model(tau_s=MotorParams().tau_s, ts=0.002, q=KF_DEFAULT_Q, w=KF_DEFAULT_W)


@dataclass(frozen=True)
class SimConfig:
    """Everything a run needs. ``drive_gain`` converts controller output to PWM."""

    ts_s: float = 0.002
    estimator_mode: str = "kf"
    geometry: RobotGeometry = field(default_factory=RobotGeometry)
    motor: MotorParams = field(default_factory=MotorParams)
    gains: PiGains = field(default_factory=PiGains)
    kalman: KalmanParams = field(default_factory=_default_kalman)
    drive_gain: float = 660.0
    lpf_cutoff_hz: float = 1.0
    speed_window_s: float = 0.05
    cpr: int = 48
    meas_noise_std: float = 0.3
    rng_seed: int = 0
    arena_m: float = 1.0
    left_tau_scale: float = 1.0
    max_duration_s: float = 120.0

    def __post_init__(self):
        checks = {
            "ts_s": self.ts_s > 0,
            "drive_gain": self.drive_gain > 0,
            "lpf_cutoff_hz": self.lpf_cutoff_hz > 0,
            "speed_window_s": self.speed_window_s >= self.ts_s,
            "cpr": self.cpr > 0,
            "meas_noise_std": self.meas_noise_std >= 0,
            "arena_m": self.arena_m > 0,
            "left_tau_scale": self.left_tau_scale > 0,
            "max_duration_s": self.max_duration_s > 0,
            "rng_seed": 0 <= self.rng_seed < 2**64,
        }
        for name, ok in checks.items():
            if not ok:
                raise ValueError(f"{name} out of range: {getattr(self, name)!r}")
        if self.estimator_mode not in ESTIMATOR_MODES:
            raise ValueError(f"estimator_mode must be one of {ESTIMATOR_MODES}, got {self.estimator_mode!r}")

    @property
    def motors(self) -> tuple[MotorParams, MotorParams]:
        """Right and left motor parameters."""
        if self.left_tau_scale == 1.0:
            return self.motor, self.motor
        return self.motor, replace(self.motor, tau_s=self.motor.tau_s * self.left_tau_scale)


@dataclass
class SimTrace:
    """Per-step record; two-column arrays are ordered (right, left)."""

    t: np.ndarray
    ref: np.ndarray
    true: np.ndarray
    meas: np.ndarray
    est: np.ndarray
    pwm: np.ndarray
    pose: np.ndarray
    odom: np.ndarray
    ts_s: float
    plan: TrajectoryPlan | None = None

    def __len__(self):
        return len(self.t)


@dataclass(frozen=True)
class TrackingMetrics:
    settling_time_s: tuple[float | None, float | None]
    rms_speed_error: float
    final_pose_error_m: float
    path_closure_m: float

    @property
    def settling_s(self) -> float | None:
        """Time at which both wheels have settled, or None."""
        if None in self.settling_time_s:
            return None
        return max(self.settling_time_s)


def _n_steps(duration: float, ts: float) -> int:
    return math.ceil(duration / ts - 1e-9)


def simulate_run(config: SimConfig, plan: TrajectoryPlan) -> SimTrace:
    """Run the closed loop over ``plan``. Same config and plan give identical traces."""
    total = plan.duration_s
    if total > config.max_duration_s:
        raise ValueError(f"plan lasts {total:.3f} s, longer than max_duration_s={config.max_duration_s}")
    ts = config.ts_s
    n = _n_steps(total, ts)
    mode = config.estimator_mode
    geom = config.geometry
    motors = config.motors
    limit = config.motor.max_pwm / config.drive_gain
    kparams = config.kalman

    # segment index -> first step index past its end
    ends, acc = [], 0.0
    for seg in plan.segments:
        acc += seg.duration_s
        ends.append(_n_steps(acc, ts))
    refs = plan.wheel_references(geom)

    rng = np.random.default_rng(config.rng_seed)
    noise = rng.standard_normal((n, 2)) * config.meas_noise_std

    depth = int(math.ceil(config.speed_window_s / ts)) + 3
    encs = [EncoderState(config.cpr, depth) for _ in range(2)]
    plant = [MotorState(), MotorState()]
    pis = [PiState(), PiState()]
    lpfs = [LpfState(0.0, config.lpf_cutoff_hz) for _ in range(2)]
    kfs = [None, None]
    pwm_prev = [0.0, 0.0]
    pose = Pose()
    odom = Pose()

    out = {k: np.empty((n, 2)) for k in ("ref", "true", "meas", "est", "pwm")}
    pose_log = np.empty((n, 3))
    odom_log = np.empty((n, 3))
    t_log = np.arange(n) * ts

    seg_i = 0
    for k in range(n):
        while k >= ends[seg_i]:
            seg_i += 1
        ref_w = refs[seg_i]
        ref = (ref_w.wr_radps, ref_w.wl_radps)
        t = t_log[k]
        est = [0.0, 0.0]
        for j in range(2):
            encoder_sample(encs[j], plant[j].theta_rad, t)
            y = encoder_speed(encs[j], config.speed_window_s).radps + noise[k, j]
            if mode == "raw":
                e = y
            elif mode == "lpf":
                lpfs[j] = lpf_step(lpfs[j], y, ts)
                e = lpfs[j].y
            else:
                if kfs[j] is None:
                    kfs[j] = kf_init(y, kparams)
                else:
                    u = steady_state_speed(pwm_prev[j], motors[j])
                    kfs[j], _ = kf_step(kfs[j], u, y, kparams)
                e = kfs[j].x_hat
            pis[j], u_ctrl = pi_step(pis[j], ref[j], e, config.gains, ts, limit)
            pwm = config.drive_gain * u_ctrl

            out["ref"][k, j] = ref[j]
            out["true"][k, j] = plant[j].omega_radps
            out["meas"][k, j] = y
            out["est"][k, j] = e
            out["pwm"][k, j] = pwm
            est[j] = e
            pwm_prev[j] = pwm
            plant[j] = motor_step(plant[j], pwm, ts, motors[j])

        pose_log[k] = (pose.x_m, pose.y_m, pose.phi_rad)
        odom_log[k] = (odom.x_m, odom.y_m, odom.phi_rad)
        true_tw = forward_kinematics(WheelSpeeds(plant[0].omega_radps, plant[1].omega_radps), geom)
        pose = integrate_pose(pose, true_tw, ts)
        odom = integrate_pose(odom, forward_kinematics(WheelSpeeds(est[0], est[1]), geom), ts)

    return SimTrace(
        t=t_log,
        ref=out["ref"],
        true=out["true"],
        meas=out["meas"],
        est=out["est"],
        pwm=out["pwm"],
        pose=pose_log,
        odom=odom_log,
        ts_s=ts,
        plan=plan,
    )


def settling_time(signal: np.ndarray, reference: np.ndarray, ts: float) -> float | None:
    """First time the signal enters and stays within the band for the hold time.

    Band is +-5 % of the (possibly time-varying) reference, hold 0.2 s.
    """
    signal = np.asarray(signal, dtype=float)
    reference = np.asarray(reference, dtype=float)
    inside = np.abs(signal - reference) <= SETTLING_BAND * np.abs(reference)
    hold = int(round(SETTLING_HOLD_S / ts))
    n = len(inside)
    if n < hold + 1:
        return None
    bad = np.concatenate(([0], np.cumsum(~inside)))
    # window [i, i + hold] inclusive is clean
    clean = bad[hold + 1 :] - bad[: n - hold] == 0
    idx = np.flatnonzero(clean)
    if idx.size == 0:
        return None
    return float(idx[0] * ts)


def compute_metrics(trace: SimTrace) -> TrackingMetrics:
    if len(trace) == 0:
        raise ValueError("empty trace")
    settle = tuple(settling_time(trace.est[:, j], trace.ref[:, j], trace.ts_s) for j in range(2))
    rms = float(np.sqrt(np.mean((trace.est - trace.ref) ** 2)))
    # final state: pose after the last step is not logged, so use the last row
    gap = float(np.hypot(*(trace.pose[-1, :2] - trace.odom[-1, :2])))
    closure = float(np.hypot(*(trace.pose[-1, :2] - trace.pose[0, :2])))
    return TrackingMetrics(settle, rms, gap, closure)


def reference_path(plan: TrajectoryPlan, ts: float = 0.002) -> np.ndarray:
    """Ideal (x, y, phi) path obtained by integrating the commanded twists."""
    pose = Pose()
    rows = []
    for seg in plan.segments:
        full, rest = divmod(seg.duration_s, ts)
        steps = [ts] * int(full) + ([rest] if rest > 1e-12 else [])
        for dt in steps:
            rows.append((pose.x_m, pose.y_m, pose.phi_rad))
            pose = integrate_pose(pose, seg.twist, dt)
    rows.append((pose.x_m, pose.y_m, pose.phi_rad))
    return np.array(rows)


def inside_arena(trace: SimTrace, side_m: float) -> bool:
    """True if the whole true path lies in the square of side ``side_m`` centered on the origin."""
    half = side_m / 2.0
    return bool(np.all(np.abs(trace.pose[:, :2]) <= half))
