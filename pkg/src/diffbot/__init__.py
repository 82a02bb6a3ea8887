"""Differential-drive robot simulator: kinematics, motor/encoder plant,
PI speed control, low-pass and scalar Kalman speed estimation."""

from .actuation import EncoderState, MotorParams, MotorState, encoder_sample, encoder_speed, motor_step, steady_state_speed
from .control import LpfState, PiGains, PiState, ReactionCurve, lpf_step, pi_step, zn_tune_pi
from .estimation import KalmanParams, KalmanState, kf_predict, kf_step, kf_update, steady_state_variance
from .kinematics import (
    BodyTwist,
    Pose,
    RobotGeometry,
    WheelSpeeds,
    forward_kinematics,
    integrate_pose,
    inverse_kinematics,
    pose_rate,
)
from .simulation import SimConfig, SimTrace, TrajectoryPlan, compute_metrics, make_plan, simulate_run

__version__ = "0.1.0"
