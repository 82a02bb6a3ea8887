"""Differential-drive kinematics.

Conversions between wheel space (right/left wheel angular speeds), body space
(linear and angular velocity) and world space (pose rates), plus a fixed-step
explicit Euler pose integrator.

Forward and inverse maps are exact inverses of each other::

    v = R (wr + wl) / 2          wr = (v + w l / 2) / R
    w = R (wr - wl) / l          wl = (v - w l / 2) / R
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "RobotGeometry",
    "Pose",
    "BodyTwist",
    "WheelSpeeds",
    "PoseRate",
    "wrap_angle",
    "forward_kinematics",
    "inverse_kinematics",
    "pose_rate",
    "integrate_pose",
]


def wrap_angle(phi: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    return math.pi - (math.pi - phi) % (2.0 * math.pi)


@dataclass(frozen=True)
class RobotGeometry:
    """Wheel radius and axle length (track width) in meters.

    Defaults: 42 mm diameter wheel, 9 cm axle.
    """

    wheel_radius_m: float = 0.021
    axle_length_m: float = 0.09

    def __post_init__(self):
        if not self.wheel_radius_m > 0:
            raise ValueError(f"wheel_radius_m must be > 0, got {self.wheel_radius_m}")
        if not self.axle_length_m > 0:
            raise ValueError(f"axle_length_m must be > 0, got {self.axle_length_m}")


@dataclass(frozen=True)
class Pose:
    x_m: float = 0.0
    y_m: float = 0.0
    phi_rad: float = 0.0


@dataclass(frozen=True)
class BodyTwist:
    v_mps: float = 0.0
    w_radps: float = 0.0


@dataclass(frozen=True)
class WheelSpeeds:
    wr_radps: float = 0.0
    wl_radps: float = 0.0


class PoseRate(NamedTuple):
    x_dot: float
    y_dot: float
    phi_dot: float


def forward_kinematics(wheels: WheelSpeeds, geom: RobotGeometry) -> BodyTwist:
    """Body twist produced by the given wheel angular speeds."""
    r = geom.wheel_radius_m
    return BodyTwist(
        v_mps=r * (wheels.wr_radps + wheels.wl_radps) / 2.0,
        w_radps=r * (wheels.wr_radps - wheels.wl_radps) / geom.axle_length_m,
    )


def inverse_kinematics(twist: BodyTwist, geom: RobotGeometry) -> WheelSpeeds:
    """Wheel angular speeds that realise ``twist``."""
    r = geom.wheel_radius_m
    half_turn = twist.w_radps * geom.axle_length_m / 2.0
    return WheelSpeeds(
        wr_radps=(twist.v_mps + half_turn) / r,
        wl_radps=(twist.v_mps - half_turn) / r,
    )


def pose_rate(pose: Pose, twist: BodyTwist) -> PoseRate:
    """World-frame pose derivative of the unicycle model."""
    return PoseRate(
        twist.v_mps * math.cos(pose.phi_rad),
        twist.v_mps * math.sin(pose.phi_rad),
        twist.w_radps,
    )


def integrate_pose(pose: Pose, twist: BodyTwist, dt: float) -> Pose:
    """One explicit Euler step of the pose; heading is wrapped into (-pi, pi].

    Raises:
        ValueError: if ``dt`` is not strictly positive.
    """
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    rate = pose_rate(pose, twist)
    return Pose(
        x_m=pose.x_m + rate.x_dot * dt,
        y_m=pose.y_m + rate.y_dot * dt,
        phi_rad=wrap_angle(pose.phi_rad + rate.phi_dot * dt),
    )
