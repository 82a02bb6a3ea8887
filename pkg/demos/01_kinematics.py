"""
Differential-drive kinematics
=============================

Wheel speeds <-> body twist, and dead-reckoning a circle with Euler steps.
"""

# %%
import math

from diffbot import BodyTwist, Pose, RobotGeometry, WheelSpeeds, forward_kinematics, integrate_pose, inverse_kinematics

geom = RobotGeometry(wheel_radius_m=0.021, axle_length_m=0.09)

# Both wheels at 4.8 rad/s move the robot at about 0.1 m/s.
print(forward_kinematics(WheelSpeeds(4.8, 4.8), geom))

# Spinning in place: equal and opposite wheel speeds.
print(forward_kinematics(WheelSpeeds(5.0, -5.0), geom))

# %%
# The inverse map gives the wheel references a controller has to track.
for twist in (BodyTwist(0.1, 0.0), BodyTwist(0.1, 1.0), BodyTwist(0.0, 2.0)):
    print(twist, "->", inverse_kinematics(twist, geom))

# %%
# A full lap at v = 0.1 m/s, w = 1 rad/s, integrated every 2 ms.
pose, dt = Pose(), 0.002
for _ in range(round(2 * math.pi / dt)):
    pose = integrate_pose(pose, BodyTwist(0.1, 1.0), dt)
print(f"back near the start: ({pose.x_m * 1000:.3f} mm, {pose.y_m * 1000:.3f} mm)")
