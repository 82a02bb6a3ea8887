"""
Hexagon path
============

Drive a regular hexagon with the PI + Kalman loop, compare the true path to
the commanded one, and plot it if matplotlib is around.
"""

# %%
import numpy as np

from diffbot import SimConfig, compute_metrics, make_plan, simulate_run
from diffbot.simulation import inside_arena, paper_replay_plan, reference_path

plan = make_plan("hexagon", edge=0.25, v=0.1, w=2.0)
trace = simulate_run(SimConfig(), plan)
m = compute_metrics(trace)
print(f"closure {m.path_closure_m * 100:.2f} cm, odometry drift {m.final_pose_error_m * 100:.2f} cm")
print("inside the 1 m x 1 m arena:", inside_arena(trace, 1.0))

ideal = reference_path(plan, trace.ts_s)
replay = simulate_run(SimConfig(), paper_replay_plan())

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.plot(ideal[:, 0], ideal[:, 1], "--", label="reference")
    ax1.plot(trace.pose[:, 0], trace.pose[:, 1], label="true")
    ax1.plot(trace.odom[:, 0], trace.odom[:, 1], ":", label="odometry")
    ax1.set_aspect("equal")
    ax1.legend()
    ax2.plot(replay.t, replay.ref[:, 0], label="ref right")
    ax2.plot(replay.t, replay.est[:, 0], label="kf right")
    ax2.plot(replay.t, replay.ref[:, 1], label="ref left")
    ax2.plot(replay.t, replay.est[:, 1], label="kf left")
    ax2.set_xlabel("t [s]")
    ax2.legend()
    fig.savefig("hexagon.png", dpi=120)
    print("wrote hexagon.png")
