"""
Kalman filter versus low-pass filter in the speed loop
======================================================

Drive straight at 0.1 m/s for 5 s with each estimator in the feedback path
and compare settling times and tracking error.
"""

# %%
import dataclasses

from diffbot import SimConfig, compute_metrics, make_plan, simulate_run

plan = make_plan("line", v=0.1, duration=5.0)
base = SimConfig()

for mode in ("raw", "lpf", "kf"):
    cfg = dataclasses.replace(base, estimator_mode=mode)
    m = compute_metrics(simulate_run(cfg, plan))
    print(f"{mode:4s} settling {m.settling_s} s, rms speed error {m.rms_speed_error:.3f} rad/s")

# %%
# The measurement-only Kalman filter (random-walk model) has to smooth the
# quantized encoder speed as hard as the low-pass does, so it is no faster.
from diffbot import KalmanParams

rw = KalmanParams.random_walk(-1e-4, base.ts_s, q=base.kalman.q, w=base.kalman.w)
m = compute_metrics(simulate_run(dataclasses.replace(base, kalman=rw), plan))
print("kf (random walk) settling", m.settling_s)

# %%
# Settling spread over noise seeds.
for mode in ("kf", "lpf"):
    times = [
        compute_metrics(simulate_run(dataclasses.replace(base, estimator_mode=mode, rng_seed=s), plan)).settling_s
        for s in range(10)
    ]
    print(mode, times)
