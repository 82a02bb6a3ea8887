"""
PI speed control
================

Ziegler-Nichols reaction-curve tuning and anti-windup.
"""

# %%
from diffbot import PiGains, PiState, ReactionCurve, pi_step, zn_tune_pi

# Dead time 0.1 s, time constant 0.5 s, gain 12 -> kp = 0.375.
print(zn_tune_pi(ReactionCurve(dead_time_L_s=0.1, time_constant_T_s=0.5, process_gain_K=12.0)))

# %%
# Hold a large error against a small output limit: the output sits at the
# limit and the integral stops growing.
gains = PiGains(0.375, 1.0)
state = PiState()
for k in range(5):
    state, out = pi_step(state, 10.0, 0.0, gains, 0.002, max_pwm=1.0)
    print(f"step {k}: output {out:.3f}, integral {state.integral:.4f}")
