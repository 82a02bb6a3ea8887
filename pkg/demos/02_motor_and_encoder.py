"""
Motor and encoder
=================

The static PWM -> speed curve, the first-order lag, and how much a 48
counts/rev encoder tells us about speed.
"""

# %%
import math

import numpy as np

from diffbot import EncoderState, MotorParams, MotorState, encoder_sample, encoder_speed, motor_step, steady_state_speed

motor = MotorParams()
for pwm in (10, 20, 25, 30, 90, 150, 180, 210, 255):
    print(f"pwm {pwm:4d} -> {steady_state_speed(pwm, motor):6.3f} rad/s")

# %%
# Step response to 150 PWM: about 95 % of 5 rad/s after three time constants.
state = MotorState()
for k in range(1, 301):
    state = motor_step(state, 150, 0.002, motor)
    if k % 75 == 0:
        print(f"t={k * 0.002:.2f}s  w={state.omega_radps:.3f}")

# %%
# Speed from counts: the error bound is one count per window.
step = 2 * math.pi / 48
for window in (0.01, 0.05, 0.1, 0.5):
    enc = EncoderState(48, depth=int(window / 0.002) + 3)
    errs = []
    for k in range(2000):
        t = k * 0.002
        encoder_sample(enc, 5.0 * t, t)
        s = encoder_speed(enc, window)
        if not s.cold:
            errs.append(abs(s.radps - 5.0))
    print(f"window {window * 1000:4.0f} ms: worst error {max(errs):.3f} rad/s, bound {step / window:.3f}")
