"""
Decoherence function of the atom
================================

Gamma(t) for a few reservoir widths, from the residue sum, checked against
the amplitude integrator and the memoryless closed form.
"""

import numpy as np

from eurdyn import ModelParams, decoherence_curve, gamma_memoryless, gamma_ode_oracle

# times are Omega*t throughout
t = np.linspace(0, 20, 2001)

# a narrow reservoir keeps the Rabi-like oscillation alive
for gamma in (0.1, 1.0, 10.0, 1e4):
    params = ModelParams.from_ratios(1.0, gamma)
    curve = decoherence_curve(t, params)
    print(f"gamma/Omega = {gamma:g}: Gamma(20) = {curve.gamma[-1]: .3e}, method {curve.method}")

# the analytic curve against the RK4 oracle
params = ModelParams.from_ratios(2.0, 0.5)
a = decoherence_curve(t, params).gamma
b = gamma_ode_oracle(t, params).gamma
print("max |analytic - oracle| =", np.max(np.abs(a - b)))

# a very broad reservoir approaches the memoryless form
wide = decoherence_curve(t, ModelParams.from_ratios(1.0, 1e4)).gamma
print("max |gamma=1e4 - memoryless| =", np.max(np.abs(wide - gamma_memoryless(t, 1.0, 1.0))))
