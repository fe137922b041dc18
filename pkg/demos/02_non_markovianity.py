"""
Information backflow
====================

Trace-distance non-Markovianity of the |+>, |-> pair, as a function of the
reservoir width and around the memoryless critical coupling Omega = Theta/4.
"""

import numpy as np

from eurdyn import ModelParams, classify, critical_coupling, non_markovianity

for theta in (0.1, 1.0, 5.0):
    row = []
    for gamma in np.logspace(-1, 2, 7):
        row.append(non_markovianity(ModelParams.from_ratios(theta, gamma), t_max=100.0).n_value)
    print(f"Theta/Omega = {theta:g}:", " ".join(f"{n:8.4f}" for n in row))

# memoryless reservoir: no backflow below the critical coupling
print("critical Omega for Theta = 1:", critical_coupling(1.0))
for r in (0.2, 0.24, 0.26, 0.3, 1.0):
    res = non_markovianity(ModelParams.from_ratios(1 / r, None), t_max=100.0)
    print(f"Omega/Theta = {r:4}: N = {res.n_value:.3e}, {classify(ModelParams.from_ratios(1 / r, None)).value}")

# where the trace distance grows again
res = non_markovianity(ModelParams.from_ratios(1.0, 1.0), t_max=20.0)
for (t0, t1), rise in zip(res.intervals, res.rises):
    print(f"  backflow on [{t0:6.3f}, {t1:6.3f}]: +{rise:.4f}")
