"""
Entropic uncertainty along a trajectory
=======================================

S_xz for an initial pure state, compared with the lower bounds and with the
state purity. In the memoryless model the coherence dies and S_xz returns to
the bound at late times.
"""

import math

import numpy as np

from eurdyn import ModelParams, PureStateAngles, time_series
from eurdyn.uncertainty import X_BASIS, Z_BASIS, ObservablePair, bound_cp, bound_deutsch, bound_kmu

pair = ObservablePair(X_BASIS, Z_BASIS)
print("c, c~ =", pair.c, pair.c_tilde)
print("Deutsch, KMU, CP:", bound_deutsch(pair.c), bound_kmu(pair.c), bound_cp(pair.c, pair.c_tilde))

ts = time_series(ModelParams.from_ratios(1.0, None), PureStateAngles(math.pi / 3, math.pi / 6), 20.0, 201)
for k in range(0, 201, 25):
    r = ts[k]
    print(f"Omega t = {r.t:5.1f}  Gamma = {r.gamma_value: .4f}  P = {r.purity:.4f}  S_xz = {r.entropic_sum:.4f}")

print("min S_xz - B_CP:", np.min(ts.S_xz - ts.B_CP))
