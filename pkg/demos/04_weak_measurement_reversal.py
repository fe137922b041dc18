"""
Weak measurement reversal
=========================

A null-result measurement of strength m applied after the decay pushes the
atom toward the ground state and lowers S_xz.
"""

import math

import numpy as np

from eurdyn import ModelParams, PureStateAngles, wmr_uncertainty_sweep
from eurdyn.wmr import apply_wmr, success_probability
from eurdyn.model import PLUS

angles = PureStateAngles(math.pi / 3, math.pi / 6)
ms = np.linspace(0, 1, 11)
for omega, theta in ((0.1, 3.0), (1.0, 3.0), (20.0, 3.0)):
    s = [v for _, v in wmr_uncertainty_sweep(ModelParams(omega, theta), angles, 10.0, ms)]
    print(f"Omega = {omega:4}, Theta = {theta}:", " ".join(f"{x:.3f}" for x in s))

# the price is the post-selection probability
for m in (0.0, 0.5, 0.9, 0.99):
    out = apply_wmr(PLUS, m)
    print(f"m = {m}: success {success_probability(PLUS, m):.3f}, ee = {out.ee:.4f}, |eg| = {abs(out.eg):.4f}")
