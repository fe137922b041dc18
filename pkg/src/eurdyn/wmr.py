"""
Weak measurement reversal: a null-result, partially collapsing measurement
of strength ``m`` that damps the excited-state weight by ``1 - m`` and
renormalises.
"""

from __future__ import annotations

import math

import numpy as np

from .dynamics import evolve
from .model import DensityMatrix2, ModelParams, PureStateAngles, pure_state_from_angles
from .propagator import decoherence_curve
from .uncertainty import entropic_sum_xz

__all__ = ["ZeroPostSelectionError", "check_strength", "apply_wmr", "success_probability",
           "wmr_uncertainty_sweep"]

_MIN_PROBABILITY = 1e-15


class ZeroPostSelectionError(ArithmeticError):
    """The null-result branch has vanishing probability (excited state, m = 1)."""


def check_strength(m: float) -> float:
    m = float(m)
    if not (math.isfinite(m) and 0.0 <= m <= 1.0):
        raise ValueError(f"measurement strength must lie in [0, 1], got {m}")
    return m


def success_probability(rho: DensityMatrix2, m: float):
    """Normalisation ``C = (1 - m) ee + gg``, the null-result probability."""
    m = check_strength(m)
    return (1 - m) * np.asarray(rho.ee) + (1 - np.asarray(rho.ee))


def apply_wmr(rho: DensityMatrix2, m: float) -> DensityMatrix2:
    m = check_strength(m)
    c = success_probability(rho, m)
    if np.any(c <= _MIN_PROBABILITY):
        raise ZeroPostSelectionError(
            "null-result probability vanishes; the reversal branch never occurs")
    ee = (1 - m) * np.asarray(rho.ee) / c
    eg = math.sqrt(1 - m) * np.asarray(rho.eg) / c
    if np.ndim(ee) == 0:
        return DensityMatrix2(float(ee), complex(eg))
    return DensityMatrix2(ee, eg)


def wmr_uncertainty_sweep(params: ModelParams, angles: PureStateAngles, t: float,
                          m_grid) -> list[tuple[float, float]]:
    """``S_xz`` after evolving to ``t`` (units of Omega*t) then applying WMR."""
    gamma_t = decoherence_curve([t], params).gamma[0]
    rho_t = evolve(pure_state_from_angles(angles), gamma_t)
    return [(float(m), float(entropic_sum_xz(apply_wmr(rho_t, m)))) for m in m_grid]
