"""
Reduced atomic dynamics driven by the decoherence function.

The atom evolves as ``ee -> ee * Gamma^2`` and ``eg -> eg * Gamma``. One
evaluation of Gamma per time point feeds every observable.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .model import (
    DensityMatrix2,
    MINUS,
    ModelParams,
    PLUS,
    PureStateAngles,
    pure_state_from_angles,
    purity,
)
from .propagator import GAMMA_BOUND_TOL, PropagatorCurve, decoherence_curve
from .uncertainty import bound_cp, bound_deutsch, bound_kmu, entropic_sum_xz

__all__ = ["EvolutionRecord", "TimeSeries", "evolve", "optimal_pair_distance", "time_series"]


def evolve(rho0: DensityMatrix2, gamma_value) -> DensityMatrix2:
    """State at the time where the decoherence function equals ``gamma_value``.

    ``gamma_value`` may be an array, in which case the result holds arrays.
    """
    g = np.asarray(gamma_value, dtype=float)
    if np.any(np.abs(g) > 1 + GAMMA_BOUND_TOL):
        raise ValueError(f"|Gamma| must not exceed 1, got max {np.max(np.abs(g))}")
    g = np.clip(g, -1.0, 1.0)
    ee = rho0.ee * g * g
    eg = rho0.eg * g
    if g.ndim == 0:
        return DensityMatrix2(float(ee), complex(eg))
    return DensityMatrix2(ee, eg)


def optimal_pair_distance(gamma_value):
    """Trace distance of the evolved ``|+>, |->`` pair, which is ``|Gamma|``."""
    g = np.asarray(gamma_value, dtype=float)
    if np.any(np.abs(g) > 1 + GAMMA_BOUND_TOL):
        raise ValueError("|Gamma| must not exceed 1")
    out = np.abs(g)
    return float(out) if out.ndim == 0 else out


# The pair is kept for cross-checks against the generic trace distance.
OPTIMAL_PAIR = (PLUS, MINUS)

# sigma_x / sigma_z are mutually unbiased: c = c_tilde = 1/2 for every state.
_C_XZ = 0.5


@dataclass(frozen=True)
class EvolutionRecord:
    t: float
    gamma_value: float
    rho: DensityMatrix2
    trace_distance_optimal: float
    purity: float
    entropic_sum: float
    bounds: tuple[float, float, float]  # (Deutsch, KMU, CP)


class TimeSeries(Sequence):
    """Column-oriented time series; indexing yields :class:`EvolutionRecord`."""

    def __init__(self, curve: PropagatorCurve, rho0: DensityMatrix2):
        self.curve = curve
        self.rho0 = rho0
        self.t = curve.t
        self.gamma = curve.gamma
        self.rho = evolve(rho0, curve.gamma)
        self.D = optimal_pair_distance(curve.gamma)
        self.purity = purity(self.rho)
        self.S_xz = entropic_sum_xz(self.rho)
        self.bounds = (bound_deutsch(_C_XZ), bound_kmu(_C_XZ), bound_cp(_C_XZ, _C_XZ))

    @property
    def B_CP(self) -> float:
        return self.bounds[2]

    def __len__(self):
        return len(self.t)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return EvolutionRecord(
            t=float(self.t[i]),
            gamma_value=float(self.gamma[i]),
            rho=self.rho[i],
            trace_distance_optimal=float(self.D[i]),
            purity=float(self.purity[i]),
            entropic_sum=float(self.S_xz[i]),
            bounds=self.bounds,
        )

    def columns(self) -> dict[str, np.ndarray]:
        n = len(self)
        return {
            "t": self.t,
            "gamma": self.gamma,
            "D": self.D,
            "purity": self.purity,
            "S_xz": self.S_xz,
            "B_CP": np.full(n, self.B_CP),
        }


def time_series(params: ModelParams, angles: PureStateAngles, t_max: float,
                n_points: int) -> TimeSeries:
    """Evolve the pure state given by ``angles`` on ``n_points`` uniform
    points of ``[0, t_max]`` (dimensionless ``Omega*t``)."""
    if not t_max > 0:
        raise ValueError("t_max must be > 0")
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    t = np.linspace(0.0, t_max, int(n_points))
    return TimeSeries(decoherence_curve(t, params), pure_state_from_angles(angles))
