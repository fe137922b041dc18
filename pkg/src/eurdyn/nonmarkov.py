"""
Information backflow measured by the trace distance of the ``|+>, |->`` pair.

For that pair the distance is ``|Gamma(t)|``, so the non-Markovianity is the
total rise of ``|Gamma|``. It is accumulated as the sum of positive
increments over the sampled curve. Sign changes of Gamma are added to the
sample sequence as exact zeros of ``|Gamma|``; otherwise each minimum at a
zero crossing would be overestimated by up to ``dt * |Gamma'|`` and the
result would only converge linearly in ``dt``.

The maximisation over initial pairs is not performed: the value is the one
for the fixed ``|+>, |->`` pair, which is a lower bound on the fully
maximised measure (``NonMarkovResult.optimal_pair_only``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams
from .propagator import PropagatorCurve, decoherence_curve

__all__ = [
    "Regime",
    "NonMarkovResult",
    "sigma_rate",
    "backflow_intervals",
    "non_markovianity",
    "non_markovianity_of_curve",
    "classify",
    "critical_coupling",
    "DEFAULT_T_MAX",
    "DEFAULT_DT",
]

DEFAULT_T_MAX = 100.0
DEFAULT_DT = 1e-3


class Regime(enum.Enum):
    MARKOVIAN = "Markovian"
    NON_MARKOVIAN = "NonMarkovian"


@dataclass(frozen=True)
class NonMarkovResult:
    n_value: float
    t_max: float
    dt: float
    tail_estimate: float
    intervals: list = field(default_factory=list)  # (t_start, t_end)
    rises: np.ndarray = field(default_factory=lambda: np.zeros(0))
    optimal_pair_only: bool = True


def sigma_rate(curve: PropagatorCurve, index: int) -> float:
    """Rate of change of ``|Gamma|`` at a grid point (central difference,
    one-sided at the ends)."""
    a = np.abs(curve.gamma)
    n = len(a)
    if n < 2:
        raise ValueError("need at least two samples")
    if not -n <= index < n:
        raise IndexError(index)
    i = index % n
    t = curve.t
    if i == 0:
        return float((a[1] - a[0]) / (t[1] - t[0]))
    if i == n - 1:
        return float((a[-1] - a[-2]) / (t[-1] - t[-2]))
    return float((a[i + 1] - a[i - 1]) / (t[i + 1] - t[i - 1]))


def _augmented(t: np.ndarray, g: np.ndarray):
    """Samples of ``|Gamma|`` with linearly-located zero crossings inserted."""
    cross = np.nonzero(g[:-1] * g[1:] < 0)[0]
    if cross.size == 0:
        return t, np.abs(g)
    frac = g[cross] / (g[cross] - g[cross + 1])
    tz = t[cross] + frac * (t[cross + 1] - t[cross])
    tt = np.insert(t, cross + 1, tz)
    aa = np.insert(np.abs(g), cross + 1, 0.0)
    return tt, aa


def backflow_intervals(curve: PropagatorCurve):
    """Maximal intervals on which ``|Gamma|`` increases.

    Returns ``(intervals, rises)``: ``(t_start, t_end)`` pairs and the rise of
    ``|Gamma|`` over each.
    """
    tt, aa = _augmented(curve.t, curve.gamma)
    up = np.diff(aa) > 0
    if not up.any():
        return [], np.zeros(0)
    edges = np.diff(np.concatenate(([0], up.astype(np.int8), [0])))
    starts = np.nonzero(edges == 1)[0]
    ends = np.nonzero(edges == -1)[0]
    intervals = [(float(tt[s]), float(tt[e])) for s, e in zip(starts, ends)]
    rises = aa[ends] - aa[starts]
    return intervals, rises


def non_markovianity_of_curve(curve: PropagatorCurve) -> NonMarkovResult:
    intervals, rises = backflow_intervals(curve)
    return NonMarkovResult(
        n_value=float(np.sum(rises)),
        t_max=float(curve.t[-1]),
        dt=curve.dt,
        tail_estimate=float(abs(curve.gamma[-1])),
        intervals=intervals,
        rises=rises,
    )


def non_markovianity(params: ModelParams, t_max: float = DEFAULT_T_MAX,
                     dt: float = DEFAULT_DT) -> NonMarkovResult:
    """Non-Markovianity on ``[0, t_max]`` (dimensionless) sampled every ``dt``.

    ``tail_estimate`` is ``|Gamma(t_max)|``, a bound on what a later rise
    could still add from the current envelope.
    """
    if not t_max > 0:
        raise ValueError("t_max must be > 0")
    if not 0 < dt <= 1e-2:
        raise ValueError("dt must lie in (0, 1e-2]")
    n = max(1, int(round(t_max / dt)))
    t = np.linspace(0.0, t_max, n + 1)
    return non_markovianity_of_curve(decoherence_curve(t, params))


def classify(params: ModelParams, t_max: float = DEFAULT_T_MAX, dt: float = DEFAULT_DT,
             tol: float = 1e-9) -> Regime:
    """Markovian iff the backflow stays within ``tol``."""
    n = non_markovianity(params, t_max, dt).n_value
    return Regime.MARKOVIAN if n <= tol else Regime.NON_MARKOVIAN


def critical_coupling(theta: float) -> float:
    """Atom-cavity coupling at which the memoryless dynamics turns oscillatory."""
    if not theta > 0:
        raise ValueError("theta must be > 0")
    return theta / 4.0
