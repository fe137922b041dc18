"""
Entropic uncertainty of two qubit measurements, and the state-independent
lower bounds on it (all entropies in bits).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DensityMatrix2

__all__ = [
    "ObservableBasis",
    "ObservablePair",
    "X_BASIS",
    "Y_BASIS",
    "Z_BASIS",
    "rotated_basis",
    "binary_entropy",
    "measurement_entropy",
    "entropic_sum_xz",
    "overlap_constants",
    "bound_deutsch",
    "bound_kmu",
    "bound_cp",
    "robertson_bound",
]

_ORTHO_TOL = 1e-12
_PROB_TOL = 1e-15


@dataclass(frozen=True)
class ObservableBasis:
    """Orthonormal eigenbasis ``(psi1, psi2)`` in ``{|e>, |g>}`` components."""

    psi1: tuple
    psi2: tuple

    def __post_init__(self):
        a = np.asarray(self.psi1, dtype=complex)
        b = np.asarray(self.psi2, dtype=complex)
        if a.shape != (2,) or b.shape != (2,):
            raise ValueError("basis vectors must have two components")
        if abs(np.vdot(a, a) - 1) > _ORTHO_TOL or abs(np.vdot(b, b) - 1) > _ORTHO_TOL:
            raise ValueError("basis vectors must be normalised")
        if abs(np.vdot(a, b)) > _ORTHO_TOL:
            raise ValueError("basis vectors must be orthogonal")

    @property
    def vectors(self) -> np.ndarray:
        return np.array([self.psi1, self.psi2], dtype=complex)


_R2 = 1 / math.sqrt(2)
Z_BASIS = ObservableBasis((1, 0), (0, 1))
X_BASIS = ObservableBasis((_R2, _R2), (_R2, -_R2))
Y_BASIS = ObservableBasis((_R2, 1j * _R2), (_R2, -1j * _R2))


def rotated_basis(angle: float) -> ObservableBasis:
    """Eigenbasis of ``cos(angle) sz + sin(angle) sx`` (Bloch-sphere tilt from z)."""
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return ObservableBasis((c, s), (-s, c))


@dataclass(frozen=True)
class ObservablePair:
    P: ObservableBasis
    Q: ObservableBasis

    @property
    def c(self) -> float:
        return overlap_constants(self.P, self.Q)[0]

    @property
    def c_tilde(self) -> float:
        return overlap_constants(self.P, self.Q)[1]


def binary_entropy(p):
    """``-p log2 p - (1-p) log2(1-p)`` with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -_PROB_TOL) or np.any(p > 1 + _PROB_TOL):
        raise ValueError("probability outside [0, 1]")
    p = np.clip(p, 0.0, 1.0)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        hp = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
        hq = np.where(q > 0, -q * np.log2(np.where(q > 0, q, 1.0)), 0.0)
    out = hp + hq
    return float(out) if out.ndim == 0 else out


def _outcome_probability(rho: DensityMatrix2, v: np.ndarray):
    # <v|rho|v> for v = (v_e, v_g)
    ve, vg = v
    ee = np.asarray(rho.ee)
    eg = np.asarray(rho.eg)
    return (abs(ve) ** 2 * ee + abs(vg) ** 2 * (1 - ee)
            + 2 * np.real(np.conj(ve) * vg * eg))


def measurement_entropy(rho: DensityMatrix2, basis: ObservableBasis):
    """Shannon entropy of the outcome distribution of a projective measurement."""
    p1 = _outcome_probability(rho, basis.vectors[0])
    return binary_entropy(p1)


def entropic_sum_xz(rho: DensityMatrix2):
    """``S(sigma_x) + S(sigma_z)``."""
    s_z = binary_entropy(rho.ee)
    s_x = binary_entropy(0.5 + np.real(rho.eg))
    return s_x + s_z


def overlap_constants(P: ObservableBasis, Q: ObservableBasis) -> tuple[float, float]:
    """``(c, c_tilde)``: largest and second-largest distinct squared overlap.

    For qubits the overlaps are ``{c, c, 1-c, 1-c}``, so ``c_tilde = 1 - c``
    unless all four coincide (``c = 1/2``), where ``c_tilde = 1/2``.
    """
    ov = np.abs(P.vectors.conj() @ Q.vectors.T) ** 2
    c = float(ov.max())
    lower = ov[ov < c - 1e-12]
    c_tilde = float(lower.max()) if lower.size else c
    return c, c_tilde


def _check_c(c: float) -> None:
    if not 0.5 - 1e-12 <= c <= 1 + 1e-12:
        raise ValueError(f"overlap c must lie in [1/2, 1], got {c}")


def bound_deutsch(c: float) -> float:
    _check_c(c)
    return 2 * math.log2(2 / (1 + math.sqrt(c)))


def bound_kmu(c: float) -> float:
    _check_c(c)
    return -math.log2(c)


def bound_cp(c: float, c_tilde: float) -> float:
    _check_c(c)
    if not 0 <= c_tilde <= c + 1e-12:
        raise ValueError(f"c_tilde must lie in [0, c], got {c_tilde}")
    if c_tilde == 0:
        if c == 1:
            return bound_kmu(c)
        raise ValueError("c_tilde = 0 is only admissible for c = 1")
    return -math.log2(c) + 0.5 * (1 - math.sqrt(c)) * math.log2(c / c_tilde)


def robertson_bound(rho: DensityMatrix2):
    """``|<[sx, sz]>| / 2 = |<sy>|``."""
    out = np.abs(2 * np.imag(rho.eg))
    return float(out) if np.ndim(out) == 0 else out
