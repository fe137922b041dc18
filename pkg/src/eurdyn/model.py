"""
Core types for the atom / lossy-cavity / Lorentzian-reservoir model.

Everything downstream works in units of the atom-cavity coupling: times are
``Omega*t`` and rates are ratios to ``Omega``. :class:`ModelParams` keeps the
physical values so the scale can be reported, and exposes the dimensionless
ratios through :meth:`ModelParams.scaled`.

The atomic state is stored as the pair ``(ee, eg)``: the excited-state
population and the coherence ``rho_eg``. ``rho_ge`` and ``rho_gg`` are
derived, so Hermiticity and unit trace hold by construction. The fields may
be scalars or numpy arrays of matching shape; every function in this module
broadcasts.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "POSITIVITY_TOL",
    "InvalidStateError",
    "Lorentzian",
    "Memoryless",
    "ModelParams",
    "DensityMatrix2",
    "PureStateAngles",
    "pure_state_from_angles",
    "purity",
    "trace_distance",
    "spectral_density",
    "EXCITED",
    "GROUND",
    "PLUS",
    "MINUS",
    "MAXIMALLY_MIXED",
]

POSITIVITY_TOL = 1e-12


class InvalidStateError(ValueError):
    """Raised when (ee, eg) does not describe a positive unit-trace matrix."""


@dataclass(frozen=True)
class Lorentzian:
    """Reservoir with Lorentzian spectrum of half-width ``gamma``."""

    gamma: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError(f"reservoir.gamma must be finite and > 0, got {self.gamma!r}")

    @property
    def correlation_time(self) -> float:
        return 1.0 / self.gamma


@dataclass(frozen=True)
class Memoryless:
    """The ``gamma -> infinity`` limit: delta-correlated reservoir."""

    @property
    def correlation_time(self) -> float:
        return 0.0


@dataclass(frozen=True)
class ModelParams:
    """Coupling constants of the composite system.

    Parameters
    ----------
    omega : float
        Atom-cavity coupling (> 0).
    theta : float
        Cavity-reservoir coupling (>= 0).
    reservoir : Lorentzian or Memoryless
        Reservoir model.
    center_frequency : float
        Resonance frequency shared by atom, cavity and the reservoir peak.
        Only :func:`spectral_density` reads it; it drops out of the dynamics.
    """

    omega: float
    theta: float
    reservoir: Lorentzian | Memoryless = field(default_factory=Memoryless)
    center_frequency: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be finite and > 0, got {self.omega!r}")
        if not (math.isfinite(self.theta) and self.theta >= 0):
            raise ValueError(f"theta must be finite and >= 0, got {self.theta!r}")
        if not isinstance(self.reservoir, (Lorentzian, Memoryless)):
            raise TypeError(f"unknown reservoir {self.reservoir!r}")

    @property
    def is_memoryless(self) -> bool:
        return isinstance(self.reservoir, Memoryless)

    @property
    def gamma(self) -> float:
        """Spectral width; ``inf`` for the memoryless reservoir."""
        if self.is_memoryless:
            return math.inf
        return self.reservoir.gamma

    @property
    def correlation_time(self) -> float:
        return self.reservoir.correlation_time

    def scaled(self) -> tuple[float, float]:
        """Return ``(theta/omega, gamma/omega)``; the second is inf when memoryless."""
        return self.theta / self.omega, self.gamma / self.omega

    @classmethod
    def from_ratios(cls, theta_over_omega: float, gamma_over_omega: float | None = None,
                    omega: float = 1.0) -> "ModelParams":
        """Build parameters from dimensionless ratios (``None`` gamma means memoryless)."""
        reservoir = Memoryless() if gamma_over_omega is None else Lorentzian(gamma_over_omega * omega)
        return cls(omega=omega, theta=theta_over_omega * omega, reservoir=reservoir)


@dataclass(frozen=True)
class DensityMatrix2:
    """Qubit density matrix in the ``{|e>, |g>}`` basis.

    ``ee`` is real, ``eg`` complex. Construction validates positivity,
    ``|eg|^2 <= ee (1 - ee)``, to :data:`POSITIVITY_TOL`.
    """

    ee: float | np.ndarray
    eg: complex | np.ndarray

    def __post_init__(self):
        validate(self.ee, self.eg)

    @property
    def gg(self):
        return 1.0 - self.ee

    @property
    def ge(self):
        return np.conj(self.eg)

    def matrix(self) -> np.ndarray:
        """Full 2x2 matrix (scalar states only)."""
        if np.ndim(self.ee) or np.ndim(self.eg):
            raise ValueError("matrix() is only defined for scalar states")
        return np.array([[self.ee, self.eg], [np.conj(self.eg), 1.0 - self.ee]], dtype=complex)

    def bloch(self) -> tuple:
        """Bloch components ``(<sx>, <sy>, <sz>)``."""
        eg = np.asarray(self.eg)
        return 2 * eg.real, -2 * eg.imag, 2 * np.asarray(self.ee) - 1

    def __len__(self):
        return np.broadcast(self.ee, self.eg).shape[0]

    def __getitem__(self, idx) -> "DensityMatrix2":
        ee, eg = np.broadcast_arrays(self.ee, self.eg)
        return DensityMatrix2(ee[idx], eg[idx])


def validate(ee, eg, tol: float = POSITIVITY_TOL) -> None:
    """Raise :class:`InvalidStateError` unless ``(ee, eg)`` is a valid state."""
    ee = np.asarray(ee)
    eg = np.asarray(eg)
    if np.iscomplexobj(ee):
        raise InvalidStateError("ee must be real")
    if not (np.all(np.isfinite(ee)) and np.all(np.isfinite(eg))):
        raise InvalidStateError("state entries must be finite")
    if np.any(ee < -tol) or np.any(ee > 1 + tol):
        raise InvalidStateError(f"population ee outside [0, 1]: {ee}")
    excess = np.abs(eg) ** 2 - ee * (1 - ee)
    if np.any(excess > tol):
        raise InvalidStateError(
            f"coherence violates positivity: |eg|^2 - ee(1-ee) = {np.max(excess):.3e}")


EXCITED = DensityMatrix2(1.0, 0.0)
GROUND = DensityMatrix2(0.0, 0.0)
PLUS = DensityMatrix2(0.5, 0.5)
MINUS = DensityMatrix2(0.5, -0.5)
MAXIMALLY_MIXED = DensityMatrix2(0.5, 0.0)


@dataclass(frozen=True)
class PureStateAngles:
    """Angles of ``cos(theta)|e> + sin(theta) e^{i phi}|g>``.

    The natural ranges are ``theta in [0, pi/2]`` and ``phi in [0, pi]``.
    Values outside are kept (the state is still well defined) but trigger a
    warning, and :meth:`reduced` maps them back into the natural ranges.
    """

    theta_angle: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta_angle) and math.isfinite(self.phi)):
            raise ValueError("angles must be finite")
        if not (0 <= self.theta_angle <= math.pi / 2 and 0 <= self.phi <= math.pi):
            warnings.warn(
                f"angles (theta={self.theta_angle}, phi={self.phi}) outside "
                "[0, pi/2] x [0, pi]; the state is taken modulo its periodicity",
                stacklevel=3,
            )

    def reduced(self) -> "PureStateAngles":
        """Equivalent angles with ``theta in [0, pi/2]`` and ``phi in [0, pi]``.

        Populations only fix ``theta`` up to the reflections ``theta -> -theta``
        and ``theta -> pi - theta`` (which flip the coherence sign, absorbed
        into ``phi``). ``phi`` and ``2 pi - phi`` give complex-conjugate
        states; conjugation leaves every quantity computed here unchanged, so
        ``phi`` is folded into ``[0, pi]`` as well.
        """
        ee = math.cos(self.theta_angle) ** 2
        eg = math.cos(self.theta_angle) * math.sin(self.theta_angle) * complex(
            math.cos(self.phi), -math.sin(self.phi))
        theta = math.acos(min(1.0, math.sqrt(ee)))
        if abs(eg) == 0.0:
            phi = 0.0
        else:
            phi = abs(math.atan2(-eg.imag, eg.real))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return PureStateAngles(theta, phi)


def pure_state_from_angles(angles: PureStateAngles) -> DensityMatrix2:
    """Density matrix of ``cos(theta)|e> + sin(theta) e^{i phi}|g>``."""
    c = math.cos(angles.theta_angle)
    s = math.sin(angles.theta_angle)
    return DensityMatrix2(c * c, c * s * complex(math.cos(angles.phi), -math.sin(angles.phi)))


def purity(rho: DensityMatrix2):
    """``Tr(rho^2)``."""
    ee = np.asarray(rho.ee)
    out = ee ** 2 + (1 - ee) ** 2 + 2 * np.abs(rho.eg) ** 2
    return float(out) if out.ndim == 0 else out


def trace_distance(rho1: DensityMatrix2, rho2: DensityMatrix2):
    """Trace distance ``Tr|rho1 - rho2| / 2``.

    The difference of two qubit states is traceless Hermitian with
    eigenvalues ``+-sqrt(d^2 + |o|^2)``.
    """
    d = np.asarray(rho1.ee) - np.asarray(rho2.ee)
    o = np.asarray(rho1.eg) - np.asarray(rho2.eg)
    out = np.hypot(d, np.abs(o))
    return float(out) if out.ndim == 0 else out


def spectral_density(omega_arg, params: ModelParams):
    """Lorentzian reservoir spectrum ``J(w) = Theta/(2 pi) g^2 / ((w0 - w)^2 + g^2)``."""
    if params.is_memoryless:
        raise ValueError("the memoryless reservoir has no finite-width spectrum")
    g = params.reservoir.gamma
    w = np.asarray(omega_arg, dtype=float)
    out = params.theta / (2 * np.pi) * g * g / ((params.center_frequency - w) ** 2 + g * g)
    return float(out) if out.ndim == 0 else out
