"""
The decoherence function Gamma(t).

Gamma is the excited-state amplitude ``b(t)`` of the atom when the cavity and
reservoir start in vacuum. Its Laplace image is the rational function

    Upsilon(p) = N(p) / D(p)
    N(p) = 2 p (p + g) + T g
    D(p) = 2 (p^2 + W^2)(p + g) + p T g
         = 2 p^3 + 2 g p^2 + (2 W^2 + T g) p + 2 W^2 g

with ``W`` the atom-cavity coupling, ``T`` the cavity-reservoir coupling and
``g`` the reservoir width. Three independent evaluations are provided:

* :func:`gamma_analytic` - residue sum over the three poles of Upsilon.
* :func:`gamma_memoryless` - closed form of the ``g -> inf`` limit.
* :func:`gamma_ode_oracle` - fixed-step RK4 on the amplitude equations, with
  the exponential memory kernel folded into one auxiliary variable.

Functions taking :class:`~eurdyn.model.ModelParams` work on dimensionless
time grids ``Omega*t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams

__all__ = [
    "PoleError",
    "StepSizeError",
    "RationalImage",
    "RootSet",
    "PropagatorCurve",
    "OracleState",
    "rational_image",
    "upsilon",
    "denominator_roots",
    "gamma_analytic",
    "gamma_memoryless",
    "gamma_ode_oracle",
    "integrate_amplitudes",
    "decoherence_curve",
    "DEGENERACY_TOL",
]

# relative pole separation below which residues lose accuracy (error ~ eps/sep^3)
DEGENERACY_TOL = 1e-2
GAMMA_BOUND_TOL = 1e-9
IMAG_TOL = 1e-9


class PoleError(ZeroDivisionError):
    """Upsilon evaluated at (or numerically on top of) a pole."""


class StepSizeError(RuntimeError):
    """The RK4 oracle could not meet its error tolerance."""


@dataclass(frozen=True)
class RationalImage:
    """Coefficients (highest power first) of ``N`` and ``D``."""

    numerator: np.ndarray
    denominator: np.ndarray

    def __call__(self, p):
        den = np.polyval(self.denominator, p)
        if np.any(np.abs(den) < 1e-300):
            raise PoleError(f"Upsilon has a pole at p={p}")
        return np.polyval(self.numerator, p) / den


def rational_image(theta: float, gamma: float, omega: float = 1.0) -> RationalImage:
    num = np.array([2.0, 2.0 * gamma, theta * gamma])
    den = np.array([2.0, 2.0 * gamma, 2.0 * omega ** 2 + theta * gamma, 2.0 * omega ** 2 * gamma])
    return RationalImage(num, den)


def upsilon(p, params: ModelParams):
    """Laplace image of Gamma at complex ``p`` (in units of Omega)."""
    if params.is_memoryless:
        raise ValueError("upsilon needs a finite reservoir width")
    th, g = params.scaled()
    return rational_image(th, g)(p)


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    near_degenerate: bool

    def __iter__(self):
        return iter(self.roots)


def _polish(coeffs, root, derivative):
    # One Newton step; keep the original if it does not reduce the residual.
    f = np.polyval(coeffs, root)
    df = np.polyval(derivative, root)
    if df == 0:
        return root
    cand = root - f / df
    return cand if abs(np.polyval(coeffs, cand)) <= abs(f) else root


def _symmetrize(roots):
    """Enforce exact conjugate pairing for the roots of a real cubic."""
    roots = sorted(roots, key=lambda z: (abs(z.imag), z.real))
    real_root = complex(roots[0].real, 0.0)
    a, b = roots[1], roots[2]
    scale = max(1.0, abs(a), abs(b))
    if abs(a.imag) <= 1e-14 * scale and abs(b.imag) <= 1e-14 * scale:
        pair = [complex(a.real, 0.0), complex(b.real, 0.0)]
    elif abs(a - np.conj(b)) <= 1e-6 * scale:
        z = complex(0.5 * (a.real + b.real), 0.5 * (abs(a.imag) + abs(b.imag)))
        pair = [z, z.conjugate()]
    else:
        # three real roots with round-off imaginary parts
        pair = [complex(a.real, 0.0), complex(b.real, 0.0)]
    out = np.array([real_root] + pair)
    return out[np.lexsort((out.imag, out.real))]


def denominator_roots(params: ModelParams) -> RootSet:
    """Roots of ``D(p)`` in units of Omega.

    Eigenvalues of the companion matrix, one Newton polish each, then exact
    conjugate symmetrisation.
    """
    if params.is_memoryless:
        raise ValueError("denominator_roots needs a finite reservoir width")
    th, g = params.scaled()
    return _roots_scaled(th, g)


def _roots_scaled(th: float, g: float) -> RootSet:
    den = rational_image(th, g).denominator
    monic = den / den[0]
    companion = np.zeros((3, 3))
    companion[0, :] = -monic[1:]
    companion[1, 0] = 1.0
    companion[2, 1] = 1.0
    raw = np.linalg.eigvals(companion).astype(complex)
    deriv = np.polyder(den)
    roots = _symmetrize([_polish(den, r, deriv) for r in raw])
    # each pair is measured against its own magnitude: a far pole does not
    # make a well-separated close pair ill-conditioned
    seps = [abs(roots[i] - roots[j]) / max(abs(roots[i]), abs(roots[j]), 1e-300)
            for i in range(3) for j in range(i + 1, 3)]
    return RootSet(roots, bool(min(seps) < DEGENERACY_TOL))


@dataclass(frozen=True)
class PropagatorCurve:
    """Gamma sampled on a time grid of ``Omega*t`` values.

    ``method`` is ``"analytic"``, ``"memoryless"`` or ``"oracle"``;
    ``error_estimate`` is only filled by the oracle (Richardson estimate).
    """

    t: np.ndarray
    gamma: np.ndarray
    method: str
    error_estimate: float | None = None
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.t.shape != self.gamma.shape:
            raise ValueError("t and gamma must have the same shape")
        if np.any(np.abs(self.gamma) > 1 + GAMMA_BOUND_TOL):
            raise ValueError(f"|Gamma| exceeds 1: max {np.max(np.abs(self.gamma))}")

    def __len__(self):
        return len(self.t)

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


def _as_grid(t_grid) -> np.ndarray:
    t = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if t.ndim != 1:
        raise ValueError("time grid must be one-dimensional")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ValueError("times must be finite and >= 0")
    return t


def _residue_sum(t: np.ndarray, th: float, g: float, roots: np.ndarray) -> np.ndarray:
    image = rational_image(th, g)
    residues = np.polyval(image.numerator, roots) / np.polyval(np.polyder(image.denominator), roots)
    total = np.zeros(t.shape, dtype=complex)
    for r, p in zip(residues, roots):
        total += r * np.exp(p * t)
    bad = np.max(np.abs(total.imag), initial=0.0)
    if bad >= IMAG_TOL:
        raise ArithmeticError(f"residue sum not real: |Im| = {bad:.3e}")
    out = total.real
    # the residues sum to 1 up to rounding; Gamma(0) = 1 is exact
    out[t == 0.0] = 1.0
    return out


def gamma_analytic(t_grid, params: ModelParams) -> PropagatorCurve:
    """Gamma by inverse Laplace transform through simple-pole residues.

    When two poles come within :data:`DEGENERACY_TOL` (relative) of each
    other the residues are ill-conditioned; the curve is then computed by
    :func:`gamma_ode_oracle` and tagged ``"oracle"``.
    """
    if params.is_memoryless:
        raise ValueError("gamma_analytic needs a finite reservoir width; use gamma_memoryless")
    t = _as_grid(t_grid)
    th, g = params.scaled()
    rs = _roots_scaled(th, g)
    if rs.near_degenerate:
        curve = gamma_ode_oracle(t, params)
        return PropagatorCurve(curve.t, curve.gamma, "oracle", curve.error_estimate,
                               ("near-degenerate poles: analytic residues replaced by oracle",))
    return PropagatorCurve(t, _residue_sum(t, th, g, rs.roots), "analytic")


def gamma_memoryless(t, omega: float, theta: float):
    """Closed-form Gamma for a memoryless reservoir.

    ``exp(-T t/4) [ (T/L) sinh(L t/4) + cosh(L t/4) ]`` with
    ``L = sqrt(T^2 - 16 W^2)``, evaluated in complex arithmetic so that the
    over- and under-damped regimes share one code path. The hyperbolic
    functions are expanded into decaying exponentials (with ``expm1`` for the
    sinh part) so large ``T t`` neither overflows nor cancels.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be >= 0")
    lam = np.sqrt(complex(theta * theta - 16.0 * omega * omega))
    if abs(lam) < 1e-8 * theta:
        out = np.exp(-theta * t_arr / 4) * (1 + theta * t_arr / 4)
    elif theta == 0.0:
        out = np.cos(omega * t_arr)
    else:
        up = np.exp((lam - theta) * t_arr / 4)
        # e^{-Tt/4} cosh(Lt/4) and e^{-Tt/4} sinh(Lt/4)
        ch = 0.5 * (up + np.exp((-lam - theta) * t_arr / 4))
        sh = -0.5 * up * np.expm1(-lam * t_arr / 2)
        z = (theta / lam) * sh + ch
        if np.max(np.abs(np.imag(z)), initial=0.0) >= 1e-12:
            raise ArithmeticError("memoryless Gamma acquired an imaginary part")
        out = np.real(z)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class OracleState:
    """Amplitudes ``(b, c, z)`` at time ``t``.

    ``b``: atom excited, ``c``: cavity photon, ``z``: memory integral
    ``int_0^t alpha(t, s) c(s) ds`` for the exponential kernel.
    """

    b: complex
    c: complex
    z: complex
    t: float

    @property
    def norm2(self) -> float:
        return abs(self.b) ** 2 + abs(self.c) ** 2


def _rhs_matrix(omega: float, theta: float, gamma: float) -> np.ndarray:
    # d/dt (b, c, z) = A (b, c, z)
    return np.array([
        [0.0, -1j * omega, 0.0],
        [-1j * omega, 0.0, -1.0],
        [0.0, 0.5 * theta * gamma, -gamma],
    ], dtype=complex)


def _rk4_step(f, y, h):
    k1 = f(y)
    k2 = f(y + 0.5 * h * k1)
    k3 = f(y + 0.5 * h * k2)
    k4 = f(y + h * k3)
    return y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _rk4_transfer(a: np.ndarray, h: float, substeps: int) -> np.ndarray:
    """Map of ``substeps`` classic RK4 steps of size ``h / substeps``.

    The right-hand side is linear and autonomous, so stepping the identity
    columns gives the exact one-step RK4 map.
    """
    hs = h / substeps
    step = _rk4_step(lambda y: a @ y, np.eye(3, dtype=complex), hs)
    return np.linalg.matrix_power(step, substeps)


def _propagate(transfer: np.ndarray, n: int, y0: np.ndarray) -> np.ndarray:
    out = np.empty((n, 3), dtype=complex)
    y = y0.copy()
    out[0] = y
    for i in range(1, n):
        y = transfer @ y
        out[i] = y
    return out


def _substeps(span: float, h: float, bound: float) -> int:
    return max(1, math.ceil(span / h - 1e-9), math.ceil(span * bound / 0.5 - 1e-9))


def _solve(t: np.ndarray, a: np.ndarray, h: float, refine: int) -> np.ndarray:
    y0 = np.array([1.0, 0.0, 0.0], dtype=complex)
    bound = np.max(np.sum(np.abs(a), axis=1))
    uniform = (len(t) > 1 and t[0] == 0.0
               and np.allclose(np.diff(t), t[1] - t[0], rtol=1e-9, atol=1e-12))
    if uniform:
        dt = t[1] - t[0]
        k = refine * _substeps(dt, h, bound)
        return _propagate(_rk4_transfer(a, dt, k), len(t), y0)
    # arbitrary grid: each point gets its own equal-step march from t = 0
    out = np.empty((len(t), 3), dtype=complex)
    for i, ti in enumerate(t):
        if ti == 0.0:
            out[i] = y0
        else:
            out[i] = _rk4_transfer(a, ti, refine * _substeps(ti, h, bound)) @ y0
    return out


def integrate_amplitudes(t_grid, omega: float, theta: float, gamma: float,
                         h: float = 1e-3, tol: float = 1e-7,
                         return_states: bool = False):
    """RK4 solution of the one-excitation amplitude equations.

    ::

        b' = -i W c
        c' = -i W b - z
        z' = -g z + (T g / 2) c

    with ``b(0) = 1, c(0) = z(0) = 0``. On a uniform grid starting at 0 the
    spacing is split into equal RK4 substeps no longer than ``h`` and short
    enough that ``h * ||A||_inf <= 0.5`` (stability for large ``g``); any
    other grid is integrated point by point with the same rule. The run is
    repeated with half the substep and the Richardson estimate
    ``|y_h - y_{h/2}| * 16/15`` must stay below ``tol``.

    Returns ``(b, error_estimate)`` or, with ``return_states``, a list of
    :class:`OracleState` instead of ``b``.
    """
    t = _as_grid(t_grid)
    a = _rhs_matrix(omega, theta, gamma)
    coarse = _solve(t, a, h, 1)
    fine = _solve(t, a, h, 2)
    err = float(np.max(np.abs(coarse - fine)) * 16.0 / 15.0)
    if not err <= tol:
        raise StepSizeError(f"RK4 error estimate {err:.3e} exceeds tolerance {tol:.1e}")
    if return_states:
        return [OracleState(*y, float(ti)) for y, ti in zip(fine, t)], err
    return fine[:, 0], err


def gamma_ode_oracle(t_grid, params: ModelParams, h: float = 1e-3,
                     tol: float = 1e-7) -> PropagatorCurve:
    """Gamma from direct integration of the amplitude equations (units of Omega)."""
    if params.is_memoryless:
        raise ValueError("the ODE oracle needs a finite reservoir width")
    th, g = params.scaled()
    b, err = integrate_amplitudes(t_grid, 1.0, th, g, h=h, tol=tol)
    if np.max(np.abs(b.imag), initial=0.0) > 1e-6:
        raise ArithmeticError("oracle amplitude b(t) is not real")
    t = _as_grid(t_grid)
    return PropagatorCurve(t, b.real, "oracle", err)


def decoherence_curve(t_grid, params: ModelParams) -> PropagatorCurve:
    """Gamma for either reservoir: residues if Lorentzian, closed form if memoryless."""
    if params.is_memoryless:
        t = _as_grid(t_grid)
        th, _ = params.scaled()
        return PropagatorCurve(t, np.asarray(gamma_memoryless(t, 1.0, th), dtype=float), "memoryless")
    return gamma_analytic(t_grid, params)
