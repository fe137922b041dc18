"""Entropic uncertainty and non-Markovian dynamics of an atom in a lossy
cavity coupled to a Lorentzian bosonic reservoir."""

from .model import (
    DensityMatrix2,
    InvalidStateError,
    Lorentzian,
    Memoryless,
    ModelParams,
    PureStateAngles,
    pure_state_from_angles,
    purity,
    spectral_density,
    trace_distance,
)
from .propagator import (
    PropagatorCurve,
    decoherence_curve,
    denominator_roots,
    gamma_analytic,
    gamma_memoryless,
    gamma_ode_oracle,
    upsilon,
)
from .uncertainty import (
    X_BASIS,
    Z_BASIS,
    bound_cp,
    bound_deutsch,
    bound_kmu,
    entropic_sum_xz,
    measurement_entropy,
    overlap_constants,
    robertson_bound,
)
from .dynamics import evolve, optimal_pair_distance, time_series
from .nonmarkov import Regime, classify, critical_coupling, non_markovianity, sigma_rate
from .wmr import ZeroPostSelectionError, apply_wmr, wmr_uncertainty_sweep

__version__ = "0.1.0"
