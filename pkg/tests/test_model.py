import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eurdyn.model import (
    EXCITED, GROUND, MAXIMALLY_MIXED, MINUS, PLUS,
    DensityMatrix2, InvalidStateError, Lorentzian, Memoryless, ModelParams,
    PureStateAngles, pure_state_from_angles, purity, spectral_density, trace_distance,
)

from conftest import random_state


def test_pure_state_examples():
    rho = pure_state_from_angles(PureStateAngles(0.0, 1.3))
    assert (rho.ee, rho.eg) == (1.0, 0.0)
    rho = pure_state_from_angles(PureStateAngles(math.pi / 2, 0.0))
    assert rho.ee == pytest.approx(0.0, abs=1e-16)
    assert abs(rho.eg) == pytest.approx(0.0, abs=1e-16)
    rho = pure_state_from_angles(PureStateAngles(math.pi / 4, 0.0))
    assert rho.ee == pytest.approx(0.5, abs=1e-15)
    assert rho.eg == pytest.approx(0.5, abs=1e-15)


def test_pure_state_matches_ket():
    theta, phi = 0.7, 2.1
    ket = np.array([math.cos(theta), math.sin(theta) * np.exp(1j * phi)])
    expected = np.outer(ket, ket.conj())
    rho = pure_state_from_angles(PureStateAngles(theta, phi))
    np.testing.assert_allclose(rho.matrix(), expected, atol=1e-15)


def test_pure_states_have_unit_purity_on_grid():
    for theta in np.linspace(0, math.pi / 2, 50):
        for phi in np.linspace(0, math.pi, 50):
            rho = pure_state_from_angles(PureStateAngles(theta, phi))
            assert abs(purity(rho) - 1) <= 1e-14


def test_purity_examples():
    assert purity(PLUS) == pytest.approx(1.0, abs=1e-15)
    assert purity(MAXIMALLY_MIXED) == 0.5
    assert purity(DensityMatrix2(0.5, 0.25)) == pytest.approx(0.625, abs=1e-15)


def test_purity_against_matrix_trace(rng):
    for _ in range(50):
        rho = random_state(rng)
        m = rho.matrix()
        assert purity(rho) == pytest.approx(np.trace(m @ m).real, abs=1e-14)
        assert 0.5 - 1e-15 <= purity(rho) <= 1 + 1e-15


def test_trace_distance_examples():
    assert trace_distance(PLUS, PLUS) == 0.0
    assert trace_distance(PLUS, MINUS) == pytest.approx(1.0, abs=1e-15)
    assert trace_distance(EXCITED, MAXIMALLY_MIXED) == pytest.approx(0.5, abs=1e-15)


def test_trace_distance_against_eigenvalues(rng):
    for _ in range(100):
        a, b = random_state(rng), random_state(rng)
        ev = np.linalg.eigvalsh(a.matrix() - b.matrix())
        assert trace_distance(a, b) == pytest.approx(0.5 * np.abs(ev).sum(), abs=1e-14)


def test_trace_distance_is_a_metric(rng):
    for _ in range(300):
        a, b, c = random_state(rng), random_state(rng), random_state(rng)
        assert trace_distance(a, b) == trace_distance(b, a)
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12


@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 2 * math.pi))
def test_validation_boundary(ee, r, arg):
    eg = r * math.sqrt(ee * (1 - ee)) * complex(math.cos(arg), math.sin(arg))
    rho = DensityMatrix2(ee, eg)
    assert 0.5 - 1e-12 <= purity(rho) <= 1 + 1e-12


@pytest.mark.parametrize("ee,eg", [(0.5, 0.5 + 1e-6), (0.0, 1e-5), (1.2, 0.0), (-0.1, 0.0),
                                   (0.3, float("nan"))])
def test_validation_rejects(ee, eg):
    with pytest.raises(InvalidStateError):
        DensityMatrix2(ee, eg)


def test_validation_tolerance():
    # |eg|^2 - ee(1-ee) just inside / outside 1e-12
    DensityMatrix2(0.5, math.sqrt(0.25 + 0.9e-12))
    with pytest.raises(InvalidStateError):
        DensityMatrix2(0.5, math.sqrt(0.25 + 1.1e-12))


def test_array_states_index():
    rho = DensityMatrix2(np.array([1.0, 0.5]), np.array([0.0, 0.5]))
    assert len(rho) == 2
    assert rho[1].eg == 0.5
    np.testing.assert_allclose(purity(rho), [1.0, 1.0])


def test_angles_outside_range_warn_and_reduce():
    with pytest.warns(UserWarning):
        a = PureStateAngles(3 * math.pi / 4, 0.3)
    r = a.reduced()
    assert 0 <= r.theta_angle <= math.pi / 2 and 0 <= r.phi <= math.pi
    rho, red = pure_state_from_angles(a), pure_state_from_angles(r)
    assert red.ee == pytest.approx(rho.ee, abs=1e-14)
    # equal up to complex conjugation
    assert red.eg.real == pytest.approx(rho.eg.real, abs=1e-14)
    assert abs(red.eg.imag) == pytest.approx(abs(rho.eg.imag), abs=1e-14)


def test_angles_in_range_do_not_warn():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        PureStateAngles(math.pi / 2, math.pi)


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0.0, 1.0)
    with pytest.raises(ValueError):
        ModelParams(1.0, -1.0)
    with pytest.raises(ValueError, match="gamma"):
        Lorentzian(0.0)
    p = ModelParams(2.0, 1.0, Lorentzian(4.0))
    assert p.scaled() == (0.5, 2.0)
    assert p.correlation_time == 0.25
    assert ModelParams(1.0, 1.0, Memoryless()).scaled()[1] == math.inf


def test_spectral_density():
    p = ModelParams(1.0, 2.0, Lorentzian(0.5), center_frequency=3.0)
    assert spectral_density(3.0, p) == pytest.approx(2.0 / (2 * math.pi))
    assert spectral_density(3.5, p) == pytest.approx(2.0 / (4 * math.pi))
    assert spectral_density(2.5, p) == pytest.approx(2.0 / (4 * math.pi))
    assert spectral_density(1e12, p) < 1e-20
    assert spectral_density(-1e12, p) < 1e-20
    with pytest.raises(ValueError):
        spectral_density(0.0, ModelParams(1.0, 1.0, Memoryless()))


def test_spectral_density_integral_matches_correlation():
    # int J(w) dw = Theta*gamma/2 = alpha(t, t)
    from scipy.integrate import quad
    p = ModelParams(1.0, 2.0, Lorentzian(0.5))
    total, _ = quad(lambda w: spectral_density(w, p), -np.inf, np.inf)
    assert total == pytest.approx(2.0 * 0.5 / 2, rel=1e-8)
