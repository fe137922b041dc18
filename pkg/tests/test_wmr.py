import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eurdyn.model import EXCITED, DensityMatrix2, ModelParams, PureStateAngles
from eurdyn.uncertainty import entropic_sum_xz
from eurdyn.wmr import ZeroPostSelectionError, apply_wmr, success_probability, wmr_uncertainty_sweep

from conftest import random_state

states = st.tuples(st.floats(0, 1), st.floats(0, 1), st.floats(0, 2 * math.pi)).map(
    lambda x: DensityMatrix2(x[0], x[1] * math.sqrt(x[0] * (1 - x[0])) * complex(math.cos(x[2]), math.sin(x[2]))))


def test_identity_at_zero(rng):
    rho = random_state(rng)
    out = apply_wmr(rho, 0.0)
    assert out.ee == pytest.approx(rho.ee, abs=1e-16) and out.eg == pytest.approx(rho.eg, abs=1e-16)


def test_full_strength_gives_ground(rng):
    rho = random_state(rng)
    out = apply_wmr(rho, 1.0)
    assert out.ee == 0.0 and out.eg == 0.0


def test_excited_full_strength_fails():
    with pytest.raises(ZeroPostSelectionError):
        apply_wmr(EXCITED, 1.0)
    with pytest.raises(ValueError):
        apply_wmr(EXCITED, 1.5)


def test_matches_kraus_operator(rng):
    # M = diag(sqrt(1-m), 1); rho -> M rho M / Tr(M rho M)
    for _ in range(50):
        rho, m = random_state(rng), rng.uniform()
        k = np.diag([math.sqrt(1 - m), 1.0])
        ref = k @ rho.matrix() @ k
        assert success_probability(rho, m) == pytest.approx(np.trace(ref).real)
        ref /= np.trace(ref)
        out = apply_wmr(rho, m)
        np.testing.assert_allclose(out.matrix(), ref, atol=1e-14)


@given(states, st.floats(0, 0.999999))
def test_positivity_preserved(rho, m):
    out = apply_wmr(rho, m)  # validation at construction (1e-12)
    assert abs(out.eg) ** 2 <= out.ee * (1 - out.ee) + 1e-12


@given(states, st.floats(0, 0.999), st.floats(0, 0.999))
def test_composition(rho, m1, m2):
    a = apply_wmr(apply_wmr(rho, m1), m2)
    b = apply_wmr(rho, 1 - (1 - m1) * (1 - m2))
    assert a.ee == pytest.approx(b.ee, abs=1e-12)
    assert abs(a.eg - b.eg) <= 1e-12


def test_sweep_examples():
    angles = PureStateAngles(math.pi / 3, math.pi / 6)
    ms = np.linspace(0, 1, 100)
    for om in (0.1, 20.0):
        rows = wmr_uncertainty_sweep(ModelParams(om, 3.0), angles, 10.0, ms)
        s = np.array([v for _, v in rows])
        assert s[0] > s[-1]
        assert np.all(np.diff(s) <= 1e-9)
        assert s[-1] == pytest.approx(1.0, abs=1e-12)


def test_sweep_zero_strength_is_unmodified():
    from eurdyn.dynamics import time_series
    params, angles = ModelParams(1.0, 0.5), PureStateAngles(0.4, 1.0)
    ts = time_series(params, angles, 10.0, 11)
    (m, s), = wmr_uncertainty_sweep(params, angles, 10.0, [0.0])
    assert s == pytest.approx(ts.S_xz[-1], abs=1e-14)


def test_sweep_limit_to_ground():
    params, angles = ModelParams(1.0, 0.5), PureStateAngles(0.4, 1.0)
    rows = wmr_uncertainty_sweep(params, angles, 3.0, [1 - 1e-4, 1 - 1e-8, 1.0])
    vals = [s for _, s in rows]
    assert abs(vals[1] - 1) < abs(vals[0] - 1)
    assert vals[2] == pytest.approx(1.0, abs=1e-12)
