import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tswarp.signal import (
    Signal,
    ZeroVariation,
    derivative,
    derivative_density,
    grid,
    resample,
    trapezoid,
)

finite = st.floats(-1e3, 1e3, allow_nan=False)
signals = arrays(np.float64, st.integers(2, 60), elements=finite)


def test_resample_identity():
    s = np.array([0.3, -1.0, 2.5, 4.0])
    np.testing.assert_array_equal(resample(s, 4), s)


def test_resample_linear_cases():
    np.testing.assert_allclose(resample([0.0, 1.0], 3), [0.0, 0.5, 1.0])
    np.testing.assert_allclose(resample([0.0, 1.0, 0.0], 5), [0.0, 0.5, 1.0, 0.5, 0.0])


def test_resample_rejects_tiny_grid():
    with pytest.raises(ValueError):
        resample([0.0, 1.0], 1)


@given(signals, st.integers(2, 80))
def test_resample_idempotent_and_keeps_endpoints(s, m):
    once = resample(s, m)
    assert once[0] == s[0] and once[-1] == s[-1]
    np.testing.assert_array_equal(resample(once, m), once)


def test_signal_validation():
    with pytest.raises(ValueError):
        Signal([1.0])
    with pytest.raises(ValueError):
        Signal([0.0, np.nan, 1.0])
    sig = Signal([0.0, 1.0, 4.0])
    assert len(sig) == 3 and sig.step == 0.5
    with pytest.raises(ValueError):
        sig.samples[0] = 3.0


def test_derivative_examples():
    np.testing.assert_array_equal(derivative(np.full(7, 3.0)), np.zeros(7))
    x = grid(11)
    np.testing.assert_allclose(derivative(x), np.ones(11), atol=1e-12)
    # hand finite differences on a grid with step 0.5
    np.testing.assert_allclose(derivative([0.0, 0.25, 1.0]), [0.5, 1.0, 1.5])


@pytest.mark.parametrize("f, df", [
    (lambda x: np.sin(2 * np.pi * x), lambda x: 2 * np.pi * np.cos(2 * np.pi * x)),
    (lambda x: x**3 - x, lambda x: 3 * x**2 - 1),
])
def test_derivative_converges_under_refinement(f, df):
    errors = []
    for n in (33, 65, 129, 257):
        x = grid(n)
        # compare on the coarsest grid's interior nodes
        coarse = slice(None, None, (n - 1) // 32)
        errors.append(np.max(np.abs(derivative(f(x)) - df(x))[coarse][1:-1]))
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_density_of_linear_signals():
    x = grid(21)
    d = derivative_density(x)
    np.testing.assert_allclose(d.values, 1.0, atol=1e-12)
    assert d.mass == pytest.approx(1.0)
    d2 = derivative_density(2 * x)
    np.testing.assert_allclose(d2.values, 1.0, atol=1e-12)
    assert d2.mass == pytest.approx(2.0)


def test_density_of_tent():
    # |s'| = [2, 0, 2] on step 0.5; trapezoid gives 0.5 * (1 + 0 + 1) = 1
    d = derivative_density([0.0, 1.0, 0.0])
    assert d.mass == pytest.approx(1.0)
    np.testing.assert_allclose(d.values, [2.0, 0.0, 2.0])
    assert trapezoid(d.values, 0.5) == pytest.approx(1.0, abs=1e-12)


def test_constant_signal_has_no_density():
    with pytest.raises(ZeroVariation):
        derivative_density(np.full(10, 1.5))


@given(signals)
def test_density_integrates_to_one(s):
    try:
        d = derivative_density(s)
    except ZeroVariation:
        return
    assert np.all(d.values >= 0)
    assert trapezoid(d.values, d.step) == pytest.approx(1.0, abs=1e-9)
