"""Benchmark targets: reference values, analytic gradients, ranges."""

import numpy as np
import pytest

from rbfherm.testfunctions import (
    CAMELBACK,
    TEST_FUNCTIONS,
    TRIG,
    get_test_function,
)

from conftest import fd_gradient, rel_err


def test_registry_contents():
    assert set(TEST_FUNCTIONS) == {"trig", "camelback"}
    assert get_test_function("trig") is TRIG
    assert get_test_function("camelback") is CAMELBACK
    with pytest.raises(ValueError, match="unknown test function"):
        get_test_function("rosenbrock")


def test_trig_reference_point():
    assert TRIG.value(np.zeros((1, 2)))[0] == 1.0
    assert np.array_equal(TRIG.gradient(np.zeros((1, 2)))[0], [9.0, 2.0])


def test_trig_range_is_bounded_by_three():
    rng = np.random.default_rng(8)
    X = rng.uniform(-10, 10, size=(5000, 2))
    assert np.all(np.abs(TRIG.value(X)) <= 3.0)


def test_camelback_reference_points():
    assert CAMELBACK.value(np.zeros((1, 2)))[0] == 0.0
    assert np.array_equal(CAMELBACK.gradient(np.zeros((1, 2)))[0], [0.0, 0.0])
    value = CAMELBACK.value(np.array([[1.0, 1.0]]))[0]
    assert np.isclose(value, 2.9 + 1.0 / 3.0, rtol=1e-15)


def test_camelback_matches_its_expanded_polynomial():
    rng = np.random.default_rng(12)
    X = rng.uniform(-2, 2, size=(50, 2))
    x, y = X[:, 0], X[:, 1]
    expanded = 4 * x**2 - 2.1 * x**4 + x**6 / 3 + x * y - 4 * y**2 + 4 * y**4
    np.testing.assert_allclose(CAMELBACK.value(X), expanded, rtol=1e-12)


@pytest.mark.parametrize("func", [TRIG, CAMELBACK], ids=lambda f: f.name)
def test_gradients_match_finite_differences(func):
    rng = np.random.default_rng(13)
    X = rng.uniform(-2, 2, size=(200, 2))
    assert rel_err(func.gradient(X), fd_gradient(func.value, X)) < 1e-8


def test_single_point_call_shapes():
    point = np.array([0.3, -0.4])
    assert np.ndim(TRIG.value(point)) == 0
    assert TRIG.gradient(point).shape == (2,)
    batch = np.array([[0.3, -0.4], [0.1, 0.2]])
    assert TRIG.value(batch).shape == (2,)
    assert TRIG.gradient(batch).shape == (2, 2)
