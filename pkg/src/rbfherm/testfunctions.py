"""Benchmark target functions with hand-derived gradients."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TestFunction:
    """A scalar target f(x, y) with its analytic gradient."""

    name: str
    _value: callable
    _gradient: callable

    def value(self, X):
        X = np.asarray(X, dtype=float)
        return self._value(X[..., 0], X[..., 1])

    def gradient(self, X):
        X = np.asarray(X, dtype=float)
        fx, fy = self._gradient(X[..., 0], X[..., 1])
        return np.stack([fx, fy], axis=-1)


def _trig_value(x, y):
    return np.sin(6 * x) + np.cos(4 * y) + np.sin(3 * x + 2 * y)


def _trig_gradient(x, y):
    return (
        6 * np.cos(6 * x) + 3 * np.cos(3 * x + 2 * y),
        -4 * np.sin(4 * y) + 2 * np.cos(3 * x + 2 * y),
    )


def _camelback_value(x, y):
    return (4 - 2.1 * x**2 + x**4 / 3) * x**2 + x * y + (-4 + 4 * y**2) * y**2


def _camelback_gradient(x, y):
    return (
        8 * x - 8.4 * x**3 + 2 * x**5 + y,
        x - 8 * y + 16 * y**3,
    )


TRIG = TestFunction("trig", _trig_value, _trig_gradient)
CAMELBACK = TestFunction("camelback", _camelback_value, _camelback_gradient)

TEST_FUNCTIONS = {f.name: f for f in (TRIG, CAMELBACK)}


def get_test_function(name):
    try:
        return TEST_FUNCTIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown test function {name!r}; expected one of {sorted(TEST_FUNCTIONS)}"
        ) from None
