"""Shared fixtures: node layouts, finite-difference oracles, and the
end-of-session report of accuracy-gate outcomes."""

import numpy as np
import pytest

import rbfherm as rh

# Filled by the accuracy-gate tests; echoed after the run so the PASS/FAIL
# line per criterion is visible even when pytest captures stdout.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def criterion_lines():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def disk_nodes():
    """The standard 56-node minimum-energy layout (R=0.1, seed 1)."""
    return rh.disk_node_set()


@pytest.fixture(scope="session")
def cost_nodes():
    """The 104-node layout with triangle evaluation nodes (R=1, seed 1)."""
    return rh.cost_node_set()


@pytest.fixture(scope="session")
def small_nodes():
    """15 quasi-uniform nodes in the unit disk, cheap and well separated."""
    return rh.min_energy_disk_nodes(15, 1.0, seed=3).points


def fd_gradient(func, X, step=1e-6):
    """Central finite differences of a scalar field, one column per axis."""
    X = np.asarray(X, dtype=float)
    out = np.zeros_like(X)
    for axis in range(2):
        e = np.zeros(2)
        e[axis] = step
        out[:, axis] = (func(X + e) - func(X - e)) / (2.0 * step)
    return out


def rel_err(approx, exact):
    """Max elementwise error scaled by max(1, |exact|)."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    return float(np.max(np.abs(approx - exact) / np.maximum(1.0, np.abs(exact))))
