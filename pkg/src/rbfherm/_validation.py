"""Input validation helpers shared by the estimators and node utilities."""

import numpy as np


def check_points(X, name="X"):
    """Coerce to a finite (n, 2) float array of planar points."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1 and X.shape[0] == 2:
        X = X[np.newaxis, :]
    if X.ndim != 2 or X.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n_points, 2), got {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite values")
    return X


def check_values(y, n_points, name="y"):
    """Coerce to a finite 1-d float array with one value per point."""
    y = np.asarray(y, dtype=float).ravel()
    if y.shape[0] != n_points:
        raise ValueError(f"{name} has {y.shape[0]} entries, expected {n_points}")
    if not np.all(np.isfinite(y)):
        raise ValueError(f"{name} contains non-finite values")
    return y


def check_gradients(G, n_points, name="gradients"):
    """Coerce to a finite (n, 2) float array of sampled gradients."""
    G = np.asarray(G, dtype=float)
    if G.shape != (n_points, 2):
        raise ValueError(f"{name} must have shape ({n_points}, 2), got {G.shape}")
    if not np.all(np.isfinite(G)):
        raise ValueError(f"{name} contains non-finite values")
    return G


def check_distinct(X, name="X"):
    """Reject node sets with (near-)duplicate points.

    The collocation matrices become exactly singular for repeated centers,
    so duplicates are an input error rather than an ill-conditioned solve.
    """
    diffs = X[:, np.newaxis, :] - X[np.newaxis, :, :]
    dist = np.sqrt(np.sum(diffs * diffs, axis=-1))
    np.fill_diagonal(dist, np.inf)
    scale = max(1.0, float(np.max(np.abs(X))) if X.size else 1.0)
    if float(dist.min()) <= 1e-12 * scale:
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        raise ValueError(f"{name} contains duplicate points (rows {i} and {j})")
