"""2-d monomial basis of bounded total degree, used for augmentation blocks."""

import math

import numpy as np


def n_poly_terms(degree, dim=2):
    """Number of monomials of total degree <= degree in ``dim`` variables.

    ``degree=None`` means "no polynomial block" and counts as zero terms,
    which is distinct from ``degree=0`` (the constant alone).
    """
    if degree is None:
        return 0
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if int(degree) != degree or degree < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {degree}")
    return math.comb(int(degree) + dim, dim)


class PolyBasis:
    """Monomials x^i y^j with i + j <= degree in graded lexicographic order.

    The term order is fixed: 1, x, y, x^2, xy, y^2, x^3, ... (total degree
    ascending, x-power descending within a degree).  A fixed order keeps
    matrix layouts and serialized weights reproducible.
    """

    def __init__(self, degree):
        if int(degree) != degree or degree < 0:
            raise ValueError(f"degree must be a nonnegative integer, got {degree}")
        self.degree = int(degree)
        self.dim = 2
        exps = []
        for total in range(self.degree + 1):
            for j in range(total + 1):
                exps.append((total - j, j))
        self._exponents = np.array(exps, dtype=int)

    @property
    def n_terms(self):
        return len(self._exponents)

    @property
    def exponents(self):
        """(n_terms, 2) integer array of (x-power, y-power) per term."""
        return self._exponents.copy()

    def evaluate(self, X):
        """Evaluate every monomial at each point.

        Parameters
        ----------
        X : array_like, shape (n_points, 2)

        Returns
        -------
        ndarray, shape (n_points, n_terms)
        """
        X = np.asarray(X, dtype=float)
        x = X[:, 0:1]
        y = X[:, 1:2]
        ex = self._exponents[:, 0]
        ey = self._exponents[:, 1]
        return x**ex * y**ey

    def gradient(self, X):
        """Exact derivatives of every monomial at each point.

        Returns
        -------
        ndarray, shape (n_points, n_terms, 2)
        """
        X = np.asarray(X, dtype=float)
        x = X[:, 0:1]
        y = X[:, 1:2]
        ex = self._exponents[:, 0]
        ey = self._exponents[:, 1]
        # Clip the lowered exponent to 0 so x**(-1) never appears; the
        # leading factor of 0 kills those terms anyway.
        dx = ex * x ** np.maximum(ex - 1, 0) * y**ey
        dy = ey * x**ex * y ** np.maximum(ey - 1, 0)
        return np.stack([dx, dy], axis=-1)

    def __repr__(self):
        return f"PolyBasis(degree={self.degree})"
