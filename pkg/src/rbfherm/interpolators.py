"""Collocation assembly and the fit/predict interpolation estimators.

Four methods share one skeleton:

* plain RBF            -- kernel translates, value conditions only
* augmented RBF        -- plus a polynomial tail and moment constraints
* Hermite RBF          -- kernel and kernel-derivative translates, value and
                          gradient conditions (needs second kernel derivatives)
* scaled Hermite RBF   -- monomial-scaled kernel translates, value and
                          gradient conditions (first kernel derivatives only)

Every system is built row-wise: each row applies one functional (point
evaluation, d/dx, d/dy, or a moment constraint) to every basis function, so
the interpolation conditions hold by construction.  The Hermite gradient
basis differentiates the kernel with respect to its center, which makes the
collocation matrix exactly symmetric entrywise; evaluating the fitted
interpolant uses the matching sign convention.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points, check_values, check_gradients, check_distinct
from .kernels import (
    Kernel,
    make_kernel,
    scaled_basis_values,
    scaled_basis_gradients,
)
from .polynomials import PolyBasis
from .linalg import solve_dense


# ---------------------------------------------------------------------------
# row builders (shared by assembly and evaluation)

def _diffs(P, C):
    return P[:, np.newaxis, :] - C[np.newaxis, :, :]


def _rbf_value_rows(kernel, P, C):
    d = _diffs(P, C)
    r = np.sqrt(np.sum(d * d, axis=-1))
    return kernel.value(r)


def _rbf_deriv_rows(kernel, P, C):
    _, g = kernel.first_derivs(_diffs(P, C))
    return g


def _hermite_value_rows(kernel, P, C):
    phi, g = kernel.first_derivs(_diffs(P, C))
    return np.concatenate([phi, -g[..., 0], -g[..., 1]], axis=1)


def _hermite_deriv_rows(kernel, P, C):
    _, g, H = kernel.second_derivs(_diffs(P, C))
    ddx = np.concatenate([g[..., 0], -H[..., 0, 0], -H[..., 0, 1]], axis=1)
    ddy = np.concatenate([g[..., 1], -H[..., 0, 1], -H[..., 1, 1]], axis=1)
    return np.stack([ddx, ddy], axis=-1)


def _scaled_value_rows(kernel, n, P, C):
    pw, pa, pb = scaled_basis_values(kernel, n, _diffs(P, C))
    return np.concatenate([pw, pa, pb], axis=1)


def _scaled_deriv_rows(kernel, n, P, C):
    gw, ga, gb = scaled_basis_gradients(kernel, n, _diffs(P, C))
    ddx = np.concatenate([gw[..., 0], ga[..., 0], gb[..., 0]], axis=1)
    ddy = np.concatenate([gw[..., 1], ga[..., 1], gb[..., 1]], axis=1)
    return np.stack([ddx, ddy], axis=-1)


def _hermite_poly_columns(poly, X):
    """Polynomial columns for the value/ddx/ddy row blocks, stacked (3N, M)."""
    vals = poly.evaluate(X)
    grads = poly.gradient(X)
    return np.vstack([vals, grads[..., 0], grads[..., 1]])


def _border_with_poly(K, rhs, poly_columns):
    m = poly_columns.shape[1]
    A = np.block(
        [[K, poly_columns], [poly_columns.T, np.zeros((m, m))]]
    )
    return A, np.concatenate([rhs, np.zeros(m)])


def _check_fit_inputs(X, f, gradients=None, poly=None):
    X = check_points(X)
    if len(X) == 0:
        raise ValueError("at least one node is required")
    check_distinct(X)
    f = check_values(f, len(X), "f")
    if gradients is not None:
        gradients = check_gradients(gradients, len(X))
    if poly is not None and poly.n_terms > len(X):
        raise ValueError(
            f"augmentation degree {poly.degree} needs {poly.n_terms} terms but "
            f"only {len(X)} nodes are available"
        )
    return X, f, gradients


# ---------------------------------------------------------------------------
# assembly

def assemble_rbf_system(X, f, kernel, poly=None):
    """Collocation system for plain or polynomial-augmented RBF interpolation.

    Returns the (N+M, N+M) matrix [[A, P], [P^T, 0]] with A_ij = phi(||x_i -
    x_j||) and P_ij = p_j(x_i), and the right-hand side (f, 0).  Without
    augmentation the system is just (A, f).
    """
    X, f, _ = _check_fit_inputs(X, f, poly=poly)
    A = _rbf_value_rows(kernel, X, X)
    if poly is None:
        return A, f
    return _border_with_poly(A, f, poly.evaluate(X))


def assemble_hermite_system(X, f, gradients, kernel, poly=None):
    """Collocation system matching values and gradients with the Hermite basis.

    Row blocks enforce s = f, ds/dx = fx, ds/dy = fy at each node, then the
    moment constraints on the kernel weights and on the two gradient-weight
    vectors.  The kernel part of the matrix is exactly symmetric; second
    kernel derivatives appear in the gradient rows.  Dimension 3N + M.
    """
    X, f, gradients = _check_fit_inputs(X, f, gradients, poly)
    value_rows = _hermite_value_rows(kernel, X, X)
    deriv_rows = _hermite_deriv_rows(kernel, X, X)
    K = np.vstack([value_rows, deriv_rows[..., 0], deriv_rows[..., 1]])
    rhs = np.concatenate([f, gradients[:, 0], gradients[:, 1]])
    if poly is None:
        return K, rhs
    return _border_with_poly(K, rhs, _hermite_poly_columns(poly, X))


def assemble_scaled_hermite_system(X, f, gradients, kernel, monomial_degree, poly=None):
    """Collocation system for the monomial-scaled Hermite basis.

    Same row structure and dimension (3N + M) as the Hermite system, but the
    basis functions carry the monomial factors, the matrix is not symmetric,
    and the gradient rows come from the product rule so only first kernel
    derivatives are ever evaluated.
    """
    X, f, gradients = _check_fit_inputs(X, f, gradients, poly)
    value_rows = _scaled_value_rows(kernel, monomial_degree, X, X)
    deriv_rows = _scaled_deriv_rows(kernel, monomial_degree, X, X)
    K = np.vstack([value_rows, deriv_rows[..., 0], deriv_rows[..., 1]])
    rhs = np.concatenate([f, gradients[:, 0], gradients[:, 1]])
    if poly is None:
        return K, rhs
    return _border_with_poly(K, rhs, _hermite_poly_columns(poly, X))


# ---------------------------------------------------------------------------
# estimators

class _BaseRBFInterpolant(BaseEstimator):
    """Shared parameter resolution and evaluation machinery."""

    def _resolve_kernel(self):
        if isinstance(self.kernel, Kernel):
            return self.kernel
        return make_kernel(self.kernel, epsilon=self.epsilon)

    def _resolve_poly(self):
        return None if self.degree is None else PolyBasis(self.degree)

    def _finish_fit(self, X, kernel, poly, system, rhs, method):
        report = solve_dense(system, rhs)
        self.centers_ = X
        self.kernel_ = kernel
        self.poly_ = poly
        self.coef_ = report.solution
        self.solve_report_ = report
        self.n_unknowns_ = system.shape[0]
        self.method_ = method
        self.n_features_in_ = 2
        return report

    def _poly_split(self):
        m = 0 if self.poly_ is None else self.poly_.n_terms
        return self.coef_[: len(self.coef_) - m], self.coef_[len(self.coef_) - m :]

    def predict(self, X):
        """Evaluate the fitted interpolant at the given points."""
        check_is_fitted(self, "coef_")
        X = check_points(X)
        B = self._value_rows(X)
        if self.poly_ is not None:
            B = np.hstack([B, self.poly_.evaluate(X)])
        return B @ self.coef_

    def gradient(self, X):
        """Analytic gradient of the fitted interpolant, shape (n_points, 2)."""
        check_is_fitted(self, "coef_")
        X = check_points(X)
        G = self._deriv_rows(X)
        if self.poly_ is not None:
            G = np.concatenate([G, self.poly_.gradient(X)], axis=1)
        gx = np.ascontiguousarray(G[:, :, 0]) @ self.coef_
        gy = np.ascontiguousarray(G[:, :, 1]) @ self.coef_
        return np.stack([gx, gy], axis=1)


class RBFInterpolant(_BaseRBFInterpolant):
    """Scattered-data RBF interpolation, optionally polynomial-augmented.

    Parameters
    ----------
    kernel : str or Kernel, default="gaussian"
        Kernel family name ("gaussian"/"ga", "mq", "imq", "iq", "phs") or a
        ready-made kernel object.
    epsilon : float, default=1.0
        Shape parameter, used when ``kernel`` is an epsilon-bearing family
        name.
    degree : int or None, default=1
        Total degree of the appended polynomial tail; ``None`` fits the
        bare kernel expansion.

    Attributes
    ----------
    centers_ : ndarray of shape (n_nodes, 2)
    weights_ : ndarray of shape (n_nodes,)
    poly_weights_ : ndarray of shape (n_poly_terms,)
    solve_report_ : SolveReport
    n_unknowns_ : int

    Examples
    --------
    >>> interp = RBFInterpolant(epsilon=2.0, degree=1).fit(X, f)
    >>> interp.predict(X_new)
    """

    def __init__(self, kernel="gaussian", epsilon=1.0, degree=1):
        self.kernel = kernel
        self.epsilon = epsilon
        self.degree = degree

    def fit(self, X, y):
        """Fit interpolation weights to values sampled at the nodes."""
        kernel = self._resolve_kernel()
        poly = self._resolve_poly()
        X, y, _ = _check_fit_inputs(X, y, poly=poly)
        A, b = assemble_rbf_system(X, y, kernel, poly)
        method = "rbf" if poly is None else "rbf_poly"
        self._finish_fit(X, kernel, poly, A, b, method)
        self.weights_, self.poly_weights_ = self._poly_split()
        return self

    def _value_rows(self, X):
        return _rbf_value_rows(self.kernel_, X, self.centers_)

    def _deriv_rows(self, X):
        return _rbf_deriv_rows(self.kernel_, X, self.centers_)


class _HermiteBase(_BaseRBFInterpolant):
    def fit(self, X, y, gradients=None):
        """Fit to values and gradients sampled at the nodes.

        Parameters
        ----------
        X : array_like of shape (n_nodes, 2)
        y : array_like of shape (n_nodes,)
        gradients : array_like of shape (n_nodes, 2)
            Sampled gradient at each node; required.
        """
        if gradients is None:
            raise ValueError(f"{type(self).__name__} requires gradient samples")
        kernel = self._resolve_kernel()
        poly = self._resolve_poly()
        X, y, gradients = _check_fit_inputs(X, y, gradients, poly)
        A, b = self._assemble(X, y, gradients, kernel, poly)
        self._finish_fit(X, kernel, poly, A, b, self._method)
        n = len(X)
        kernel_coef, self.poly_weights_ = self._poly_split()
        self.weights_ = kernel_coef[:n]
        self.alpha_ = kernel_coef[n : 2 * n]
        self.beta_ = kernel_coef[2 * n :]
        return self


class HermiteRBFInterpolant(_HermiteBase):
    """Hermite RBF interpolation: matches values and gradients at the nodes.

    The basis pairs each kernel translate with its two center-derivative
    translates, giving a symmetric (3N + M)-dimensional collocation system
    whose assembly and evaluation require second kernel derivatives.

    Parameters are as for :class:`RBFInterpolant`.  Extra fitted attributes
    ``alpha_`` and ``beta_`` hold the gradient-basis weights.
    """

    _method = "hrbf"

    def __init__(self, kernel="gaussian", epsilon=1.0, degree=1):
        self.kernel = kernel
        self.epsilon = epsilon
        self.degree = degree

    def _assemble(self, X, y, gradients, kernel, poly):
        return assemble_hermite_system(X, y, gradients, kernel, poly)

    def _value_rows(self, X):
        return _hermite_value_rows(self.kernel_, X, self.centers_)

    def _deriv_rows(self, X):
        return _hermite_deriv_rows(self.kernel_, X, self.centers_)


class ModifiedHermiteRBFInterpolant(_HermiteBase):
    """Hermite interpolation with the monomial-scaled kernel basis.

    Each center contributes (x-xi)^n (y-yi)^n phi, (x-xi)^(2n) phi and
    (y-yi)^(2n) phi.  The monomial factors rebalance the kernel so accuracy
    holds over a much wider shape-parameter range, and both assembly and
    gradient evaluation get by on first kernel derivatives alone.

    Parameters
    ----------
    kernel, epsilon, degree : as for :class:`RBFInterpolant`.
    monomial_degree : int, default=4
        Degree n of the scaling monomials, n >= 1.
    """

    _method = "mhrbf"

    def __init__(self, kernel="gaussian", epsilon=1.0, monomial_degree=4, degree=1):
        self.kernel = kernel
        self.epsilon = epsilon
        self.monomial_degree = monomial_degree
        self.degree = degree

    def _assemble(self, X, y, gradients, kernel, poly):
        return assemble_scaled_hermite_system(
            X, y, gradients, kernel, self.monomial_degree, poly
        )

    def _value_rows(self, X):
        return _scaled_value_rows(self.kernel_, self.monomial_degree, X, self.centers_)

    def _deriv_rows(self, X):
        return _scaled_deriv_rows(self.kernel_, self.monomial_degree, X, self.centers_)


# ---------------------------------------------------------------------------
# reporting and serialization

@dataclass(frozen=True)
class ErrorReport:
    """Max-norm errors of an interpolant against a known truth."""

    err_f: float
    err_fx: float
    err_fy: float


def error_report(interp, eval_nodes, truth):
    """Max absolute error of values and both gradient components.

    Parameters
    ----------
    interp : fitted interpolant
    eval_nodes : array_like of shape (n_points, 2)
    truth : object with ``value(X)`` and ``gradient(X)`` methods
    """
    X = check_points(eval_nodes, "eval_nodes")
    if len(X) == 0:
        raise ValueError("eval_nodes must be nonempty")
    df = np.abs(interp.predict(X) - truth.value(X))
    dg = np.abs(interp.gradient(X) - truth.gradient(X))
    return ErrorReport(
        err_f=float(df.max()),
        err_fx=float(dg[:, 0].max()),
        err_fy=float(dg[:, 1].max()),
    )


def dump_weights(interp, path):
    """Write fitted weights as a small CSV-style debug dump.

    Line 1 names the fields (method, kernel, epsilon, n, degree), line 2
    holds their values, then one ``block,index,value`` row per weight.  Not
    a stability-guaranteed format.
    """
    check_is_fitted(interp, "coef_")
    kernel = interp.kernel_
    epsilon = f"{kernel.epsilon:.17g}" if kernel.uses_epsilon else "none"
    n = getattr(interp, "monomial_degree", None)
    degree = None if interp.poly_ is None else interp.poly_.degree
    blocks = [("w", interp.weights_)]
    if hasattr(interp, "alpha_"):
        blocks += [("alpha", interp.alpha_), ("beta", interp.beta_)]
    blocks.append(("lambda", interp.poly_weights_))
    with open(path, "w", newline="") as fh:
        fh.write("method,kernel,epsilon,n,degree\n")
        fh.write(
            f"{interp.method_},{kernel.name},{epsilon},"
            f"{'none' if n is None else n},{'none' if degree is None else degree}\n"
        )
        fh.write("block,index,value\n")
        for name, vec in blocks:
            for i, v in enumerate(vec):
                fh.write(f"{name},{i},{v:.17g}\n")
