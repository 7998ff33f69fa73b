"""Radial kernels and the monomial-scaled basis functions built on them.

Every kernel exposes closed-form first and second Cartesian derivatives.
The derivatives are written per family in terms of two radial factors that
stay finite at r = 0 (for the infinitely smooth families), so the diagonal
blocks of Hermite collocation matrices are evaluated exactly rather than
through a numerically singular phi'(r)/r chain rule:

    grad phi = eta(r) * dx            with eta = phi'(r)/r
    hess phi = eta(r) * I + mu(r) * dx dx^T
                                      with mu = (phi''(r) - phi'(r)/r)/r^2

The monomial-scaled basis multiplies the kernel by (x-xi)^n (y-yi)^n,
(x-xi)^(2n) and (y-yi)^(2n); its gradients only ever need eta, never mu.
"""

import numpy as np


class Kernel:
    """Base class for radial kernels phi(r) with Cartesian derivatives."""

    name = None
    uses_epsilon = True

    def _phi(self, r):
        raise NotImplementedError

    def _eta(self, r):
        """phi'(r)/r in a form finite wherever the family allows."""
        raise NotImplementedError

    def _mu(self, r):
        """(phi''(r) - phi'(r)/r)/r^2 in a form finite wherever allowed."""
        raise NotImplementedError

    def value(self, r):
        """Evaluate phi(r) for nonnegative radii (vectorized)."""
        r = np.asarray(r, dtype=float)
        if not np.all(np.isfinite(r)):
            raise ValueError("radius contains non-finite values")
        if np.any(r < 0):
            raise ValueError("radius must be nonnegative")
        return self._phi(r)

    def first_derivs(self, dx):
        """Value and gradient of phi(||dx||) with respect to dx.

        Parameters
        ----------
        dx : array_like, shape (..., d)
            Offsets evaluation point minus center, d = 1 or 2.

        Returns
        -------
        phi : ndarray, shape (...,)
        grad : ndarray, shape (..., d)
        """
        dx = self._check_dx(dx)
        r = np.sqrt(np.sum(dx * dx, axis=-1))
        phi = self._phi(r)
        grad = self._eta(r)[..., np.newaxis] * dx
        return phi, grad

    def second_derivs(self, dx):
        """Value, gradient and Hessian of phi(||dx||) with respect to dx.

        Returns
        -------
        phi : ndarray, shape (...,)
        grad : ndarray, shape (..., d)
        hess : ndarray, shape (..., d, d)
        """
        dx = self._check_dx(dx)
        r = np.sqrt(np.sum(dx * dx, axis=-1))
        phi = self._phi(r)
        eta = self._eta(r)
        grad = eta[..., np.newaxis] * dx
        hess = self._mu(r)[..., np.newaxis, np.newaxis] * (
            dx[..., :, np.newaxis] * dx[..., np.newaxis, :]
        )
        d = dx.shape[-1]
        for i in range(d):
            hess[..., i, i] += eta
        return phi, grad, hess

    @staticmethod
    def _check_dx(dx):
        dx = np.asarray(dx, dtype=float)
        if dx.shape[-1] not in (1, 2):
            raise ValueError("offset vectors must have 1 or 2 components")
        if not np.all(np.isfinite(dx)):
            raise ValueError("offsets contain non-finite values")
        return dx

    def __repr__(self):
        if self.uses_epsilon:
            return f"{type(self).__name__}(epsilon={self.epsilon!r})"
        return f"{type(self).__name__}(exponent={self.exponent!r})"


class _ShapeKernel(Kernel):
    """Shared epsilon handling for the infinitely smooth families."""

    def __init__(self, epsilon=1.0):
        epsilon = float(epsilon)
        if not np.isfinite(epsilon) or epsilon <= 0:
            raise ValueError(f"epsilon must be a positive real, got {epsilon}")
        self.epsilon = epsilon


class Gaussian(_ShapeKernel):
    """phi(r) = exp(-(eps r)^2)."""

    name = "gaussian"

    def _phi(self, r):
        e = self.epsilon
        return np.exp(-(e * r) ** 2)

    def _eta(self, r):
        return -2.0 * self.epsilon**2 * self._phi(r)

    def _mu(self, r):
        return 4.0 * self.epsilon**4 * self._phi(r)


class Multiquadric(_ShapeKernel):
    """phi(r) = sqrt(1 + (eps r)^2)."""

    name = "multiquadric"

    def _s(self, r):
        return 1.0 + (self.epsilon * r) ** 2

    def _phi(self, r):
        return np.sqrt(self._s(r))

    def _eta(self, r):
        return self.epsilon**2 / np.sqrt(self._s(r))

    def _mu(self, r):
        return -(self.epsilon**4) * self._s(r) ** -1.5


class InverseMultiquadric(_ShapeKernel):
    """phi(r) = 1 / sqrt(1 + (eps r)^2)."""

    name = "inverse_multiquadric"

    def _s(self, r):
        return 1.0 + (self.epsilon * r) ** 2

    def _phi(self, r):
        return self._s(r) ** -0.5

    def _eta(self, r):
        return -(self.epsilon**2) * self._s(r) ** -1.5

    def _mu(self, r):
        return 3.0 * self.epsilon**4 * self._s(r) ** -2.5


class InverseQuadric(_ShapeKernel):
    """phi(r) = 1 / (1 + (eps r)^2)."""

    name = "inverse_quadric"

    def _s(self, r):
        return 1.0 + (self.epsilon * r) ** 2

    def _phi(self, r):
        return 1.0 / self._s(r)

    def _eta(self, r):
        return -2.0 * self.epsilon**2 * self._s(r) ** -2

    def _mu(self, r):
        return 8.0 * self.epsilon**4 * self._s(r) ** -3


class PolyharmonicSpline(Kernel):
    """Odd-order polyharmonic spline phi(r) = r^(2k-1).

    Has no shape parameter.  For exponent >= 3 the derivatives at r = 0 are
    the limiting value 0; the k = 1 spline (phi = r) has no derivative at
    the origin and raises there.
    """

    name = "polyharmonic"
    uses_epsilon = False

    def __init__(self, k=2):
        k = int(k)
        if k < 1:
            raise ValueError(f"polyharmonic order k must be a positive integer, got {k}")
        self.k = k
        self.exponent = 2 * k - 1

    def _phi(self, r):
        return r**self.exponent

    def first_derivs(self, dx):
        dx = self._check_dx(dx)
        r = np.sqrt(np.sum(dx * dx, axis=-1))
        m = self.exponent
        at_center = r == 0.0
        if m == 1 and np.any(at_center):
            raise ValueError(
                "polyharmonic spline r^1 has no derivative at dx = 0"
            )
        rs = np.where(at_center, 1.0, r)
        eta = np.where(at_center, 0.0, m * rs ** (m - 2))
        return r**m, eta[..., np.newaxis] * dx

    def second_derivs(self, dx):
        dx = self._check_dx(dx)
        r = np.sqrt(np.sum(dx * dx, axis=-1))
        m = self.exponent
        at_center = r == 0.0
        if m == 1 and np.any(at_center):
            raise ValueError(
                "polyharmonic spline r^1 has no derivative at dx = 0"
            )
        rs = np.where(at_center, 1.0, r)
        eta = np.where(at_center, 0.0, m * rs ** (m - 2))
        mu = np.where(at_center, 0.0, m * (m - 2) * rs ** (m - 4))
        grad = eta[..., np.newaxis] * dx
        hess = mu[..., np.newaxis, np.newaxis] * (
            dx[..., :, np.newaxis] * dx[..., np.newaxis, :]
        )
        d = dx.shape[-1]
        for i in range(d):
            hess[..., i, i] += eta
        return r**m, grad, hess


_FAMILIES = {
    "gaussian": Gaussian,
    "ga": Gaussian,
    "multiquadric": Multiquadric,
    "mq": Multiquadric,
    "inverse_multiquadric": InverseMultiquadric,
    "imq": InverseMultiquadric,
    "inverse_quadric": InverseQuadric,
    "iq": InverseQuadric,
    "polyharmonic": PolyharmonicSpline,
    "phs": PolyharmonicSpline,
}


def make_kernel(family, epsilon=1.0, k=2):
    """Build a kernel from a family name (``"gaussian"``/``"ga"``, ``"mq"``,
    ``"imq"``, ``"iq"``, ``"phs"``).  ``epsilon`` is ignored by ``"phs"``,
    which takes the order ``k`` instead."""
    if isinstance(family, Kernel):
        return family
    try:
        cls = _FAMILIES[str(family).lower()]
    except KeyError:
        raise ValueError(
            f"unknown kernel family {family!r}; expected one of "
            f"{sorted(set(_FAMILIES))}"
        ) from None
    if cls is PolyharmonicSpline:
        return cls(k=k)
    return cls(epsilon=epsilon)


def scaled_basis_values(kernel, n, dx):
    """Values of the three monomial-scaled basis functions at offsets dx.

    For dx = (u, v) = x - center and phi = phi(||dx||):

        psi_w = u^n v^n phi,  psi_a = u^(2n) phi,  psi_b = v^(2n) phi

    Parameters
    ----------
    kernel : Kernel
    n : int
        Monomial degree, n >= 1.
    dx : array_like, shape (..., 2)

    Returns
    -------
    psi_w, psi_a, psi_b : ndarray, shape (...,)
    """
    n = _check_monomial_degree(n)
    dx = Kernel._check_dx(dx)
    if dx.shape[-1] != 2:
        raise ValueError("scaled basis values require 2-d offsets")
    r = np.sqrt(np.sum(dx * dx, axis=-1))
    phi = kernel.value(r)
    u = dx[..., 0]
    v = dx[..., 1]
    un = u**n
    vn = v**n
    return un * vn * phi, un * un * phi, vn * vn * phi


def scaled_basis_gradients(kernel, n, dx):
    """Gradients of the monomial-scaled basis functions at offsets dx.

    Product rule throughout, so only first kernel derivatives appear; the
    Hessian path of the kernel is never touched.

    Returns
    -------
    grad_w, grad_a, grad_b : ndarray, shape (..., 2)
    """
    n = _check_monomial_degree(n)
    dx = Kernel._check_dx(dx)
    if dx.shape[-1] != 2:
        raise ValueError("scaled basis gradients require 2-d offsets")
    phi, grad = kernel.first_derivs(dx)
    gx = grad[..., 0]
    gy = grad[..., 1]
    u = dx[..., 0]
    v = dx[..., 1]
    un = u**n
    vn = v**n
    # 0**0 == 1.0 under IEEE, so n = 1 is safe at u = 0.
    unm1 = u ** (n - 1)
    vnm1 = v ** (n - 1)
    grad_w = np.stack(
        [
            n * unm1 * vn * phi + un * vn * gx,
            n * un * vnm1 * phi + un * vn * gy,
        ],
        axis=-1,
    )
    grad_a = np.stack(
        [
            2 * n * unm1 * un * phi + un * un * gx,
            un * un * gy,
        ],
        axis=-1,
    )
    grad_b = np.stack(
        [
            vn * vn * gx,
            2 * n * vnm1 * vn * phi + vn * vn * gy,
        ],
        axis=-1,
    )
    return grad_w, grad_a, grad_b


def scaled_kernel_1d(kernel, n, x, center=0.0):
    """One-dimensional scaled kernel (x - center)^n phi(|x - center|).

    Used by the diagnostics that study how the monomial degree reshapes a
    kernel's peak; the 2-d interpolants never call this.
    """
    n = _check_monomial_degree(n)
    t = np.asarray(x, dtype=float) - center
    return t**n * kernel.value(np.abs(t))


def scaled_gaussian_peak(n, epsilon=1.0):
    """Exact peak (location, amplitude) of |x|^n exp(-(eps x)^2) on x > 0.

    Setting the derivative of x^n exp(-(eps x)^2) to zero gives
    x* = sqrt(n/2)/eps and amplitude (n/2)^(n/2) exp(-n/2) / eps^n.
    """
    n = _check_monomial_degree(n)
    epsilon = float(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    location = np.sqrt(n / 2.0) / epsilon
    amplitude = (n / 2.0) ** (n / 2.0) * np.exp(-n / 2.0) / epsilon**n
    return location, amplitude


def _check_monomial_degree(n):
    if int(n) != n or int(n) < 1:
        raise ValueError(f"monomial degree must be an integer >= 1, got {n}")
    return int(n)
