"""Dense solves for the collocation systems, all in standard double precision.

LU with partial pivoting (LAPACK getrf/getrs) plus the Hager-style 1-norm
condition estimate (gecon) on the same factorization.  Near-singular systems
are reported, not rejected: the interesting interpolation regimes live deep
in ill-conditioned territory and must still produce numbers to plot.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack

# Pivots below this multiple of machine epsilon times max|A| mark the
# factorization as numerically singular.
_PIVOT_RTOL = 1e3 * np.finfo(float).eps


@dataclass
class SolveReport:
    """Solution of one dense system with its quality diagnostics.

    residual_inf is ||Ax - b||_inf / max(1, ||b||_inf) against the original
    matrix.  cond_estimate is the 1-norm condition estimate (+inf when the
    factorization is numerically singular).  degenerate marks an exact zero
    pivot whose non-finite solution entries were replaced by zeros.
    """

    solution: np.ndarray
    residual_inf: float
    cond_estimate: float
    singular: bool
    degenerate: bool = False


def _check_square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    return A


def solve_dense(A, b):
    """Solve Ax = b by partially pivoted LU and report solution quality.

    Returns a SolveReport.  Singular and near-singular systems still return
    a solution (garbage entries from an exact zero pivot are zeroed and
    flagged degenerate) so callers can record the failure instead of dying.
    """
    A = _check_square(A)
    b = np.asarray(b, dtype=float).ravel()
    if b.shape[0] != A.shape[0]:
        raise ValueError(f"rhs length {b.shape[0]} does not match matrix {A.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError("rhs contains non-finite entries")

    lu, piv, info = lapack.dgetrf(A)
    max_abs = float(np.max(np.abs(A)))
    pivots = np.abs(np.diag(lu))
    singular = bool(info > 0 or pivots.min() < _PIVOT_RTOL * max_abs)

    x, _ = lapack.dgetrs(lu, piv, b)
    degenerate = not bool(np.all(np.isfinite(x)))
    if degenerate:
        x = np.where(np.isfinite(x), x, 0.0)

    residual = float(np.max(np.abs(A @ x - b))) / max(1.0, float(np.max(np.abs(b))))
    cond = np.inf if singular else _cond_from_factorization(A, lu)
    return SolveReport(
        solution=x,
        residual_inf=residual,
        cond_estimate=cond,
        singular=singular,
        degenerate=degenerate,
    )


def _cond_from_factorization(A, lu):
    anorm = float(np.max(np.abs(A).sum(axis=0)))
    if anorm == 0.0:
        return np.inf
    rcond, info = lapack.dgecon(lu, anorm, norm="1")
    if info != 0 or rcond <= 0.0:
        return np.inf
    return 1.0 / float(rcond)


def cond_estimate_1norm(A):
    """1-norm condition estimate ||A||_1 * est(||A^-1||_1).

    Uses the Hager-style iteration on the LU factorization; accurate to a
    small factor of the true kappa_1.  Numerically singular matrices return
    +inf.
    """
    A = _check_square(A)
    lu, piv, info = lapack.dgetrf(A)
    pivots = np.abs(np.diag(lu))
    if info > 0 or pivots.min() < _PIVOT_RTOL * float(np.max(np.abs(A))):
        return np.inf
    return _cond_from_factorization(A, lu)
