"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""

from __future__ import annotations

import math

import numpy as np

from .errors import DataError, NumericalError

MAX_SWEEPS = 50
TOL = 1e-15


def jacobi_eigh(a, tol: float = TOL, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors (as columns) of symmetric ``a``.

    Sweeps over all off-diagonal pairs in row order, zeroing each with one
    plane rotation, until the off-diagonal Frobenius norm falls below
    ``tol`` times the matrix norm. Raises :class:`NumericalError` after
    ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DataError("jacobi_eigh needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise NumericalError("matrix has non-finite entries")
    scale = max(np.abs(a).max(initial=0.0), 1e-300)
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * scale):
        raise DataError("jacobi_eigh needs a symmetric matrix")
    a = (a + a.T) / 2
    n = a.shape[0]
    v = np.eye(n)
    fro = math.sqrt(float(np.sum(a * a)))

    for sweep in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)) * 2)
        if off <= tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app, aqq = a[p, p], a[q, q]
                g = 100.0 * abs(apq)
                # below rounding of both diagonal entries: drop it
                if sweep > 3 and abs(app) + g == abs(app) and abs(aqq) + g == abs(aqq):
                    a[p, q] = a[q, p] = 0.0
                    continue
                h = aqq - app
                if abs(h) + g == abs(h):
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise NumericalError(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]
