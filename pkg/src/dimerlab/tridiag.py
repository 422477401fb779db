"""Symmetric tridiagonal eigensolver: implicit-shift QL with eigenvectors.

Self-contained (numba-accelerated) implementation; the independent
Sturm-sequence bisection check lives in `oracles`.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .errors import ConvergenceError

_EPS = float(np.finfo(np.float64).eps)

#: iteration cap per eigenvalue; QL converges cubically, 64 is a safety bound
MAX_QL_ITER = 64


@njit(cache=True)
def _ql_implicit(d, e, z, max_iter):  # pragma: no cover - exercised via wrapper
    """In-place implicit-shift QL sweep.

    d: diagonal (length n), becomes the unsorted eigenvalues.
    e: subdiagonal padded to length n (e[n-1] unused), destroyed.
    z: identity on input; accumulates the eigenvector columns.
    Returns the index of a non-converged eigenvalue, or -1 on success.
    """
    n = d.shape[0]
    for l in range(n):
        n_iter = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            n_iter += 1
            if n_iter > max_iter:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            if g >= 0.0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(n):
                    f = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * f
                    z[k, i] = c * z[k, i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def eigh_tridiagonal_ql(diag, offdiag, max_iter: int = MAX_QL_ITER):
    """Full eigendecomposition of a real symmetric tridiagonal matrix.

    Returns (eigenvalues ascending, eigenvector columns).
    """
    d = np.array(diag, dtype=np.float64)
    n = d.size
    e = np.zeros(n, dtype=np.float64)
    if n > 1:
        e[: n - 1] = np.asarray(offdiag, dtype=np.float64)
    z = np.eye(n)
    bad = _ql_implicit(d, e, z, max_iter)
    if bad >= 0:
        raise ConvergenceError(f"QL failed to converge for eigenvalue index {bad}")
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]
