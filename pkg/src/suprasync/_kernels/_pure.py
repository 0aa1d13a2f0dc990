"""Numpy fallback for the symmetric eigensolver kernel.

Same two-stage algorithm as the compiled extension: Householder reduction
to tridiagonal form, then implicit-shift QL with optional eigenvector
accumulation. Inner loops are vectorized with numpy instead of compiled,
so this backend is a few times slower but gives the same results.
"""

import math

import numpy as np

from suprasync.errors import ConvergenceError

MAX_QL_SWEEPS = 50


def decompose(work, vectors=True):
    """Eigendecomposition of a symmetric matrix.

    `work` must be a square, C-contiguous float64 array; it is destroyed.
    Returns ``(d, v)``: unsorted eigenvalues and, when `vectors`, the
    matrix whose columns are the matching eigenvectors (else ``None``).
    """
    n = work.shape[0]
    q = np.eye(n) if vectors else None
    d, e = _tridiagonalize(work, q)
    _ql_implicit(d, e, q)
    return d, q


def _tridiagonalize(a, q):
    """Householder similarity reduction; accumulates the transform in `q`."""
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        if not np.any(x[1:]):
            continue
        norm_x = math.sqrt(x @ x)
        alpha = -norm_x if x[0] >= 0.0 else norm_x
        v = x.copy()
        v[0] -= alpha
        v /= math.sqrt(2.0 * (norm_x * norm_x - alpha * x[0]))
        sub = a[k + 1:, k + 1:]
        w = sub @ v
        w2 = 2.0 * w - (2.0 * (v @ w)) * v
        sub -= np.outer(v, w2)
        sub -= np.outer(w2, v)
        x[0] = alpha
        x[1:] = 0.0
        if q is not None:
            cols = q[:, k + 1:]
            cols -= np.outer(2.0 * (cols @ v), v)
    d = np.diagonal(a).copy()
    e = np.empty(n)
    e[:n - 1] = np.diagonal(a, -1)
    e[n - 1] = 0.0
    return d, e


def _ql_implicit(d, e, q):
    """Implicit-shift QL on tridiagonal (d, e); rotates columns of `q`.

    `e[i]` holds the subdiagonal entry below `d[i]`; `e[-1]` is a sentinel.
    Subdiagonal entries are declared negligible against a running global
    scale, not their local neighbors: graded matrices otherwise stall,
    chasing locally-relative accuracy the rotations cannot deliver.
    """
    n = d.shape[0]
    if n == 1:
        return
    eps = np.finfo(np.float64).eps
    scale = 0.0
    for l in range(n):
        scale = max(scale, abs(d[l]) + abs(e[l]))
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * scale:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= MAX_QL_SWEEPS:
                raise ConvergenceError(
                    "implicit QL hit the sweep cap for one eigenvalue")
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
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
                if q is not None:
                    col = q[:, i + 1].copy()
                    q[:, i + 1] = s * q[:, i] + c * col
                    q[:, i] = c * q[:, i] - s * col
            if not underflow:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
