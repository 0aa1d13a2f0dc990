# cython: language_level=3
"""Compiled symmetric eigensolver kernel.

Householder reduction to tridiagonal form followed by implicit-shift QL,
the same algorithm as the numpy fallback in `_pure`. Loops are plain C,
no BLAS, which keeps the extension dependency-free and the two backends
bit-comparable on the matrices this package produces.
"""

from libc.float cimport DBL_EPSILON
from libc.math cimport copysign, fabs, hypot, sqrt

import numpy as np

from suprasync.errors import ConvergenceError

MAX_QL_SWEEPS = 50

_DUMMY = np.zeros((1, 1))


def decompose(double[:, ::1] work not None, bint vectors=True):
    """Eigendecomposition of a symmetric matrix.

    `work` must be a square, C-contiguous float64 array; it is destroyed.
    Returns ``(d, v)``: unsorted eigenvalues and, when `vectors`, the
    matrix whose columns are the matching eigenvectors (else ``None``).
    """
    cdef Py_ssize_t n = work.shape[0]
    cdef Py_ssize_t i
    if work.shape[1] != n:
        raise ValueError("matrix must be square")
    d_arr = np.empty(n)
    e_arr = np.zeros(n)
    v_arr = np.eye(n) if vectors else _DUMMY
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef double[:, ::1] q = v_arr
    cdef double[::1] sv = np.empty(n)
    cdef double[::1] sw = np.empty(n)
    cdef int status
    with nogil:
        _tridiagonalize(work, q, vectors, sv, sw)
        for i in range(n):
            d[i] = work[i, i]
        for i in range(n - 1):
            e[i] = work[i + 1, i]
        status = _ql_implicit(d, e, q, n if vectors else 0)
    if status != 0:
        raise ConvergenceError("implicit QL hit the sweep cap for one eigenvalue")
    return d_arr, (v_arr if vectors else None)


cdef void _tridiagonalize(double[:, ::1] a, double[:, ::1] q, bint vectors,
                          double[::1] v, double[::1] w) nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double norm2, tail2, norm_x, alpha, scale, c, acc, vi, wi
    for k in range(n - 2):
        tail2 = 0.0
        for i in range(k + 2, n):
            tail2 += a[i, k] * a[i, k]
        if tail2 == 0.0:
            continue
        norm2 = tail2 + a[k + 1, k] * a[k + 1, k]
        norm_x = sqrt(norm2)
        alpha = -norm_x if a[k + 1, k] >= 0.0 else norm_x
        scale = sqrt(2.0 * (norm2 - alpha * a[k + 1, k]))
        v[k + 1] = (a[k + 1, k] - alpha) / scale
        for i in range(k + 2, n):
            v[i] = a[i, k] / scale
        for i in range(k + 1, n):
            acc = 0.0
            for j in range(k + 1, n):
                acc += a[i, j] * v[j]
            w[i] = acc
        c = 0.0
        for i in range(k + 1, n):
            c += v[i] * w[i]
        for i in range(k + 1, n):
            w[i] = 2.0 * w[i] - 2.0 * c * v[i]
        for i in range(k + 1, n):
            vi = v[i]
            wi = w[i]
            for j in range(k + 1, n):
                a[i, j] -= vi * w[j] + wi * v[j]
        a[k + 1, k] = alpha
        for i in range(k + 2, n):
            a[i, k] = 0.0
        if vectors:
            for i in range(n):
                acc = 0.0
                for j in range(k + 1, n):
                    acc += q[i, j] * v[j]
                acc *= 2.0
                for j in range(k + 1, n):
                    q[i, j] -= acc * v[j]


cdef int _ql_implicit(double[::1] d, double[::1] e, double[:, ::1] q,
                      Py_ssize_t nv) nogil:
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t l, m, i, row
    cdef int sweeps, underflow
    cdef double scale, g, r, s, c, p, f, b, t0, t1
    if n == 1:
        return 0
    # Negligibility is judged against a running global scale; a local
    # |d[m]|+|d[m+1]| test stalls on graded matrices.
    scale = 0.0
    for l in range(n):
        if fabs(d[l]) + fabs(e[l]) > scale:
            scale = fabs(d[l]) + fabs(e[l])
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if fabs(e[m]) <= DBL_EPSILON * scale:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= 50:
                return -1
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = 0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = 1
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for row in range(nv):
                    t0 = q[row, i]
                    t1 = q[row, i + 1]
                    q[row, i + 1] = s * t0 + c * t1
                    q[row, i] = c * t0 - s * t1
            if underflow == 0:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0
