# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Levinson recursion and Hankel-kernel products.

Semantics mirror szego_fh._kernels_py; summation runs in ascending index
order so results are deterministic for fixed inputs.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def levinson(t):
    """Hermitian Levinson-Durbin recursion; see the pure backend docstring."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] tv = np.ascontiguousarray(
        t, dtype=np.complex128
    )
    cdef Py_ssize_t n_max = tv.shape[0] - 1
    if n_max < 0:
        raise ValueError("need at least one coefficient")
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a = np.zeros(
        n_max + 1, dtype=np.complex128
    )
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] rho = np.zeros(
        n_max, dtype=np.complex128
    )
    cdef cnp.ndarray[cnp.float64_t, ndim=1] err = np.zeros(
        n_max + 1, dtype=np.float64
    )
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] tmp = np.zeros(
        n_max + 1, dtype=np.complex128
    )
    cdef double complex delta, r
    cdef double e, rabs2
    cdef Py_ssize_t n, j

    a[0] = 1.0
    e = tv[0].real
    if e <= 0.0:
        raise np.linalg.LinAlgError(
            "leading minor of order 1 is not positive definite"
        )
    err[0] = e
    for n in range(1, n_max + 1):
        delta = 0.0
        for j in range(n):
            delta = delta + a[j] * tv[n - j]
        r = -delta / e
        rabs2 = r.real * r.real + r.imag * r.imag
        if rabs2 >= 1.0:
            raise np.linalg.LinAlgError(
                f"leading minor of order {n + 1} is not positive definite"
            )
        rho[n - 1] = r
        for j in range(n):
            tmp[j] = a[n - 1 - j].conjugate()
        for j in range(n):
            a[j + 1] = a[j + 1] + r * tmp[j]
        e = e * (1.0 - rabs2)
        if e <= 0.0:
            raise np.linalg.LinAlgError(
                f"leading minor of order {n + 1} is not positive definite"
            )
        err[n] = e
    return a, rho, err


def hankel_matvec(h, w):
    """Direct O(n^2) Hankel-kernel product out[i] = sum_j h[i+j] w[j]."""
    w_arr = np.asarray(w)
    h_arr = np.asarray(h)
    cdef Py_ssize_t n = w_arr.shape[0]
    if n == 0:
        return w_arr[:0].copy()
    if h_arr.shape[0] < 2 * n - 1:
        raise ValueError("kernel array too short for the requested product")
    if np.iscomplexobj(h_arr) or np.iscomplexobj(w_arr):
        return _hankel_matvec_z(
            np.ascontiguousarray(h_arr, dtype=np.complex128),
            np.ascontiguousarray(w_arr, dtype=np.complex128),
        )
    return _hankel_matvec_d(
        np.ascontiguousarray(h_arr, dtype=np.float64),
        np.ascontiguousarray(w_arr, dtype=np.float64),
    )


cdef _hankel_matvec_z(
    cnp.ndarray[cnp.complex128_t, ndim=1] h,
    cnp.ndarray[cnp.complex128_t, ndim=1] w,
):
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(
        n, dtype=np.complex128
    )
    cdef Py_ssize_t i, j
    cdef double complex acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc = acc + h[i + j] * w[j]
        out[i] = acc
    return out


cdef _hankel_matvec_d(
    cnp.ndarray[cnp.float64_t, ndim=1] h,
    cnp.ndarray[cnp.float64_t, ndim=1] w,
):
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            acc = acc + h[i + j] * w[j]
        out[i] = acc
    return out
