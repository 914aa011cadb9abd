# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; API-identical to navier_norms._kernels_py."""

from libc.math cimport fabs, pow

import numpy as np

BACKEND = "cython"


def picard_solve(M, a, double beta, double tol, int maxit):
    """Fixed point of phi = a + M @ phi**beta by Picard iteration."""
    cdef const double[:, ::1] m = np.ascontiguousarray(M, dtype=np.float64)
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    phi_arr = np.array(av, dtype=np.float64)
    g_arr = np.empty(n, dtype=np.float64)
    nxt_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] phi = phi_arr
    cdef double[::1] g = g_arr
    cdef double[::1] nxt = nxt_arr
    cdef double residual = 1e300
    cdef double acc, diff
    cdef Py_ssize_t i, j
    cdef int it = 0
    while it < maxit:
        it += 1
        if beta == 0.0:
            for j in range(n):
                g[j] = 1.0
        else:
            for j in range(n):
                g[j] = pow(phi[j], beta)
        residual = 0.0
        for i in range(n):
            acc = av[i]
            # M is lower triangular over the nodes
            for j in range(i + 1):
                acc += m[i, j] * g[j]
            nxt[i] = acc
            diff = fabs(acc - phi[i])
            if diff > residual:
                residual = diff
        phi[:] = nxt
        if residual < tol:
            break
    return phi_arr, it, residual
