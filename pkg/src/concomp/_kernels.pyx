# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops.  Signatures mirror ``concomp._fallback``."""

import numpy as np

from libc.stdint cimport int64_t


def divide_sparse_mod(const int64_t[::1] num, const int64_t[::1] exps,
                      const int64_t[::1] coefs, int64_t m, bint reduce_each):
    """f(n) = num(n) - sum_{exps[i] <= n} coefs[i] * f(n - exps[i])  (mod m).

    ``exps`` is ascending with every entry >= 1.  Without ``reduce_each`` the
    caller guarantees ``sum |coefs| * (m - 1) + m`` fits in int64, so the
    accumulator is reduced once per output coefficient.
    """
    cdef Py_ssize_t size = num.shape[0]
    cdef Py_ssize_t nterms = exps.shape[0]
    cdef Py_ssize_t n, i, active = 0
    cdef int64_t acc
    out = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] f = out
    with nogil:
        for n in range(size):
            while active < nterms and exps[active] <= n:
                active += 1
            acc = num[n]
            if reduce_each:
                for i in range(active):
                    acc = (acc - coefs[i] * f[n - exps[i]]) % m
            else:
                for i in range(active):
                    acc -= coefs[i] * f[n - exps[i]]
                acc %= m
            if acc < 0:
                acc += m
            f[n] = acc
    return out
