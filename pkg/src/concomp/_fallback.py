"""Pure-Python/numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def divide_sparse_mod(num, exps, coefs, m, reduce_each):
    size = len(num)
    f = np.zeros(size, dtype=np.int64)
    if reduce_each:
        # int64 dot products could overflow; fall back to Python integers.
        out = [0] * size
        terms = list(zip(exps.tolist(), coefs.tolist()))
        for n in range(size):
            acc = int(num[n])
            for e, c in terms:
                if e > n:
                    break
                acc -= c * out[n - e]
            out[n] = acc % m
        f[:] = out
        return f

    exps = np.asarray(exps, dtype=np.int64)
    coefs = np.asarray(coefs, dtype=np.int64)
    bounds = np.searchsorted(exps, np.arange(size), side="right")
    for n in range(size):
        k = bounds[n]
        acc = int(num[n])
        if k:
            acc -= int(np.dot(coefs[:k], f[n - exps[:k]]))
        f[n] = acc % m
    return f
