"""Truncated formal power series over the integers or Z/mZ.

Coefficients are stored densely (one slot per degree ``0..N``).  Exact
series hold Python integers in an ``object`` array; modular series hold
canonical representatives in ``[0, m)`` as ``int64``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _backend
from .theta import SparseSupport

# Products of two residues must fit in a signed 64-bit word.
MAX_MODULUS = 2**31 - 1


class RingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientRing:
    """Either the exact integers (``modulus is None``) or Z/mZ."""

    modulus: int | None = None

    def __post_init__(self):
        m = self.modulus
        if m is None:
            return
        if not isinstance(m, (int, np.integer)) or isinstance(m, bool):
            raise TypeError(f"modulus must be an integer, got {m!r}")
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        if m > MAX_MODULUS:
            raise ValueError(f"modulus must be <= {MAX_MODULUS}, got {m}")
        object.__setattr__(self, "modulus", int(m))

    @classmethod
    def exact(cls) -> "CoefficientRing":
        return cls(None)

    @classmethod
    def mod(cls, m: int) -> "CoefficientRing":
        return cls(m)

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    @property
    def dtype(self):
        return object if self.modulus is None else np.int64

    def zeros(self, length: int) -> np.ndarray:
        if self.modulus is None:
            out = np.empty(length, dtype=object)
            out[:] = 0
            return out
        return np.zeros(length, dtype=np.int64)

    def reduce(self, values) -> np.ndarray:
        """Coerce ``values`` into this ring's storage, reducing if modular."""
        if self.modulus is None:
            out = np.empty(len(values), dtype=object)
            out[:] = [int(v) for v in values]
            return out
        arr = np.asarray(values)
        if arr.dtype == object:
            return np.array([int(v) % self.modulus for v in arr], dtype=np.int64)
        return np.mod(arr.astype(np.int64, copy=False), self.modulus)

    def __str__(self):
        return "ZZ" if self.modulus is None else f"ZZ/{self.modulus}"


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    ring: CoefficientRing
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = self.coeffs
        if not isinstance(coeffs, np.ndarray) or coeffs.dtype != np.dtype(self.ring.dtype):
            coeffs = self.ring.reduce(coeffs)
        if coeffs.ndim != 1 or len(coeffs) == 0:
            raise ValueError("a truncated series needs at least the constant coefficient")
        if self.ring.modulus is not None and len(coeffs):
            if coeffs.min() < 0 or coeffs.max() >= self.ring.modulus:
                raise ValueError("modular coefficients must lie in [0, m)")
        coeffs = coeffs.copy() if coeffs.flags.writeable else coeffs
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and len(self) == len(other)
            and bool(np.all(self.coeffs == other.coeffs))
        )

    def __hash__(self):
        return hash((self.ring, tuple(self.tolist())))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.tolist()[:8])
        tail = ", ..." if len(self) > 8 else ""
        return f"TruncatedSeries({self.ring}, N={self.truncation}, [{head}{tail}])"

    def __add__(self, other):
        return series_add(self, other)

    def __neg__(self):
        return series_neg(self)

    def __sub__(self, other):
        return series_add(self, series_neg(other))

    def __mul__(self, other):
        return series_mul(self, other)


def _check_same_ring(a: TruncatedSeries, b: TruncatedSeries):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring} vs {b.ring}")


def _as_support(support) -> SparseSupport:
    if isinstance(support, SparseSupport):
        return support
    return SparseSupport.from_terms(support)


def series_from_sparse(support, ring: CoefficientRing, N: int) -> TruncatedSeries:
    """Materialize the terms of ``support`` with exponent <= N."""
    if N < 0:
        raise ValueError("truncation degree must be nonnegative")
    support = _as_support(support)
    out = ring.zeros(N + 1)
    for e, c in support:
        if e > N:
            break
        out[e] = c
    return TruncatedSeries(ring, ring.reduce(out))


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_same_ring(a, b)
    n = min(len(a), len(b))
    s = a.coeffs[:n] + b.coeffs[:n]
    if a.ring.modulus is not None:
        s = np.where(s >= a.ring.modulus, s - a.ring.modulus, s)
    return TruncatedSeries(a.ring, s)


def series_neg(a: TruncatedSeries) -> TruncatedSeries:
    if a.ring.modulus is None:
        return TruncatedSeries(a.ring, -a.coeffs)
    m = a.ring.modulus
    return TruncatedSeries(a.ring, np.where(a.coeffs == 0, 0, m - a.coeffs))


def _mul_dense_by_terms(dense: np.ndarray, terms: Iterable[tuple[int, int]], ring, n: int):
    m = ring.modulus
    out = ring.zeros(n)
    for e, c in terms:
        if e >= n:
            break
        out[e:] += c * dense[: n - e]
        if m is not None:
            out[e:] %= m
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller truncation.

    Work is O(N * nnz) where nnz counts the nonzero coefficients of the
    sparser factor.
    """
    _check_same_ring(a, b)
    n = min(len(a), len(b))
    x, y = a.coeffs[:n], b.coeffs[:n]
    if np.count_nonzero(x) < np.count_nonzero(y):
        x, y = y, x
    terms = [(int(e), int(y[e])) for e in np.flatnonzero(y)]
    return TruncatedSeries(a.ring, _mul_dense_by_terms(x, terms, a.ring, n))


def series_mul_sparse(a: TruncatedSeries, support) -> TruncatedSeries:
    """Multiply a dense series by a sparse one, keeping ``a``'s truncation."""
    support = _as_support(support)
    coefs = a.ring.reduce([c for _, c in support]) if len(support) else []
    terms = [(e, int(c)) for (e, _), c in zip(support, coefs)]
    return TruncatedSeries(a.ring, _mul_dense_by_terms(a.coeffs, terms, a.ring, len(a)))


def series_reduce_mod(a: TruncatedSeries, m: int) -> TruncatedSeries:
    if not a.ring.is_exact:
        raise ValueError("series_reduce_mod expects an exact-integer series")
    ring = CoefficientRing.mod(m)
    return TruncatedSeries(ring, ring.reduce(a.coeffs))


def series_divide_sparse(numerator, denominator, ring: CoefficientRing, N: int) -> TruncatedSeries:
    """Return f with ``denominator * f == numerator`` up to degree N.

    Runs the recurrence ``f(n) = num(n) - sum c * f(n - e)`` over the
    denominator terms with ``1 <= e <= n``.  The denominator must have
    constant term exactly +1.
    """
    numerator = _as_support(numerator)
    denominator = _as_support(denominator)
    if denominator.coefficient(0) != 1:
        raise ValueError("denominator constant term must be 1")
    num = series_from_sparse(numerator, ring, N).coeffs
    tail = [(e, c) for e, c in denominator if 1 <= e <= N]

    if ring.modulus is None:
        return TruncatedSeries(ring, _divide_exact(num, tail, N))

    m = ring.modulus
    # Signed small representatives keep the +-1 pentagonal coefficients exact.
    exps = np.array([e for e, _ in tail], dtype=np.int64)
    coefs = np.array([((c + m // 2) % m) - m // 2 for _, c in tail], dtype=np.int64)
    bound = int(np.abs(coefs).sum()) * (m - 1) + m
    reduce_each = bound >= 2**62
    f = _backend.divide_sparse_mod(np.ascontiguousarray(num), exps, coefs, m, reduce_each)
    return TruncatedSeries(ring, f)


def _divide_exact(num: np.ndarray, tail: list[tuple[int, int]], N: int) -> np.ndarray:
    f = [0] * (N + 1)
    for n in range(N + 1):
        acc = num[n]
        for e, c in tail:
            if e > n:
                break
            acc -= c * f[n - e]
        f[n] = acc
    out = np.empty(N + 1, dtype=object)
    out[:] = f
    return out
