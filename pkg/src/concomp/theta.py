"""Sparse exponent families: pentagonal, triangular, and the numerators of
the concave-composition generating functions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator

import numpy as np

from .family import CompositionFamily


@dataclass(frozen=True)
class SparseSupport:
    """Finite list of ``(exponent, coefficient)`` pairs.

    Exponents are nonnegative and strictly increasing; zero coefficients are
    never stored.  Use :meth:`from_terms` to aggregate raw terms.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = -1
        for e, c in self.entries:
            if e < 0:
                raise ValueError(f"negative exponent {e} in sparse support")
            if e <= prev:
                raise ValueError("sparse support exponents must be strictly increasing")
            if c == 0:
                raise ValueError("sparse support must not store zero coefficients")
            prev = e

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "SparseSupport":
        acc: dict[int, int] = defaultdict(int)
        for e, c in terms:
            if e < 0:
                raise ValueError(f"negative exponent {e} in sparse support")
            acc[int(e)] += int(c)
        return cls(tuple((e, c) for e, c in sorted(acc.items()) if c != 0))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def coefficient(self, e: int) -> int:
        return dict(self.entries).get(e, 0)

    @property
    def exponents(self) -> np.ndarray:
        return np.array([e for e, _ in self.entries], dtype=np.int64)

    def truncate(self, N: int) -> "SparseSupport":
        return SparseSupport(tuple((e, c) for e, c in self.entries if e <= N))

    def __neg__(self):
        return SparseSupport(tuple((e, -c) for e, c in self.entries))

    def __add__(self, other: "SparseSupport") -> "SparseSupport":
        return SparseSupport.from_terms(self.entries + other.entries)


def _pentagonal_pairs(N: int):
    """Yield ``(k, (3k^2-k)/2, (3k^2+k)/2)`` for k >= 1 while the smaller is <= N."""
    k = 1
    while (3 * k * k - k) // 2 <= N:
        yield k, (3 * k * k - k) // 2, (3 * k * k + k) // 2
        k += 1


def pentagonal_denominator(N: int) -> SparseSupport:
    """Support of ``prod (1 - q^n)`` up to degree N, via the pentagonal theorem."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    terms = [(0, 1)]
    for k, lo, hi in _pentagonal_pairs(N):
        sign = -1 if k % 2 else 1
        terms.append((lo, sign))
        if hi <= N:
            terms.append((hi, sign))
    return SparseSupport.from_terms(terms)


def triangular_theta(N: int) -> SparseSupport:
    if N < 0:
        raise ValueError("N must be nonnegative")
    terms = []
    n = 0
    while n * (n + 1) // 2 <= N:
        terms.append((n * (n + 1) // 2, 1))
        n += 1
    return SparseSupport(tuple(terms))


def _ce_numerator(N):
    terms = [(0, 1)]
    for _, lo, hi in _pentagonal_pairs(N):
        terms += [(lo, -1), (hi, 1)]
    return terms


def _co1_numerator(N):
    terms = [(0, 1)]
    k = 1
    while 6 * k * k - 2 * k <= N:
        terms += [(6 * k * k - 2 * k, -1), (6 * k * k + 2 * k, 1)]
        k += 1
    return terms


def _co2_numerator(N):
    terms = [(0, 1)]
    k = 1
    while 6 * k * k - 8 * k + 3 <= N:
        terms += [(6 * k * k - 8 * k + 3, 1), (6 * k * k - 4 * k + 1, -1)]
        k += 1
    return terms


def _co1_prime_numerator(N):
    # (q)_inf * (CO1 - T) = num_CO1 - (q)_inf * T with T the triangular theta.
    # The second product is the double sum over (j >= 1, k >= 0) of
    # sign_k * q^{(j^2-j)/2 + pent_k}.
    terms = _co1_numerator(N)
    den = pentagonal_denominator(N)
    j = 1
    while (j * j - j) // 2 <= N:
        t = (j * j - j) // 2
        for e, c in den:
            if t + e > N:
                break
            terms.append((t + e, -c))
        j += 1
    return terms


_NUMERATORS = {
    CompositionFamily.CE: _ce_numerator,
    CompositionFamily.CO1: _co1_numerator,
    CompositionFamily.CO1_PRIME: _co1_prime_numerator,
    CompositionFamily.CO2: _co2_numerator,
}


def family_numerator(family: CompositionFamily, N: int) -> SparseSupport:
    """Sparse numerator over the pentagonal denominator, truncated at N."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    family = CompositionFamily.parse(family)
    terms = [(e, c) for e, c in _NUMERATORS[family](N) if e <= N]
    return SparseSupport.from_terms(terms)


def co1_prime_numerator_as_displayed(N: int) -> SparseSupport:
    """The co1' numerator written as the CO1 numerator minus the unsigned
    double sum over ``j, k >= 1`` of ``q^{(j^2-j+3k^2-+k)/2}``.

    Kept for comparison only: it does not equal ``(q)_inf * CO1'(q)``
    (it drops the ``k = 0`` row and the alternating sign); see
    :func:`family_numerator` for the exact numerator.
    """
    terms = _co1_numerator(N)
    j = 1
    while (j * j - j) // 2 + 1 <= N:
        t = (j * j - j) // 2
        for _, lo, hi in _pentagonal_pairs(N - t):
            terms.append((t + lo, -1))
            terms.append((t + hi, -1))
        j += 1
    return SparseSupport.from_terms((e, c) for e, c in terms if e <= N)


def is_triangular(n: int) -> bool:
    if n < 0:
        raise ValueError("n must be nonnegative")
    r = isqrt(8 * n + 1)
    return r * r == 8 * n + 1


def count_pentagonal_upto(n: int) -> int:
    """Number of generalized pentagonal numbers (3j^2 -+ j)/2 <= n, counting 0 once."""
    count = 1
    for _, lo, hi in _pentagonal_pairs(n):
        count += 1 + (hi <= n)
    return count


@dataclass(frozen=True)
class WindowClassification:
    n: int
    k: int
    odd_window: bool


def classify_window(n: int) -> WindowClassification:
    """Locate n between consecutive (3k^2+k)/2 and flag the odd-summand range.

    ``odd_window`` holds iff (3k^2+k)/2 < n < (3(k+1)^2-(k+1))/2.  An odd
    number of generalized pentagonal numbers are <= n exactly when
    ``odd_window`` holds or n = (3k^2+k)/2 itself, which is pentagonal and
    is left out of the open interval.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # largest k with (3k^2+k)/2 <= n
    k = (isqrt(24 * n + 1) - 1) // 6
    while (3 * (k + 1) ** 2 + (k + 1)) // 2 <= n:
        k += 1
    while (3 * k * k + k) // 2 > n:
        k -= 1
    lo = (3 * k * k + k) // 2
    mid = (3 * (k + 1) ** 2 - (k + 1)) // 2
    return WindowClassification(n, k, lo < n < mid)


def odd_window_mask(X: int) -> np.ndarray:
    """Boolean array of length X; entry n is ``classify_window(n).odd_window``
    (entry 0 is False)."""
    mask = np.zeros(X, dtype=bool)
    k = 0
    while (3 * k * k + k) // 2 < X:
        lo = (3 * k * k + k) // 2
        mid = (3 * (k + 1) ** 2 - (k + 1)) // 2
        mask[lo + 1 : min(mid, X)] = True
        k += 1
    return mask


def representable_sieve(N: int) -> np.ndarray:
    """Mark n < N that are 6k^2 +- 2k (k >= 1) or (j^2-j)/2 + (3k^2 -+ k)/2
    (j, k >= 1).  These are the positions where the co1' numerator can be
    nonzero, apart from the constant term."""
    if N < 1:
        raise ValueError("N must be positive")
    mark = np.zeros(N, dtype=bool)
    k = 1
    while 6 * k * k - 2 * k < N:
        mark[6 * k * k - 2 * k] = True
        if 6 * k * k + 2 * k < N:
            mark[6 * k * k + 2 * k] = True
        k += 1
    pent = []
    for _, lo, hi in _pentagonal_pairs(N - 1):
        pent.append(lo)
        if hi < N:
            pent.append(hi)
    pent = np.array(pent, dtype=np.int64)
    j = 1
    while (j * j - j) // 2 + 1 < N:
        shifted = pent + (j * j - j) // 2
        mark[shifted[shifted < N]] = True
        j += 1
    return mark
