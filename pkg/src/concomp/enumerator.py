"""Brute-force enumeration of concave compositions.

A composition is stored as its left arm, center and right arm:

* ce:  a_1 > ... > a_m = b_m < ... < b_1       (center pair a_m = b_m)
* co1: a_1 > ... > a_{m+1} <  b_m < ... < b_1
* co2: a_1 > ... > a_{m+1} <= b_m < ... < b_1

All parts are nonnegative.  The written sequence runs a_1, ..., center, ...,
b_1, so mirroring it is list reversal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .family import CompositionFamily

ENUMERATION_CAP = 60


@lru_cache(maxsize=None)
def strict_partitions(total: int, parts: int, floor: int) -> tuple[tuple[int, ...], ...]:
    """All strictly decreasing ``parts``-tuples of integers > ``floor`` summing to ``total``."""
    if parts == 0:
        return ((),) if total == 0 else ()
    # smallest possible sum: floor+1, ..., floor+parts
    if total < parts * floor + parts * (parts + 1) // 2:
        return ()
    out = []
    for smallest in range(floor + 1, total + 1):
        if parts * smallest + parts * (parts - 1) // 2 > total:
            break
        for rest in strict_partitions(total - smallest, parts - 1, smallest):
            out.append(rest + (smallest,))
    return tuple(out)


@dataclass(frozen=True)
class ConcaveComposition:
    family: CompositionFamily
    left: tuple[int, ...]  # a_1 > a_2 > ..., outermost first, center excluded
    center: tuple[int, ...]  # (a_m, b_m) for ce, (a_{m+1},) for co1/co2
    right: tuple[int, ...]  # b_1 > b_2 > ..., outermost first, center excluded

    @property
    def parts(self) -> tuple[int, ...]:
        return self.left + self.center + self.right[::-1]

    @property
    def m(self) -> int:
        return len(self.right) + (1 if self.family is CompositionFamily.CE else 0)

    @property
    def total(self) -> int:
        return sum(self.parts)

    def is_valid(self) -> bool:
        c = self.center[0]
        if any(p < 0 for p in self.parts):
            return False
        if list(self.left) != sorted(set(self.left), reverse=True):
            return False
        if list(self.right) != sorted(set(self.right), reverse=True):
            return False
        if any(a <= c for a in self.left):
            return False
        if self.family is CompositionFamily.CE:
            return (
                len(self.center) == 2
                and self.center[0] == self.center[1]
                and len(self.left) == len(self.right)
                and all(b > c for b in self.right)
            )
        if len(self.center) != 1 or len(self.left) != len(self.right):
            return False
        if self.family is CompositionFamily.CO1:
            return all(b > c for b in self.right)
        return all(b >= c for b in self.right)

    def mirror(self) -> "ConcaveComposition":
        return ConcaveComposition(self.family, self.right, self.center[::-1], self.left)

    @classmethod
    def from_parts(cls, family, parts) -> "ConcaveComposition":
        family = CompositionFamily.parse(family)
        parts = tuple(parts)
        if family is CompositionFamily.CE:
            if len(parts) % 2 or not parts:
                raise ValueError("even-length composition needs an even, nonzero number of parts")
            h = len(parts) // 2
            comp = cls(family, parts[: h - 1], parts[h - 1 : h + 1], parts[h + 1 :][::-1])
        else:
            if len(parts) % 2 == 0:
                raise ValueError("odd-length composition needs an odd number of parts")
            h = len(parts) // 2
            comp = cls(family, parts[:h], parts[h : h + 1], parts[h + 1 :][::-1])
        if not comp.is_valid():
            raise ValueError(f"{list(parts)} is not a valid {family} composition")
        return comp


def _check_enumerable(family, n):
    family = CompositionFamily.parse(family)
    if not family.enumerable:
        raise ValueError("co1' is a derived count and cannot be enumerated")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > ENUMERATION_CAP:
        raise ValueError(f"n={n} exceeds the enumeration cap {ENUMERATION_CAP}")
    return family


def _arms(total, parts, left_floor, right_floor):
    for s in range(total + 1):
        lefts = strict_partitions(s, parts, left_floor)
        if not lefts:
            continue
        rights = strict_partitions(total - s, parts, right_floor)
        for left in lefts:
            for right in rights:
                yield left, right


def enumerate_compositions(family, n: int) -> list[ConcaveComposition]:
    """Every concave composition of ``n`` in ``family``, ordered by m and then
    lexicographically on the part sequence."""
    family = _check_enumerable(family, n)
    found = []
    if family is CompositionFamily.CE:
        for c in range(n // 2 + 1):
            rest = n - 2 * c
            for arm in range(rest // 2 + 1):
                for left, right in _arms(rest, arm, c, c):
                    found.append(ConcaveComposition(family, left, (c, c), right))
    else:
        right_floor_shift = 0 if family is CompositionFamily.CO1 else 1
        for c in range(n + 1):
            rest = n - c
            # a co2 right arm may hold a zero part, so arm length is not bounded by rest // 2
            for arm in range(rest + 1):
                for left, right in _arms(rest, arm, c, c - right_floor_shift):
                    found.append(ConcaveComposition(family, left, (c,), right))
    found.sort(key=lambda comp: (comp.m, comp.parts))
    return found


def count(family, n: int) -> int:
    return len(enumerate_compositions(family, n))


def parity_involution(comp: ConcaveComposition) -> ConcaveComposition:
    """Fixed-point-free involution on even-length compositions of n >= 1.

    Non-palindromes map to their mirror image.  A palindrome with center pair
    (0, 0) loses that pair; one with a positive center gains a (0, 0) pair.
    """
    if comp.family is not CompositionFamily.CE:
        raise ValueError("parity involution is defined on even-length compositions only")
    if comp.total == 0:
        raise ValueError("parity involution is undefined for n = 0")
    if comp.left != comp.right:
        return comp.mirror()
    c = comp.center[0]
    if c == 0:
        # left is nonempty here because the total is positive
        return ConcaveComposition(comp.family, comp.left[:-1], (comp.left[-1],) * 2, comp.right[:-1])
    return ConcaveComposition(comp.family, comp.left + (c,), (0, 0), comp.right + (c,))
