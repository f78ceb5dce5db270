"""Coefficient tables for ce, co1, co1', co2 and the mod-2 identities they satisfy."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .family import CompositionFamily
from .report import VerificationReport, Witness
from .series import (
    CoefficientRing,
    series_divide_sparse,
    series_from_sparse,
    series_mul_sparse,
)
from .theta import family_numerator, pentagonal_denominator, triangular_theta


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    exact_max: int = 10**4
    mod_max: int = 10**7

    def check(self, ring: CoefficientRing, N: int):
        cap = self.exact_max if ring.is_exact else self.mod_max
        if N > cap:
            mode = "exact" if ring.is_exact else f"mod {ring.modulus}"
            raise CapacityError(f"limit {N} exceeds the {mode} cap of {cap}")


DEFAULT_CAPS = Caps()


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    family: CompositionFamily
    ring: CoefficientRing
    limit: int
    values: np.ndarray

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]


def triangular_indicator(N: int) -> np.ndarray:
    ind = np.zeros(N + 1, dtype=np.int64)
    k = np.arange(0, int((2 * N) ** 0.5) + 2)
    tri = k * (k + 1) // 2
    ind[tri[tri <= N]] = 1
    return ind


@lru_cache(maxsize=8)
def _quotient(family: CompositionFamily, ring: CoefficientRing, N: int) -> np.ndarray:
    if family is CompositionFamily.CO1_PRIME:
        co1 = _quotient(CompositionFamily.CO1, ring, N)
        ind = triangular_indicator(N)
        if ring.is_exact:
            values = co1 - ind.astype(object)
        else:
            values = (co1 - ind) % ring.modulus
    else:
        values = series_divide_sparse(
            family_numerator(family, N), pentagonal_denominator(N), ring, N
        ).coeffs
    values.setflags(write=False)
    return values


def coefficient_table(family, ring: CoefficientRing, N: int, caps: Caps = DEFAULT_CAPS) -> CoefficientTable:
    """Values f(0), ..., f(N) of the chosen family, exact or reduced mod m.

    co1' is co1 minus the triangular-number indicator.  Results are cached
    per (family, ring, N).
    """
    family = CompositionFamily.parse(family)
    if N < 0:
        raise ValueError("N must be nonnegative")
    caps.check(ring, N)
    return CoefficientTable(family, ring, N, _quotient(family, ring, N))


def co1_prime_via_numerator(ring: CoefficientRing, N: int) -> np.ndarray:
    """co1' computed as its own quotient, independent of the triangular
    subtraction used by :func:`coefficient_table`."""
    num = family_numerator(CompositionFamily.CO1_PRIME, N)
    return series_divide_sparse(num, pentagonal_denominator(N), ring, N).coeffs


def euler_product_cubed(ring: CoefficientRing, N: int) -> np.ndarray:
    """Coefficients of ``prod (1 - q^n)^3`` by repeated sparse multiplication."""
    den = pentagonal_denominator(N)
    s = series_from_sparse(den, ring, N)
    return series_mul_sparse(series_mul_sparse(s, den), den).coeffs


def _first_mismatch(lhs: np.ndarray, rhs: np.ndarray):
    bad = np.flatnonzero(lhs != rhs)
    return None if len(bad) == 0 else int(bad[0])


def co1_mod2_identity_check(N: int) -> VerificationReport:
    """CO1 (by division) vs triangular theta vs (q)_inf^3, coefficientwise mod 2."""
    ring = CoefficientRing.mod(2)
    co1 = coefficient_table(CompositionFamily.CO1, ring, N).values
    tri = series_from_sparse(triangular_theta(N), ring, N).coeffs
    cube = euler_product_cubed(ring, N)
    witnesses = []
    metrics = {"odd_coefficients": int(co1.sum())}
    for name, other in (("triangular_theta", tri), ("euler_product_cubed", cube)):
        k = _first_mismatch(co1, other)
        metrics[f"first_mismatch_vs_{name}"] = k
        if k is not None:
            witnesses.append(Witness(k, int(co1[k]), int(other[k]), ok=False))
    return VerificationReport(
        "co1-mod2",
        passed=not witnesses,
        parameters={"N": N},
        witnesses=witnesses,
        summary_metrics=metrics,
    )


def ce_mod2_identity_check(N: int) -> VerificationReport:
    ce = coefficient_table(CompositionFamily.CE, CoefficientRing.mod(2), N).values
    expected = np.zeros(N + 1, dtype=np.int64)
    expected[0] = 1
    k = _first_mismatch(ce, expected)
    witnesses = [] if k is None else [Witness(k, int(ce[k]), int(expected[k]), ok=False)]
    return VerificationReport("ce-mod2", passed=k is None, parameters={"N": N}, witnesses=witnesses)


def co1_parity_check(N: int) -> VerificationReport:
    """co1(n) is odd exactly at triangular n."""
    co1 = coefficient_table(CompositionFamily.CO1, CoefficientRing.mod(2), N).values
    tri = triangular_indicator(N)
    k = _first_mismatch(co1, tri)
    witnesses = [] if k is None else [Witness(k, int(co1[k]), int(tri[k]), ok=False)]
    return VerificationReport(
        "co1-parity",
        passed=k is None,
        parameters={"N": N},
        witnesses=witnesses,
        summary_metrics={"triangular_count": int(tri.sum())},
    )


def co1_prime_even_check(N: int) -> VerificationReport:
    ring = CoefficientRing.mod(2)
    values = coefficient_table(CompositionFamily.CO1_PRIME, ring, N).values
    odd = np.flatnonzero(values)
    witnesses = [Witness(int(n), 1, 0, ok=False) for n in odd[:10]]
    return VerificationReport("co1p-even", passed=len(odd) == 0, parameters={"N": N}, witnesses=witnesses)
