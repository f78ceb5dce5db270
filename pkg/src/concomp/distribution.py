"""Residue-class counts E_f(r, a; X) and the finite-X checks built on them."""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np

from .coefficients import DEFAULT_CAPS, Caps, coefficient_table
from .family import CompositionFamily
from .report import VerificationReport, Witness
from .series import CoefficientRing, series_from_sparse
from .theta import count_pentagonal_upto, family_numerator, odd_window_mask, representable_sieve

CE, CO1, CO1P, CO2 = (
    CompositionFamily.CE,
    CompositionFamily.CO1,
    CompositionFamily.CO1_PRIME,
    CompositionFamily.CO2,
)


@dataclass(frozen=True)
class ResidueHistogram:
    """``counts[r]`` is the number of 0 <= n < limit with f(n) = r mod modulus."""

    family: CompositionFamily
    modulus: int
    limit: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.modulus:
            raise ValueError("need one count per residue class")
        if sum(self.counts) != self.limit:
            raise ValueError("residue counts must sum to the limit")

    def __getitem__(self, r):
        return self.counts[r]

    def merge(self, other: "ResidueHistogram") -> "ResidueHistogram":
        """Combine histograms taken over disjoint n-ranges."""
        if (self.family, self.modulus) != (other.family, other.modulus):
            raise ValueError("can only merge histograms of the same family and modulus")
        counts = tuple(x + y for x, y in zip(self.counts, other.counts))
        return ResidueHistogram(self.family, self.modulus, self.limit + other.limit, counts)


def _mod_values(family, a: int, X: int, caps: Caps) -> np.ndarray:
    if X <= 0:
        return np.zeros(0, dtype=np.int64)
    return coefficient_table(family, CoefficientRing.mod(a), X - 1, caps).values


def residue_histogram(family, a: int, X: int, caps: Caps = DEFAULT_CAPS) -> ResidueHistogram:
    family = CompositionFamily.parse(family)
    if a < 2:
        raise ValueError("modulus must be >= 2")
    if X < 0:
        raise ValueError("X must be nonnegative")
    counts = np.bincount(_mod_values(family, a, X, caps), minlength=a)
    return ResidueHistogram(family, a, X, tuple(int(c) for c in counts))


def histogram_from_values(family, values, a: int, start: int = 0, chunk: int | None = None) -> ResidueHistogram:
    """Histogram of ``values[start:]`` (already reduced mod a), optionally
    accumulated chunk by chunk."""
    values = np.asarray(values)[start:]
    chunk = chunk or max(len(values), 1)
    hist = ResidueHistogram(CompositionFamily.parse(family), a, 0, (0,) * a)
    for lo in range(0, len(values), chunk):
        part = values[lo : lo + chunk]
        counts = tuple(int(c) for c in np.bincount(part, minlength=a))
        hist = hist.merge(ResidueHistogram(hist.family, a, len(part), counts))
    return hist


# ---------------------------------------------------------------------------
# lower bounds on counts of f(n) = 0 mod 4 (or mod 2) below X


def pentagonal_overcount(X: int) -> int:
    """Twice the number of pentagonal numbers k(3k-1)/2 < X, k >= 1, counted directly."""
    k = 1
    while k * (3 * k - 1) // 2 < X:
        k += 1
    return 2 * (k - 1)


def pentagonal_overcount_closed_form(X: int) -> float:
    return (sqrt(24 * X + 1) + 1) / 3


def count_6k2_pm_2k_below(X: int) -> int:
    count = 0
    k = 1
    while 6 * k * k - 2 * k < X:
        count += 1 + (6 * k * k + 2 * k < X)
        k += 1
    return count


@dataclass(frozen=True)
class TheoremOneBounds:
    X: int
    lhs: int
    rhs: float
    epsilon: float


@dataclass
class TheoremOneReport(VerificationReport):
    bounds: TheoremOneBounds | None = None


def _certified_bound(mask: np.ndarray, X: int) -> tuple[int, int]:
    """From ``mask.sum()`` forcing positions, each hit by at most
    ``#pentagonal numbers < X`` of them, return (forcing count, lower bound)."""
    forcing = int(mask.sum())
    multiplicity = count_pentagonal_upto(X - 1)
    return forcing, ceil(forcing / multiplicity)


def _numerator_dense(family, X: int) -> np.ndarray:
    return series_from_sparse(family_numerator(family, X - 1), CoefficientRing.exact(), X - 1).coeffs


def verify_theorem1(part: str, X: int, epsilon: float = 0.1, caps: Caps = DEFAULT_CAPS) -> TheoremOneReport:
    """Check the finite-X lower bounds on E_ce(0,4;X), E_co1'(0,4;X), E_co2(0,2;X).

    Parts (i) and (iii) compare against the closed-form bounds.  Part (ii)
    has no explicit constants, so it checks
    ``E >= (Z(X) - P(X)) / (sqrt(24X+1) + 1)`` with Z(X) the exact number of
    vanishing numerator coefficients below X.  Every part additionally
    checks the bound obtained directly from the counting argument: forcing
    positions (odd window, numerator = 0 mod a) divided by the number of
    pentagonal numbers below X.
    """
    part = str(part).lower()
    if part not in ("i", "ii", "iii"):
        raise ValueError("part must be one of i, ii, iii")
    if X < 1000:
        raise ValueError("X must be at least 1000")

    denom = sqrt(24 * X + 1) + 1
    overcount = pentagonal_overcount(X)
    closed = pentagonal_overcount_closed_form(X)
    metrics = {
        "overcount_direct": overcount,
        "overcount_closed_form": closed,
        "overcount_closed_form_ok": closed - 2 <= overcount <= closed,
    }
    window = odd_window_mask(X)
    metrics["odd_window_fraction"] = float(window.mean())

    if part == "i":
        family, a = CE, 4
        rhs = (2 - epsilon) * X / denom
        numerator = _numerator_dense(family, X)
    elif part == "iii":
        family, a = CO2, 2
        rhs = ((2 - epsilon) * X - 4 - sqrt(6 * X - 2)) / denom
        numerator = _numerator_dense(family, X)
    else:
        family, a = CO1P, 4
        numerator = _numerator_dense(family, X)
        zero = numerator == 0
        Z = int(zero.sum())
        rhs = (Z - overcount) / denom
        sieve = representable_sieve(X)
        sieve[0] = True  # constant term
        unmarked_nonzero = np.flatnonzero(~sieve & ~zero)
        six_k = count_6k2_pm_2k_below(X)
        metrics.update(
            zero_count=Z,
            zero_fraction=Z / X,
            sieve_unmarked=int((~sieve).sum()),
            sieve_sound=len(unmarked_nonzero) == 0,
            sieve_cancellations=int((sieve & zero).sum()),
            count_6k2_pm_2k=six_k,
            count_6k2_pm_2k_bound=(sqrt(6 * X + 1) - 1) / 3,
            count_6k2_pm_2k_bound_ok=six_k <= (sqrt(6 * X + 1) - 1) / 3,
        )

    values = _mod_values(family, a, X, caps)
    lhs = int((values == 0).sum())
    forcing_mask = window & (numerator.astype(np.int64) % a == 0)
    forcing, certified = _certified_bound(forcing_mask, X)
    metrics.update(
        lhs=lhs,
        rhs=rhs,
        forcing_positions=forcing,
        certified_bound=certified,
    )
    bounds = TheoremOneBounds(X, lhs, rhs, epsilon)

    checks = [lhs > rhs if part != "ii" else lhs >= rhs, lhs >= certified, metrics["overcount_closed_form_ok"]]
    if part == "ii":
        checks += [metrics["sieve_sound"], metrics["count_6k2_pm_2k_bound_ok"]]
    passed = all(checks)
    witnesses = [Witness(X, lhs, rhs, ok=passed)]
    return TheoremOneReport(
        f"theorem1-{part}",
        passed=passed,
        parameters={"part": part, "X": X, "epsilon": epsilon, "family": family.value, "modulus": a},
        witnesses=witnesses,
        summary_metrics=metrics,
        bounds=bounds,
    )


# ---------------------------------------------------------------------------
# pentagonal identities and residue windows


def cong_index(m: int) -> int:
    """(2m-1)(3m-1): the pentagonal number l(3l+1)/2 for l = 2m-1."""
    return (2 * m - 1) * (3 * m - 1)


def cong_sum(family, values, m: int) -> int:
    """Alternating pentagonal sum at index (2m-1)(3m-1) (+2 for ce), with the
    lone f(2) or f(0) term left out.  Equals 2 for ce and 1 for co1/co2."""
    family = CompositionFamily.parse(family)
    ell = 2 * m - 1
    top = cong_index(m) + (2 if family is CE else 0)
    total = int(values[top])
    for k in range(1, ell + 1):
        total += (-1) ** k * int(values[top - k * (3 * k - 1) // 2])
    for k in range(1, ell):
        total += (-1) ** k * int(values[top - k * (3 * k + 1) // 2])
    return total


def euler_coefficient(values, n: int) -> int:
    """Coefficient of q^n in (q)_inf * sum values[k] q^k, summed over all
    pentagonal numbers <= n."""
    total = int(values[n])
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        sign = -1 if k % 2 else 1
        total += sign * int(values[n - k * (3 * k - 1) // 2])
        if k * (3 * k + 1) // 2 <= n:
            total += sign * int(values[n - k * (3 * k + 1) // 2])
        k += 1
    return total


def _nearest_numerator_distance(family, n: int) -> int:
    support = [e for e, _ in family_numerator(family, 2 * n + 10) if e > 0]
    return min(abs(e - n) for e in support)


def verify_cong_identity(family, m_max: int, table=None, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """For ce: the alternating sum at (2m-1)(3m-1)+2 equals 2.  For co1/co2:
    the coefficient of q^{(2m-1)(3m-1)} in (q)_inf * F(q) is 0."""
    family = CompositionFamily.parse(family)
    if family is CO1P:
        raise ValueError("the pentagonal identities are stated for ce, co1 and co2")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    need = cong_index(m_max) + 2
    if table is None:
        table = coefficient_table(family, CoefficientRing.exact(), need, caps).values
    elif len(table) <= need:
        raise ValueError(f"table covers {len(table) - 1} but the identity needs index {need}")

    witnesses = []
    metrics = {}
    for m in range(1, m_max + 1):
        if family is CE:
            observed, expected = cong_sum(family, table, m), 2
        else:
            observed, expected = euler_coefficient(table, cong_index(m)), 0
        witnesses.append(Witness(m, observed, expected, ok=observed == expected))
    if family is not CE:
        gaps = {m: _nearest_numerator_distance(family, cong_index(m)) for m in range(1, m_max + 1)}
        want = {m: (3 * m - 1 if family is CO1 else m) for m in gaps}
        metrics["numerator_gap_matches"] = gaps == want
        metrics["numerator_gaps"] = [gaps[m] for m in sorted(gaps)]
    passed = all(w.ok for w in witnesses) and metrics.get("numerator_gap_matches", True)
    return VerificationReport(
        "cong",
        passed=passed,
        parameters={"family": family.value, "m_max": m_max},
        witnesses=witnesses,
        summary_metrics=metrics,
    )


def theorem2_window(family, m: int, window: str = "family") -> tuple[int, int]:
    """Index range forced to contain a value outside any single residue class.

    For ce this is [2m+1, (2m-1)(3m-1)+2].  For co1/co2 the identity sits
    at (2m-1)(3m-1) and its terms run over [2m-1, (2m-1)(3m-1)].  With
    ``window="ce"`` the ce interval is used for every family.
    """
    family = CompositionFamily.parse(family)
    if window not in ("family", "ce"):
        raise ValueError("window must be 'family' or 'ce'")
    if family is CE or window == "ce":
        return 2 * m + 1, cong_index(m) + 2
    return 2 * m - 1, cong_index(m)


def verify_theorem2_windows(
    family, a: int, r: int, m_max: int, window: str = "family", caps: Caps = DEFAULT_CAPS
) -> VerificationReport:
    family = CompositionFamily.parse(family)
    if family is CO1P:
        raise ValueError("windows are defined for ce, co1 and co2")
    if family is CE and a <= 2:
        raise ValueError("ce windows need a modulus > 2")
    if a < 2:
        raise ValueError("modulus must be >= 2")
    if not 0 <= r < a:
        raise ValueError("residue must lie in [0, a)")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    hi_max = theorem2_window(family, m_max, window)[1]
    values = coefficient_table(family, CoefficientRing.mod(a), hi_max, caps).values

    witnesses = []
    for m in range(1, m_max + 1):
        lo, hi = theorem2_window(family, m, window)
        off = np.flatnonzero(values[lo : hi + 1] != r)
        if len(off):
            n = lo + int(off[0])
            witnesses.append(Witness(n, int(values[n]), r, ok=True))
        else:
            witnesses.append(Witness(lo, r, f"a value != {r} in [{lo}, {hi}]", ok=False))
    return VerificationReport(
        "theorem2-windows",
        passed=all(w.ok for w in witnesses),
        parameters={"family": family.value, "modulus": a, "residue": r, "m_max": m_max, "window": window},
        witnesses=witnesses,
    )


def gap_sequence(j_max: int) -> list[int]:
    """m_1 = 1, m_j = 3 m_{j-1}^2."""
    ms = [1]
    while len(ms) < j_max:
        ms.append(3 * ms[-1] ** 2)
    return ms


def verify_gap_sequence(j_max: int) -> VerificationReport:
    if j_max < 2:
        raise ValueError("j_max must be at least 2")
    ms = gap_sequence(j_max)
    witnesses = []
    for j in range(1, j_max + 1):
        m = ms[j - 1]
        closed = 3 ** (2 ** (j - 1) - 1)
        ok = m == closed
        if j >= 2:
            prev = ms[j - 2]
            ok = ok and 2 * m + 1 > (2 * prev - 1) * (3 * prev - 1) + 2
        witnesses.append(Witness(j, m, closed, ok=ok))
    return VerificationReport(
        "gap-sequence",
        passed=all(w.ok for w in witnesses),
        parameters={"j_max": j_max},
        witnesses=witnesses,
        summary_metrics={"m_values_digits": [len(str(m)) for m in ms]},
    )


# ---------------------------------------------------------------------------
# Conjectured residue distribution (informational)


def count_triangular_below(X: int) -> int:
    n = 0
    while n * (n + 1) // 2 < X:
        n += 1
    return n


def conjectured_count(family, a: int, r: int, X: int):
    """Leading term of E_f(r,a;X) expected by the conjecture, or None where
    no prediction is made.  Returns (regime, value)."""
    family = CompositionFamily.parse(family)
    if family is CO2 or a % 2:
        return "uniform", X / a
    if r % 2 == 0:
        return "even", 2 * X / a
    if family is CO1:
        return "odd", 2 * sqrt(2 * X) / a
    return "odd", None


def conjecture_profile(family, a: int, X: int, caps: Caps = DEFAULT_CAPS) -> VerificationReport:
    """Observed residue counts next to the conjectured leading terms.

    Only the exact consequence for co1 with even modulus (odd residues occur
    exactly at triangular n) can fail the report; deviations from the
    asymptotic predictions are reported, never judged.
    """
    family = CompositionFamily.parse(family)
    if family is CO1P:
        raise ValueError("no distribution conjecture is made for co1'")
    hist = residue_histogram(family, a, X, caps)
    witnesses = []
    deviation: dict[str, float] = {}
    for r, observed in enumerate(hist.counts):
        regime, predicted = conjectured_count(family, a, r, X)
        witnesses.append(Witness(r, observed, predicted, ok=True))
        if predicted:
            dev = abs(observed - predicted) / predicted
            deviation[regime] = max(deviation.get(regime, 0.0), dev)
    metrics = {f"max_rel_deviation_{k}": v for k, v in deviation.items()}
    passed = True
    if family is CO1 and a % 2 == 0:
        odd_total = sum(hist.counts[1::2])
        triangular = count_triangular_below(X)
        metrics["odd_residue_total"] = odd_total
        metrics["triangular_below_X"] = triangular
        passed = odd_total == triangular
        if not passed:
            witnesses.append(Witness(X, odd_total, triangular, ok=False))
    return VerificationReport(
        "conjecture",
        passed=passed,
        parameters={"family": family.value, "modulus": a, "X": X},
        witnesses=witnesses,
        summary_metrics=metrics,
    )
