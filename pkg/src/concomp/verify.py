"""Checks that pit the brute-force enumerator against the series machinery."""

from .coefficients import coefficient_table
from .enumerator import ENUMERATION_CAP, count, enumerate_compositions, parity_involution
from .family import CompositionFamily
from .report import VerificationReport, Witness
from .series import CoefficientRing
from .theta import is_triangular

ENUMERABLE = (CompositionFamily.CE, CompositionFamily.CO1, CompositionFamily.CO2)


def oracle_equivalence_check(n_max: int = 30) -> VerificationReport:
    """Brute-force counts equal the quotient-series coefficients for n <= n_max."""
    if not 0 <= n_max <= ENUMERATION_CAP:
        raise ValueError(f"n_max must lie in [0, {ENUMERATION_CAP}]")
    witnesses = []
    for family in ENUMERABLE:
        series = coefficient_table(family, CoefficientRing.exact(), n_max).values
        for n in range(n_max + 1):
            brute = count(family, n)
            if brute != series[n]:
                witnesses.append(Witness(n, brute, int(series[n]), ok=False))
    return VerificationReport(
        "oracle",
        passed=not witnesses,
        parameters={"n_max": n_max, "families": [f.value for f in ENUMERABLE]},
        witnesses=witnesses,
    )


def parity_involution_check(n_max: int = 20) -> VerificationReport:
    """The mirror / zero-pair map is a fixed-point-free involution on the
    even-length compositions of each 1 <= n <= n_max, and co1(n) is odd
    exactly at triangular n."""
    if not 1 <= n_max <= ENUMERATION_CAP:
        raise ValueError(f"n_max must lie in [1, {ENUMERATION_CAP}]")
    witnesses = []
    for n in range(1, n_max + 1):
        comps = enumerate_compositions(CompositionFamily.CE, n)
        as_set = set(comps)
        for c in comps:
            image = parity_involution(c)
            if image == c or parity_involution(image) != c or image not in as_set:
                witnesses.append(Witness(n, c.parts, "involution partner", ok=False))
                break
        if len(comps) % 2:
            witnesses.append(Witness(n, len(comps), "even count", ok=False))
    for n in range(0, n_max + 1):
        odd = count(CompositionFamily.CO1, n) % 2 == 1
        if odd != is_triangular(n):
            witnesses.append(Witness(n, odd, is_triangular(n), ok=False))
    return VerificationReport(
        "parity",
        passed=not witnesses,
        parameters={"n_max": n_max},
        witnesses=witnesses,
    )
