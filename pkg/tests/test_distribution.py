import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from concomp import CoefficientRing, CompositionFamily
from concomp.coefficients import coefficient_table
from concomp.distribution import (
    ResidueHistogram,
    conjecture_profile,
    conjectured_count,
    count_6k2_pm_2k_below,
    count_triangular_below,
    cong_sum,
    euler_coefficient,
    gap_sequence,
    histogram_from_values,
    pentagonal_overcount,
    pentagonal_overcount_closed_form,
    residue_histogram,
    theorem2_window,
    verify_cong_identity,
    verify_gap_sequence,
    verify_theorem1,
    verify_theorem2_windows,
)

CE, CO1, CO1P, CO2 = CompositionFamily.CE, CompositionFamily.CO1, CompositionFamily.CO1_PRIME, CompositionFamily.CO2
ZZ = CoefficientRing.exact()


class TestHistogram:
    @pytest.mark.parametrize(
        "family, a, X, counts",
        [(CE, 4, 6, (3, 1, 2, 0)), (CO1, 2, 6, (3, 3)), (CE, 2, 1, (0, 1)), (CO2, 3, 0, (0, 0, 0))],
    )
    def test_examples(self, family, a, X, counts):
        assert residue_histogram(family, a, X).counts == counts

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            residue_histogram(CE, 1, 10)

    def test_sum_invariant_enforced(self):
        with pytest.raises(ValueError):
            ResidueHistogram(CE, 2, 5, (1, 1))

    @pytest.mark.parametrize("family", [CE, CO1, CO1P, CO2], ids=str)
    def test_matches_exact_reduction(self, family):
        exact = coefficient_table(family, ZZ, 1999).values
        for a in (2, 3, 4, 5, 12):
            want = np.bincount([int(v) % a for v in exact], minlength=a)
            assert residue_histogram(family, a, 2000).counts == tuple(int(c) for c in want)

    def test_monotone_in_X(self):
        prev = residue_histogram(CO2, 6, 0).counts
        for X in range(1, 400, 7):
            cur = residue_histogram(CO2, 6, X).counts
            assert all(c >= p for c, p in zip(cur, prev))
            prev = cur

    @settings(max_examples=40, deadline=None)
    @given(cuts=st.lists(st.integers(0, 500), min_size=2, max_size=2), a=st.integers(2, 9))
    def test_merge_associative(self, cuts, a):
        values = coefficient_table(CE, CoefficientRing.mod(a), 499).values
        i, j = sorted(cuts)
        parts = [histogram_from_values(CE, values[lo:hi], a) for lo, hi in ((0, i), (i, j), (j, 500))]
        left = parts[0].merge(parts[1]).merge(parts[2])
        right = parts[0].merge(parts[1].merge(parts[2]))
        assert left == right == residue_histogram(CE, a, 500)

    def test_chunked_equals_whole(self):
        values = coefficient_table(CO1, CoefficientRing.mod(7), 999).values
        assert histogram_from_values(CO1, values, 7, chunk=37) == residue_histogram(CO1, 7, 1000)


class TestTheoremOne:
    def test_overcount(self):
        assert pentagonal_overcount(1) == 0
        assert pentagonal_overcount(2) == 2
        assert pentagonal_overcount(6) == 4
        for X in range(1, 5000):
            closed = pentagonal_overcount_closed_form(X)
            assert closed - 2 <= pentagonal_overcount(X) <= closed

    def test_6k2_count(self):
        assert count_6k2_pm_2k_below(4) == 0
        assert count_6k2_pm_2k_below(5) == 1
        assert count_6k2_pm_2k_below(9) == 2

    @pytest.mark.parametrize("part", ["i", "ii", "iii"])
    def test_passes_at_ten_thousand(self, part):
        report = verify_theorem1(part, 10**4)
        assert report.passed, report.summary()
        assert report.bounds.lhs >= report.summary_metrics["certified_bound"]

    def test_rejects_small_X(self):
        with pytest.raises(ValueError):
            verify_theorem1("i", 999)
        with pytest.raises(ValueError):
            verify_theorem1("iv", 10**4)

    def test_part_ii_metrics(self):
        m = verify_theorem1("ii", 10**4).summary_metrics
        assert m["sieve_sound"] and m["count_6k2_pm_2k_bound_ok"]
        assert 0 < m["zero_fraction"] < 1


class TestCong:
    def test_m_one_values(self):
        ce = coefficient_table(CE, ZZ, 10).values
        assert cong_sum(CE, ce, 1) == 2
        co1 = coefficient_table(CO1, ZZ, 10).values
        co2 = coefficient_table(CO2, ZZ, 10).values
        assert euler_coefficient(co1, 2) == 0
        assert euler_coefficient(co2, 2) == 0

    @pytest.mark.parametrize("family", [CE, CO1, CO2], ids=str)
    def test_identity_to_twenty(self, family):
        assert verify_cong_identity(family, 20).passed

    def test_co1_prime_rejected(self):
        with pytest.raises(ValueError):
            verify_cong_identity(CO1P, 3)

    def test_short_table_rejected(self):
        with pytest.raises(ValueError):
            verify_cong_identity(CE, 3, table=[1, 0, 2])


class TestWindows:
    def test_window_bounds(self):
        assert theorem2_window(CE, 1) == (3, 4)
        assert theorem2_window(CO1, 1) == (1, 2)
        assert theorem2_window(CO2, 2, window="ce") == (5, 17)

    def test_examples(self):
        rep = verify_theorem2_windows(CE, 3, 0, 1)
        assert rep.passed and rep.witnesses[0].index == 3
        rep = verify_theorem2_windows(CE, 4, 2, 1)
        assert rep.passed and rep.witnesses[0].observed == 0
        assert verify_theorem2_windows(CO1, 2, 0, 10).passed

    @pytest.mark.parametrize("family", [CO1, CO2], ids=str)
    def test_family_windows(self, family):
        for a in (2, 3, 4, 5, 12):
            for r in range(a):
                assert verify_theorem2_windows(family, a, r, 10).passed

    def test_ce_window_fails_for_co2_mod_3(self):
        # co2(3) = 4 and co2(4) = 7 are both 1 mod 3
        rep = verify_theorem2_windows(CO2, 3, 1, 1, window="ce")
        assert not rep.passed
        assert rep.discrepancies[0].index == 3

    def test_errors(self):
        with pytest.raises(ValueError):
            verify_theorem2_windows(CE, 2, 0, 3)
        with pytest.raises(ValueError):
            verify_theorem2_windows(CO1, 3, 3, 3)


class TestGap:
    def test_sequence(self):
        assert gap_sequence(4) == [1, 3, 27, 2187]

    def test_reports(self):
        rep = verify_gap_sequence(3)
        assert rep.passed
        assert [w.observed for w in rep.witnesses] == [1, 3, 27]
        assert verify_gap_sequence(10).passed

    def test_rejects_short(self):
        with pytest.raises(ValueError):
            verify_gap_sequence(1)


class TestConjecture:
    def test_ce_mod2_small(self):
        rep = conjecture_profile(CE, 2, 100)
        assert [w.observed for w in rep.witnesses] == [99, 1]

    def test_regimes(self):
        assert conjectured_count(CO2, 4, 1, 100) == ("uniform", 25.0)
        assert conjectured_count(CE, 3, 1, 90) == ("uniform", 30.0)
        assert conjectured_count(CO1, 4, 2, 100) == ("even", 50.0)
        assert conjectured_count(CE, 4, 1, 100) == ("odd", None)
        regime, value = conjectured_count(CO1, 2, 1, 200)
        assert regime == "odd" and value == pytest.approx(20.0)

    def test_triangular_count(self):
        assert count_triangular_below(1) == 1
        assert count_triangular_below(2) == 2
        assert count_triangular_below(10**6) == 1414

    def test_co1_structural_check(self):
        for a in (2, 4, 6):
            rep = conjecture_profile(CO1, a, 50000)
            assert rep.passed
            assert rep.summary_metrics["odd_residue_total"] == count_triangular_below(50000)

    def test_co1_prime_rejected(self):
        with pytest.raises(ValueError):
            conjecture_profile(CO1P, 2, 10)
