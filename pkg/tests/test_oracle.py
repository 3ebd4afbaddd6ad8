import pytest

from cylpart import (Partition, Profile, borodin_product, count_bivariate,
                     count_distinct_series, count_series, enumerate_by_weight,
                     validate)
from cylpart.oracle import (count_max_at_most, count_max_exactly,
                            has_distinct_parts)
from cylpart.slices import decompose, recompose

from conftest import all_profiles


class TestEnumeration:
    def test_weight_zero(self):
        for prof in [Profile.of(2, 1), Profile.of(1, 2, 0)]:
            found = enumerate_by_weight(prof, 0)
            assert len(found) == 1 and found[0].is_empty

    def test_duplicate_free_and_sorted(self):
        found = enumerate_by_weight(Profile.of(1, 1, 1), 8)
        texts = [cp.to_text() for cp in found]
        assert len(set(texts)) == len(texts)
        assert [cp.weight for cp in found] == sorted(cp.weight for cp in found)

    def test_large_example_out_of_range_but_valid(self):
        prof = Profile.of(2, 1)
        rows = (Partition.of(15, 15, 10, 10, 6, 5), Partition.of(18, 13, 6, 6))
        cp = validate(rows, prof)
        assert cp.weight == 104
        assert cp.to_text() not in {x.to_text() for x in enumerate_by_weight(prof, 20)}

    def test_cap_guard(self):
        with pytest.raises(ValueError):
            enumerate_by_weight(Profile.of(1, 1), 40)
        enumerate_by_weight(Profile.of(1, 1), 35, cap=35)

    def test_closed_under_slice_recomposition(self):
        pool = enumerate_by_weight(Profile.of(1, 2, 0), 9)
        texts = {cp.to_text() for cp in pool}
        for cp in pool:
            assert recompose(decompose(cp)).to_text() in texts


class TestCounting:
    def test_constant_term(self, small_profiles):
        for prof in small_profiles[::5]:
            assert count_series(prof, 4).coeffs[0] == 1

    def test_matches_product_small(self):
        for prof in [Profile.of(2, 1), Profile.of(4, 3), Profile.of(1, 2, 0),
                     Profile.of(0, 1, 2), Profile.of(1, 1, 1, 1)]:
            order = 8
            assert count_series(prof, order).coeffs == \
                borodin_product(prof, order).coeffs

    def test_matches_product_every_small_family(self):
        for prof in all_profiles(3, 4):
            assert count_series(prof, 12).coeffs == \
                borodin_product(prof, 12).coeffs, prof

    def test_bivariate_specializes(self):
        prof = Profile.of(1, 1, 1)
        two = count_bivariate(prof, 9)
        assert two.at_z_one().coeffs == count_series(prof, 9).coeffs
        assert two.coeffs[0].coeffs == (1,)
        for n, zpoly in enumerate(two.coeffs):
            assert zpoly.degree <= n

    def test_max_part_filters(self):
        prof = Profile.of(2, 1)
        order = 10
        total = count_series(prof, order)
        stacked = count_max_at_most(prof, 0, order)
        for n in range(1, order + 1):
            stacked = stacked + count_max_exactly(prof, n, order)
        assert stacked.coeffs == total.coeffs
        assert count_max_at_most(prof, order, order).coeffs == total.coeffs


class TestDistinct:
    def test_small_counts(self):
        assert count_distinct_series(Profile.of(1, 1, 1), 3).coeffs == (1, 3, 3, 9)

    def test_repeated_parts_rejected(self):
        cp = validate((Partition.of(10, 5, 4, 1), Partition.of(12, 8, 5, 3),
                       Partition.of(7, 6, 4, 2)), Profile.of(1, 2, 0))
        assert not has_distinct_parts(cp)

    def test_distinct_within_one_row_counts(self):
        cp = validate((Partition.of(3, 1), Partition.of(4)), Profile.of(1, 1))
        assert has_distinct_parts(cp)
        bad = validate((Partition.of(3, 3), Partition.of(4)), Profile.of(1, 1))
        assert not has_distinct_parts(bad)

    def test_constant_term(self):
        assert count_distinct_series(Profile.of(0, 2, 0), 5).coeffs[0] == 1
