"""
Tests for length vectors, short/long classification and edge identification.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from src.combinatorics.lengths import (
    LengthVector, OrderedSetPartition, SubsetClass, SubsetMask, classify_subsets, edge_identify,
    parse_lengths, parse_partition, sort_ordered, vet
)
from src.utils.errors import BadPartition, InvalidLength, SizeTooLarge, TooFewParts

integer_lengths = st.lists(st.integers(min_value=1, max_value=20), min_size=3, max_size=9)


class TestLengthVector:

    def test_parse_integers_and_rationals(self):
        assert parse_lengths("1,1,2,3,5,7").entries == (1, 1, 2, 3, 5, 7)
        lengths = parse_lengths("1/2, 3/2, 1")
        assert lengths.entries == (Fraction(1, 2), Fraction(3, 2), Fraction(1))
        assert lengths.total == 3

    @pytest.mark.parametrize("text", ["1,,2", "1,a,2", "1,0,2", "1,-1,2", "1,2", "1/0,1,1"])
    def test_parse_rejects(self, text):
        with pytest.raises(InvalidLength):
            parse_lengths(text)

    def test_integer_scaled(self):
        ints, lcd = parse_lengths("1/2,1/3,1").integer_scaled()
        assert (ints, lcd) == ((3, 2, 6), 6)

    def test_one_based_access(self, fibonacci_lengths):
        assert fibonacci_lengths[1] == 1
        assert fibonacci_lengths[6] == 7
        assert fibonacci_lengths.subset_sum([2, 5]) == 6
        assert str(fibonacci_lengths) == "(1,1,2,3,5,7)"

    def test_sort_ordered(self):
        lengths, permutation = sort_ordered(parse_lengths("3,1,2"))
        assert lengths.entries == (1, 2, 3)
        assert permutation == (3, 1, 2)


class TestClassification:

    def test_fibonacci_table(self, fibonacci_lengths):
        table = classify_subsets(fibonacci_lengths)
        assert table.is_long([6, 5])
        assert table.is_short([6])
        assert table.is_short([1, 2, 3, 4])
        assert not table.balanced_subsets()
        assert all(6 in mask for mask in table.long_containing(6))

    def test_balanced_subset(self):
        table = classify_subsets(parse_lengths("1,1,1,1"))
        assert table.class_of([1, 2]) == SubsetClass.BALANCED
        assert len(table.balanced_subsets()) == 6

    def test_size_ceiling(self):
        with pytest.raises(SizeTooLarge):
            classify_subsets(LengthVector(tuple([1] * 7)), max_size=6)

    @given(integer_lengths)
    def test_complement_of_short_is_long(self, weights):
        lengths = LengthVector(tuple(weights))
        assume(vet(lengths).generic)
        table = classify_subsets(lengths)
        full = (1 << lengths.n) - 1
        for bits in range(full + 1):
            assert table.is_short(bits) == table.is_long(full ^ bits)

    @given(integer_lengths)
    def test_genericity_matches_enumeration(self, weights):
        lengths = LengthVector(tuple(weights))
        table = classify_subsets(lengths)
        assert vet(lengths).generic == (not table.balanced_subsets())

    @given(integer_lengths)
    def test_short_sets_are_closed_downward(self, weights):
        lengths = LengthVector(tuple(weights))
        table = classify_subsets(lengths)
        for mask in table.short_containing(1):
            for i in mask.members():
                smaller = mask.bits & ~(1 << (i - 1))
                assert table.is_short(smaller)


class TestVetting:

    def test_flags(self, fibonacci_lengths):
        flags = vet(fibonacci_lengths)
        assert flags.generic and flags.nondegenerate and flags.ordered

    def test_degenerate(self):
        assert not vet(parse_lengths("1,1,7,10")).nondegenerate

    def test_non_generic(self):
        assert not vet(parse_lengths("1,1,1,1")).generic

    def test_large_vector_needs_no_enumeration(self):
        lengths = LengthVector(tuple(range(1, 41)) + (1000,))
        assert vet(lengths).generic is True


class TestPartitions:

    def test_parse_and_phi(self):
        partition = parse_partition("1|3|4|2,5|6", 6)
        assert partition.m == 5
        assert partition.phi == (1, 4, 2, 3, 4, 5)
        assert str(partition) == "1|3|4|2,5|6"

    @pytest.mark.parametrize("text", ["1|2|2,3,4,5,6", "1|2|3", "1||2,3,4,5,6", "1|2|x,3,4,5,6", "1|2|3,4,5,6,7"])
    def test_parse_rejects(self, text):
        with pytest.raises(BadPartition):
            parse_partition(text, 6)

    def test_mask_complement(self):
        mask = SubsetMask.from_indices([1, 3], 4)
        assert mask.complement().members() == (2, 4)
        assert len(mask) == 2


class TestEdgeIdentification:

    @pytest.mark.parametrize("text,expected,nondegenerate", [
        ("1|3|4|2,5|6", (1, 2, 3, 6, 7), True),
        ("1|2|4|5|3,6", (1, 1, 3, 5, 9), True),
        ("1,4|6|2,3,5", (4, 7, 8), True),
        ("1|2|6|3,4,5", (1, 1, 7, 10), False)
    ])
    def test_merged_vectors(self, fibonacci_lengths, text, expected, nondegenerate):
        identified = edge_identify(fibonacci_lengths, parse_partition(text, 6))
        assert identified.lengths.entries == expected
        assert identified.generic
        assert identified.nondegenerate == nondegenerate

    def test_too_few_parts(self, fibonacci_lengths):
        with pytest.raises(TooFewParts):
            edge_identify(fibonacci_lengths, parse_partition("1,2,3|4,5,6", 6))

    def test_size_mismatch(self, fibonacci_lengths):
        with pytest.raises(BadPartition):
            edge_identify(fibonacci_lengths, parse_partition("1|2|3", 3))

    @given(integer_lengths, st.randoms(use_true_random=False))
    def test_generic_stays_generic(self, weights, random):
        lengths = LengthVector(tuple(weights))
        assume(vet(lengths).generic)
        indices = list(range(1, lengths.n + 1))
        random.shuffle(indices)
        m = random.randint(3, lengths.n)
        cuts = sorted(random.sample(range(1, lengths.n), m - 1))
        groups = [indices[a:b] for a, b in zip([0] + cuts, cuts + [lengths.n])]
        identified = edge_identify(lengths, OrderedSetPartition.from_groups(groups, lengths.n))
        assert identified.generic
        assert identified.lengths.total == lengths.total
