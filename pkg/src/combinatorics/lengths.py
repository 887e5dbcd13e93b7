"""
Length vector module for spatial polygon spaces.
Provides exact short/long classification of subsets, genericity and
non-degeneracy checks, sorting, and edge identification along set partitions.

All arithmetic is exact: lengths are Fractions and subset sums are computed on
the integer vector obtained by clearing denominators.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from src.utils.errors import (
    BadPartition, IndexOutOfRange, InvalidLength, SizeTooLarge, TooFewParts, VerificationError
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_ENUMERATION_SIZE = 24

# int64 subset sums stay exact below this bound
_INT64_SAFE = 2 ** 61


class SubsetClass(IntEnum):
    """Classification of a subset S relative to its complement."""

    SHORT = 0
    LONG = 1
    BALANCED = 2

    def __str__(self) -> str:
        return self.name.capitalize()


@dataclass(frozen=True)
class LengthVector:
    """Positive exact edge lengths of a polygon, n >= 3."""

    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        try:
            entries = tuple(Fraction(e) for e in self.entries)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidLength(f"Length entries must be rationals: {e}")
        if len(entries) < 3:
            raise InvalidLength(f"A length vector needs at least 3 entries, got {len(entries)}")
        if any(e <= 0 for e in entries):
            raise InvalidLength(f"Lengths must be positive: {self}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        """
        Parse comma-separated rational literals such as "1,1,2,3,5,7" or "1/2,3/2,1".

        Raises:
            InvalidLength: On malformed literals or non-positive entries
        """
        items = [item.strip() for item in text.split(",")]
        if not all(items):
            raise InvalidLength(f"Empty entry in length vector {text!r}")
        try:
            return cls(tuple(Fraction(item) for item in items))
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidLength(f"Cannot parse length vector {text!r}: {e}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def integer_scaled(self) -> Tuple[Tuple[int, ...], int]:
        """
        Clear denominators.

        Returns:
            Tuple of (integer entries, least common denominator)
        """
        lcd = lcm(*(e.denominator for e in self.entries))
        return tuple(int(e * lcd) for e in self.entries), lcd

    def subset_sum(self, indices: Iterable[int]) -> Fraction:
        """Exact sum over 1-based indices."""
        return sum((self.entries[i - 1] for i in indices), Fraction(0))

    def __getitem__(self, index: int) -> Fraction:
        """1-based entry access."""
        return self.entries[index - 1]

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class SubsetMask:
    """Subset of [n] stored as a bitmask; bit i-1 represents index i."""

    bits: int
    n: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise BadPartition(f"Mask {self.bits:#b} has bits outside [1..{self.n}]")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "SubsetMask":
        bits = 0
        for i in indices:
            if not 1 <= i <= n:
                raise BadPartition(f"Index {i} outside [1..{n}]")
            bits |= 1 << (i - 1)
        return cls(bits, n)

    def members(self) -> Tuple[int, ...]:
        """Sorted 1-based indices."""
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def complement(self) -> "SubsetMask":
        return SubsetMask(((1 << self.n) - 1) ^ self.bits, self.n)

    def __contains__(self, index: int) -> bool:
        return 1 <= index <= self.n and bool(self.bits >> (index - 1) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members()) + "}"


class ShortLongTable:
    """Classification of all 2^n subsets of [n] for a length vector."""

    def __init__(self, lengths: LengthVector, classes: np.ndarray):
        self.lengths = lengths
        self.n = lengths.n
        self._classes = classes
        logger.debug(f"ShortLongTable initialized for n={self.n}")

    def class_of(self, subset: Union[SubsetMask, int, Iterable[int]]) -> SubsetClass:
        """
        Classification of a subset.

        Args:
            subset: SubsetMask, raw bitmask, or iterable of 1-based indices

        Returns:
            SubsetClass of the subset
        """
        return SubsetClass(int(self._classes[self._bits(subset)]))

    def is_short(self, subset: Union[SubsetMask, int, Iterable[int]]) -> bool:
        return self.class_of(subset) is SubsetClass.SHORT

    def is_long(self, subset: Union[SubsetMask, int, Iterable[int]]) -> bool:
        return self.class_of(subset) is SubsetClass.LONG

    def short_containing(self, i: int) -> List[SubsetMask]:
        """The family of short subsets containing index i."""
        return self._family(SubsetClass.SHORT, i)

    def long_containing(self, i: int) -> List[SubsetMask]:
        """The family of long subsets containing index i."""
        return self._family(SubsetClass.LONG, i)

    def long_subsets(self) -> List[SubsetMask]:
        return self._masks_where(self._classes == SubsetClass.LONG)

    def balanced_subsets(self) -> List[SubsetMask]:
        return self._masks_where(self._classes == SubsetClass.BALANCED)

    def _family(self, cls: SubsetClass, i: int) -> List[SubsetMask]:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"Index {i} outside [1..{self.n}]")
        contains = (np.arange(1 << self.n, dtype=np.int64) >> (i - 1)) & 1 == 1
        return self._masks_where((self._classes == cls) & contains)

    def _masks_where(self, selector: np.ndarray) -> List[SubsetMask]:
        return [SubsetMask(int(bits), self.n) for bits in np.nonzero(selector)[0]]

    def _bits(self, subset) -> int:
        if isinstance(subset, SubsetMask):
            return subset.bits
        if isinstance(subset, (int, np.integer)):
            return int(subset)
        return SubsetMask.from_indices(subset, self.n).bits


@dataclass(frozen=True)
class OrderedSetPartition:
    """Ordered partition of [n] into disjoint nonempty parts."""

    parts: Tuple[SubsetMask, ...]
    n: int

    def __post_init__(self):
        seen = 0
        for part in self.parts:
            if part.n != self.n:
                raise BadPartition(f"Part {part} is not a subset of [1..{self.n}]")
            if part.bits == 0:
                raise BadPartition("Parts must be nonempty")
            if seen & part.bits:
                raise BadPartition(f"Part {part} overlaps an earlier part")
            seen |= part.bits
        if seen != (1 << self.n) - 1:
            missing = SubsetMask(((1 << self.n) - 1) ^ seen, self.n)
            raise BadPartition(f"Parts do not cover [1..{self.n}]; missing {missing}")

    @classmethod
    def parse(cls, text: str, n: int) -> "OrderedSetPartition":
        """
        Parse pipe-separated index groups such as "1|3|4|2,5|6" (1-based).

        Raises:
            BadPartition: On malformed text or parts that do not partition [n]
        """
        parts = []
        for group in text.split("|"):
            try:
                indices = [int(token) for token in group.split(",") if token.strip()]
            except ValueError:
                raise BadPartition(f"Cannot parse partition group {group!r}")
            if not indices:
                raise BadPartition(f"Empty part in partition {text!r}")
            if len(set(indices)) != len(indices):
                raise BadPartition(f"Repeated index in part {group!r}")
            parts.append(SubsetMask.from_indices(indices, n))
        return cls(tuple(parts), n)

    @classmethod
    def from_groups(cls, groups: Sequence[Sequence[int]], n: int) -> "OrderedSetPartition":
        return cls(tuple(SubsetMask.from_indices(g, n) for g in groups), n)

    @property
    def m(self) -> int:
        return len(self.parts)

    @cached_property
    def phi(self) -> Tuple[int, ...]:
        """phi[i-1] is the 1-based part containing index i."""
        owner = [0] * self.n
        for k, part in enumerate(self.parts, start=1):
            for i in part.members():
                owner[i - 1] = k
        return tuple(owner)

    def __str__(self) -> str:
        return "|".join(",".join(str(i) for i in part.members()) for part in self.parts)


@dataclass(frozen=True)
class Vetting:
    """Genericity, non-degeneracy and ordering flags of a length vector."""

    generic: bool
    nondegenerate: bool
    ordered: bool


@dataclass(frozen=True)
class EdgeIdentification:
    """Result of merging edges along an ordered set partition."""

    lengths: LengthVector
    phi: Tuple[int, ...]
    generic: bool
    nondegenerate: bool


def classify_subsets(lengths: LengthVector, max_size: int = MAX_ENUMERATION_SIZE) -> ShortLongTable:
    """
    Classify every subset of [n] as short, long or balanced.

    Subset sums are built by doubling an integer array once per entry, so mask
    index and subset coincide.

    Args:
        lengths: Length vector
        max_size: Enumeration ceiling

    Returns:
        ShortLongTable over all 2^n subsets

    Raises:
        SizeTooLarge: If n exceeds the ceiling
    """
    if lengths.n > max_size:
        raise SizeTooLarge(f"Subset enumeration limited to n <= {max_size}, got n={lengths.n}")

    weights, _ = lengths.integer_scaled()
    total = sum(weights)
    dtype = np.int64 if 2 * total < _INT64_SAFE else object

    sums = np.zeros(1, dtype=dtype)
    for w in weights:
        sums = np.concatenate((sums, sums + w))

    twice = sums * 2
    classes = np.where(
        twice < total,
        SubsetClass.SHORT,
        np.where(twice > total, SubsetClass.LONG, SubsetClass.BALANCED)
    ).astype(np.uint8)

    logger.debug(f"Classified {len(classes):,} subsets for {lengths}")
    return ShortLongTable(lengths, classes)


def vet(lengths: LengthVector) -> Vetting:
    """
    Genericity, non-degeneracy and ordering of a length vector.

    Genericity is decided by exact subset-sum reachability of half the total,
    which needs no enumeration ceiling.
    """
    weights, _ = lengths.integer_scaled()
    total = sum(weights)

    generic = True
    if total % 2 == 0:
        half = total // 2
        reachable = {0}
        for w in weights:
            reachable |= {s + w for s in reachable if s + w <= half}
            if half in reachable:
                generic = False
                break

    nondegenerate = all(2 * w < total for w in weights)
    ordered = all(a <= b for a, b in zip(lengths.entries, lengths.entries[1:]))
    return Vetting(generic=generic, nondegenerate=nondegenerate, ordered=ordered)


def sort_ordered(lengths: LengthVector) -> Tuple[LengthVector, Tuple[int, ...]]:
    """
    Sort a length vector into weakly increasing order.

    Returns:
        Tuple of (sorted vector, permutation) where permutation[i-1] is the
        1-based sorted position of original index i
    """
    order = sorted(range(lengths.n), key=lambda i: lengths.entries[i])
    permutation = [0] * lengths.n
    for position, original in enumerate(order, start=1):
        permutation[original] = position
    return LengthVector(tuple(lengths.entries[i] for i in order)), tuple(permutation)


def edge_identify(lengths: LengthVector, partition: OrderedSetPartition) -> EdgeIdentification:
    """
    Merge edges along an ordered set partition.

    Entry k of the result is the exact sum of the lengths in part k. The
    result is not re-sorted.

    Args:
        lengths: Length vector of size n
        partition: Ordered partition of [n] into m parts

    Returns:
        EdgeIdentification with the merged vector, phi and flags

    Raises:
        BadPartition: If the partition is over a different n
        TooFewParts: If m < 3
    """
    if partition.n != lengths.n:
        raise BadPartition(f"Partition of [1..{partition.n}] applied to a vector of size {lengths.n}")
    if partition.m < 3:
        raise TooFewParts(f"Edge identification needs at least 3 parts, got {partition.m}")

    merged = LengthVector(tuple(lengths.subset_sum(part.members()) for part in partition.parts))
    flags = vet(merged)

    if flags.generic is False and vet(lengths).generic:
        # subset sums of the merged vector are subset sums of the original
        raise VerificationError(f"Edge identification of generic {lengths} produced non-generic {merged}")

    logger.debug(f"Edge identification {lengths} along {partition} -> {merged}")
    return EdgeIdentification(
        lengths=merged,
        phi=partition.phi,
        generic=flags.generic,
        nondegenerate=flags.nondegenerate
    )


def parse_lengths(text: str) -> LengthVector:
    return LengthVector.parse(text)


def parse_partition(text: str, n: int) -> OrderedSetPartition:
    return OrderedSetPartition.parse(text, n)
