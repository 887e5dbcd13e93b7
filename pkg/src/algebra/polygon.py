"""
Polygon space cohomology module.
Provides the cohomology ring of the spatial polygon space N(ℓ), its Chern and
symplectic classes, and the ring map induced by including N(ℓᴾ) into N(ℓ).
"""

from fractions import Fraction
from typing import Dict, List, Optional

from src.algebra.fields import FieldSpec, Q
from src.algebra.rings import (
    GradedRingPresentation, Generator, Polynomial, QuotientRing, RingElement, RingHom
)
from src.combinatorics.lengths import (
    LengthVector, OrderedSetPartition, ShortLongTable, classify_subsets, edge_identify, vet
)
from src.utils.errors import (
    DegenerateLength, IndexOutOfRange, InputError, InvalidField, InvalidLength, NonGenericLength,
    PresentationError, SizeTooLarge, VerificationError
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_POLYGON_SIZE = 12


class PolygonRing(QuotientRing):
    """H*(N(ℓ)) on generators R, V1, ..., V(n-1), all of degree 2."""

    def __init__(self, lengths: LengthVector, presentation: GradedRingPresentation):
        self.lengths = lengths
        self.n = lengths.n
        super().__init__(presentation, name=f"H*(N{lengths})")

    @property
    def dimension(self) -> int:
        """Real dimension 2(n-3) of N(ℓ)."""
        return 2 * (self.n - 3)


def _minimal_long_with_last(table: ShortLongTable) -> List[int]:
    """Masks of long subsets containing n that stay long only because of every member."""
    n = table.n
    minimal = []
    for mask in table.long_containing(n):
        bits = mask.bits
        if all(not table.is_long(bits & ~(1 << i)) for i in range(n - 1) if bits >> i & 1):
            minimal.append(bits)
    return minimal


def _polygon_relations(table: ShortLongTable, top_degree: int) -> List[Polynomial]:
    n = table.n
    width = n  # R followed by V1..V(n-1)
    relations: List[Polynomial] = []

    def v_monomial(bits: int, r_power: int) -> tuple:
        exponents = [0] * width
        exponents[0] = r_power
        for i in range(n - 1):
            if bits >> i & 1:
                exponents[i + 1] = 1
        return tuple(exponents)

    # V_i^2 + R V_i
    for i in range(1, n):
        square = [0] * width
        square[i] = 2
        mixed = [0] * width
        mixed[0] = 1
        mixed[i] = 1
        relations.append(Polynomial.from_mapping({tuple(square): 1, tuple(mixed): 1}))

    # products of V_i over L minus n, for L long containing n
    last = 1 << (n - 1)
    for bits in _minimal_long_with_last(table):
        rest = bits & ~last
        if 2 * bin(rest).count("1") <= top_degree:
            relations.append(Polynomial.monomial(v_monomial(rest, 0)))

    # sums over short S inside L of V_S R^(|L|-|S|-1), for L long not containing n
    for mask in table.long_subsets():
        bits = mask.bits
        if bits & last:
            continue
        size = len(mask)
        if 2 * (size - 1) > top_degree:
            continue
        terms: Dict[tuple, int] = {}
        sub = bits
        while True:
            if table.is_short(sub):
                exponent = size - bin(sub).count("1") - 1
                terms[v_monomial(sub, exponent)] = 1
            if sub == 0:
                break
            sub = (sub - 1) & bits
        relations.append(Polynomial.from_mapping(terms))

    return relations


def build_polygon(
    lengths: LengthVector,
    field: FieldSpec = Q,
    max_size: int = MAX_POLYGON_SIZE
) -> PolygonRing:
    """
    Build the cohomology ring of the polygon space N(ℓ).

    Args:
        lengths: Generic, non-degenerate length vector
        field: Coefficient field
        max_size: Largest n accepted

    Returns:
        PolygonRing with rank 1 in the top degree 2(n-3)

    Raises:
        InputError: If n < 4
        SizeTooLarge: If n exceeds max_size
        NonGenericLength: If some subset is balanced
        DegenerateLength: If one edge dominates
    """
    if lengths.n > max_size:
        raise SizeTooLarge(f"Polygon rings are limited to n <= {max_size}, got n={lengths.n}")
    if lengths.n < 4:
        raise InputError(f"Polygon spaces need n >= 4 edges, got n={lengths.n}")
    flags = vet(lengths)
    if not flags.generic:
        raise NonGenericLength(f"{lengths} is not generic")
    if not flags.nondegenerate:
        raise DegenerateLength(f"{lengths} is degenerate")

    n = lengths.n
    top_degree = 2 * (n - 3)
    table = classify_subsets(lengths)
    generators = (Generator("R", 2),) + tuple(Generator(f"V{i}", 2) for i in range(1, n))
    relations = _polygon_relations(table, top_degree)
    presentation = GradedRingPresentation(
        generators=generators,
        relations=tuple(relations),
        field=field,
        top_degree=top_degree
    )
    logger.debug(f"Polygon presentation for {lengths}: {len(relations)} relations")

    ring = PolygonRing(lengths, presentation)
    if ring.rank(top_degree) != 1:
        raise VerificationError(
            f"Top degree of {ring.name} has rank {ring.rank(top_degree)}, expected 1"
        )
    return ring


def chern_class(ring: PolygonRing, j: int) -> RingElement:
    """
    The class c_j(ℓ): R + 2V_j for j < n and -R for j = n.

    Raises:
        IndexOutOfRange: If j is outside [1..n]
    """
    if not isinstance(ring, PolygonRing):
        raise PresentationError("Chern classes are defined on polygon rings")
    if not 1 <= j <= ring.n:
        raise IndexOutOfRange(f"Chern class index {j} outside [1..{ring.n}]")
    r = ring.generator("R")
    if j == ring.n:
        return -r
    return r + ring.generator(f"V{j}").scale(2)


def symplectic_class(
    ring: PolygonRing,
    lengths: Optional[LengthVector] = None,
    scale: Optional[int] = None
) -> RingElement:
    """
    The class [ω] = Σ ℓ_i c_i(ℓ) after clearing denominators of ℓ.

    Args:
        ring: Polygon ring over Q
        lengths: Length vector, defaults to the ring's own
        scale: Positive factor applied to ℓ before summing; defaults to the
            least common denominator. Pairs pass a shared scale.

    Returns:
        Degree-2 class with integer coefficients on the Chern classes
    """
    if not isinstance(ring, PolygonRing):
        raise PresentationError("Symplectic classes are defined on polygon rings")
    if ring.field.characteristic != 0:
        raise InvalidField(f"Symplectic classes are computed over Q, not {ring.field}")
    lengths = lengths or ring.lengths
    if lengths.n != ring.n:
        raise PresentationError(f"Length vector of size {lengths.n} for a ring with n={ring.n}")
    if scale is None:
        _, scale = lengths.integer_scaled()

    omega = ring.zero()
    for i, entry in enumerate(lengths.entries, start=1):
        weight = Fraction(entry) * scale
        if weight.denominator != 1:
            raise InvalidLength(f"Scale {scale} does not clear the denominator of ℓ_{i} = {entry}")
        omega = omega + chern_class(ring, i).scale(weight)
    return omega


def polygon_inclusion(
    source: PolygonRing,
    target: PolygonRing,
    partition: OrderedSetPartition
) -> RingHom:
    """
    Ring map H*(N(ℓ)) -> H*(N(ℓᴾ)) induced by the inclusion of aligned configurations.

    On Chern classes it sends c_j(ℓ) to c_φ(j)(ℓᴾ); on generators this reads
    R -> -c_φ(n)(ℓᴾ) and V_j -> (c_φ(j)(ℓᴾ) + c_φ(n)(ℓᴾ))/2.

    Raises:
        InvalidField: In characteristic 2
        PresentationError: If the target is not the edge identification of the source
    """
    if source.field.characteristic == 2:
        raise InvalidField("The inclusion map divides by 2 and needs characteristic other than 2")
    identified = edge_identify(source.lengths, partition)
    if identified.lengths != target.lengths:
        raise PresentationError(
            f"Target ring is N{target.lengths}, expected N{identified.lengths} for partition {partition}"
        )

    phi = partition.phi
    n = source.n
    c_last = chern_class(target, phi[n - 1])
    half = Fraction(1, 2)
    images = {"R": -c_last}
    for j in range(1, n):
        images[f"V{j}"] = (chern_class(target, phi[j - 1]) + c_last).scale(half)

    logger.info(f"Building inclusion {target.name} -> {source.name} along {partition}")
    return RingHom(source, target, images)
