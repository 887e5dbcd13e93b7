"""
Zero-divisor cup-length module.
Provides the zero-divisor generators of a pair of rings, the multiset search
for nonzero products of zero-divisors, the symplectic fast path and the
binomial-parity oracle used to cross-check projective pairs.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence, Tuple

from src.algebra.linear import kernel_basis
from src.algebra.rings import RingElement, RingHom, TensorRing
from src.utils.errors import (
    CertificateMismatch, InvalidField, NotAZeroDivisor, PullbackMismatch, RingMismatch,
    TopPowerVanishes
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ZeroDivisor:
    """A basic zero-divisor and where it came from."""

    element: RingElement
    degree: int
    origin: str


@dataclass
class CupLengthCertificate:
    """k zero-divisors whose product is nonzero, witnessing TC >= k + 1."""

    k: int
    factors: Tuple[RingElement, ...]
    labels: Tuple[str, ...]
    product: RingElement
    coefficient: Optional[Fraction] = None
    notes: List[str] = field(default_factory=list)

    @property
    def bound_implied(self) -> int:
        return self.k + 1

    @property
    def ring(self) -> TensorRing:
        return self.product.ring


def evaluate(tensor_ring: TensorRing, hom: RingHom, element: RingElement) -> RingElement:
    """
    The evaluation α⊗β -> ι*(α)·β into the subspace ring.

    Args:
        tensor_ring: H*(X) ⊗ H*(Y)
        hom: ι*: H*(X) -> H*(Y)
        element: Element of the tensor ring

    Returns:
        Element of H*(Y)
    """
    if tensor_ring.left is not hom.source or tensor_ring.right is not hom.target:
        raise RingMismatch(f"{tensor_ring.name} is not the tensor ring of {hom.source.name} and {hom.target.name}")
    if element.ring is not tensor_ring:
        raise RingMismatch(f"Element of {element.ring.name} evaluated on {tensor_ring.name}")
    right = tensor_ring.right
    result = right.zero()
    for coeff_degree, vector in element.components.items():
        for index, coeff in enumerate(vector):
            if not coeff:
                continue
            da, i, j = tensor_ring.basis_parts(coeff_degree, index)
            term = hom.basis_image(da, i) * right.basis_element(coeff_degree - da, j)
            result = result + term.scale(tensor_ring.field.to_fraction(coeff))
    return result


class ZeroDivisorSet:
    """
    Basic zero-divisors of a pair: x⊗1 - 1⊗ι*(x) for each generator x of
    H*(X), and κ⊗1 for κ in a degreewise basis of the kernel of ι*.
    """

    def __init__(self, tensor_ring: TensorRing, hom: RingHom, generators: Sequence[ZeroDivisor]):
        self.tensor_ring = tensor_ring
        self.hom = hom
        self.generators: Tuple[ZeroDivisor, ...] = tuple(generators)
        logger.debug(f"ZeroDivisorSet initialized with {len(self.generators)} generators")

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def elements(self) -> List[RingElement]:
        return [g.element for g in self.generators]

    def default_max_factors(self) -> int:
        top = self.tensor_ring.top_degree
        if all(g.degree % 2 == 0 for g in self.generators):
            return top // 2
        return top


def zero_divisor_generators(tensor_ring: TensorRing, hom: RingHom) -> ZeroDivisorSet:
    """
    Collect and verify the basic zero-divisors of a pair.

    Args:
        tensor_ring: H*(X) ⊗ H*(Y), built from hom.source and hom.target
        hom: ι*: H*(X) -> H*(Y)

    Returns:
        ZeroDivisorSet without zero or repeated elements

    Raises:
        NotAZeroDivisor: If a collected element does not evaluate to zero
    """
    source = hom.source
    candidates: List[ZeroDivisor] = []

    for name, degree, x in zip(source.names, source.degrees_of_generators, source.generators()):
        element = tensor_ring.left_embed(x) - tensor_ring.right_embed(hom.apply(x))
        candidates.append(ZeroDivisor(element, degree, f"{name}⊗1 - 1⊗ι*({name})"))

    for degree in range(1, source.top_degree + 1):
        nrows = hom.target.rank(degree)
        for vector in kernel_basis(hom.matrix_columns(degree), nrows, source.domain):
            kappa = RingElement(source, {degree: vector})
            candidates.append(ZeroDivisor(tensor_ring.left_embed(kappa), degree, f"({kappa})⊗1"))

    kept: List[ZeroDivisor] = []
    for candidate in candidates:
        if candidate.element.is_zero():
            continue
        if any(candidate.element == other.element for other in kept):
            continue
        if not evaluate(tensor_ring, hom, candidate.element).is_zero():
            raise NotAZeroDivisor(f"{candidate.origin} = {candidate.element} does not evaluate to zero")
        kept.append(candidate)

    logger.info(f"{len(kept)} basic zero-divisors in {tensor_ring.name}")
    return ZeroDivisorSet(tensor_ring, hom, kept)


def _search_order(generators: Sequence[ZeroDivisor]) -> List[int]:
    return sorted(range(len(generators)), key=lambda i: (-generators[i].degree, i))


def _search_branch(
    generators: Sequence[ZeroDivisor],
    order: Sequence[int],
    first: int,
    top_degree: int,
    max_factors: int
) -> Tuple[int, Tuple[int, ...], Optional[RingElement]]:
    """Best multiset starting with order[first]; later factors come from order[first:]."""
    min_degree = min(g.degree for g in generators)
    head = generators[order[first]]
    if head.degree > top_degree or head.element.is_zero():
        return 0, (), None

    best: List = [1, (order[first],), head.element]

    def descend(start: int, chosen: List[int], product: RingElement, degree: int) -> None:
        if len(chosen) >= max_factors:
            return
        if len(chosen) + (top_degree - degree) // min_degree <= best[0]:
            return
        for position in range(start, len(order)):
            g = generators[order[position]]
            if degree + g.degree > top_degree:
                continue
            extended = product * g.element
            if extended.is_zero():
                continue
            chosen.append(order[position])
            if len(chosen) > best[0]:
                best[0], best[1], best[2] = len(chosen), tuple(chosen), extended
            descend(position, chosen, extended, degree + g.degree)
            chosen.pop()

    descend(first, [order[first]], head.element, head.degree)
    return best[0], best[1], best[2]


def cuplength_lower_bound(
    zero_divisors: ZeroDivisorSet,
    max_factors: Optional[int] = None,
    threads: int = 1
) -> CupLengthCertificate:
    """
    Search multisets of basic zero-divisors for a longest nonzero product.

    Factors are taken in order of decreasing degree, ties by generator index,
    and a branch stops once its product vanishes or exceeds the top degree.
    Top-level branches may run on separate threads; the result is the same for
    any thread count.

    Args:
        zero_divisors: Basic zero-divisors of the pair
        max_factors: Cap on k, defaulting to the dimension-based cap
        threads: Worker threads for top-level branches

    Returns:
        CupLengthCertificate with the largest k found
    """
    ring = zero_divisors.tensor_ring
    generators = zero_divisors.generators
    if not generators:
        return CupLengthCertificate(0, (), (), ring.one())

    cap = max_factors if max_factors is not None else zero_divisors.default_max_factors()
    cap = max(cap, 1)
    order = _search_order(generators)

    def run(first: int):
        return _search_branch(generators, order, first, ring.top_degree, cap)

    if threads > 1 and len(order) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(run, range(len(order))))
    else:
        results = [run(first) for first in range(len(order))]

    k, chosen, product = 0, (), None
    for branch_k, branch_chosen, branch_product in results:
        if branch_k > k:
            k, chosen, product = branch_k, branch_chosen, branch_product

    if product is None:
        return CupLengthCertificate(0, (), (), ring.one())

    logger.info(f"Cup-length search over {len(generators)} zero-divisors found k={k} (cap {cap})")
    return CupLengthCertificate(
        k=k,
        factors=tuple(generators[i].element for i in chosen),
        labels=tuple(generators[i].origin for i in chosen),
        product=product
    )


def power_cuplength(
    element: RingElement,
    max_factors: Optional[int] = None,
    label: str = "z"
) -> CupLengthCertificate:
    """Largest k with element^k nonzero, as a certificate of k equal factors."""
    ring = element.ring
    if element.is_zero():
        return CupLengthCertificate(0, (), (), ring.one())
    cap = max_factors if max_factors is not None else ring.top_degree
    product = ring.one()
    k = 0
    while k < cap:
        extended = product * element
        if extended.is_zero():
            break
        product = extended
        k += 1
    return CupLengthCertificate(k, (element,) * k, (label,) * k, product)


def symplectic_fastpath(
    omega_x: RingElement,
    omega_y: RingElement,
    n: int,
    m: int,
    pullback: Optional[RingHom] = None,
    tensor_ring: Optional[TensorRing] = None
) -> CupLengthCertificate:
    """
    Certificate from the (n+m)-th power of [ω_X]⊗1 - 1⊗[ω_Y].

    The power equals (-1)^m C(n+m, m) ω_X^n ⊗ ω_Y^m, which is checked exactly.

    Args:
        omega_x: Symplectic class of X (real dimension 2n)
        omega_y: Symplectic class of Y (real dimension 2m), or zero when m = 0
        n: Half the dimension of X
        m: Half the dimension of Y
        pullback: ι*, used to check ι*[ω_X] = [ω_Y]
        tensor_ring: H*(X) ⊗ H*(Y); built when omitted

    Raises:
        PullbackMismatch: If ι*[ω_X] differs from [ω_Y]
        TopPowerVanishes: If ω_X^n or ω_Y^m is zero
    """
    if tensor_ring is None:
        tensor_ring = TensorRing(omega_x.ring, omega_y.ring)
    if tensor_ring.field.characteristic != 0:
        raise InvalidField(f"The symplectic fast path works over Q, not {tensor_ring.field}")

    if pullback is not None:
        pulled = pullback.apply(omega_x)
        if pulled != omega_y:
            logger.error(f"Pullback check failed: ι*[ω] = {pulled}, [ωᴾ] = {omega_y}")
            raise PullbackMismatch(f"ι*[ω_X] = {pulled} differs from [ω_Y] = {omega_y}")

    top_x = omega_x ** n
    top_y = omega_y ** m
    if top_x.is_zero():
        raise TopPowerVanishes(f"[ω_X]^{n} vanishes in {omega_x.ring.name}")
    if top_y.is_zero():
        raise TopPowerVanishes(f"[ω_Y]^{m} vanishes in {omega_y.ring.name}")

    z = tensor_ring.left_embed(omega_x) - tensor_ring.right_embed(omega_y)
    product = z ** (n + m)
    coefficient = Fraction((-1) ** m * comb(n + m, m))
    expected = tensor_ring.pure(top_x, top_y).scale(coefficient)
    if product != expected:
        raise CertificateMismatch(
            f"([ω]⊗1 - 1⊗[ω'])^{n + m} = {product}, expected {coefficient}·ω^{n}⊗ω'^{m}"
        )
    if product.is_zero():
        raise TopPowerVanishes(f"([ω]⊗1 - 1⊗[ω'])^{n + m} vanishes")

    logger.info(f"Symplectic fast path: coefficient {coefficient}, TC >= {n + m + 1}")
    return CupLengthCertificate(
        k=n + m,
        factors=(z,) * (n + m),
        labels=("[ω]⊗1 - 1⊗[ω']",) * (n + m),
        product=product,
        coefficient=coefficient
    )


def verify_certificate(certificate: CupLengthCertificate, enforce: bool = False) -> bool:
    """
    Re-multiply the factors and compare with the stored product.

    Args:
        certificate: Certificate to check
        enforce: Raise instead of returning False

    Raises:
        CertificateMismatch: On mismatch when enforce is set
    """
    ring = certificate.product.ring
    product = ring.one()
    for factor in certificate.factors:
        product = product * factor
    ok = (
        len(certificate.factors) == certificate.k
        and product == certificate.product
        and (certificate.k == 0 or not product.is_zero())
    )
    if not ok and enforce:
        raise CertificateMismatch(f"Certificate with k={certificate.k} does not reproduce its product")
    return ok


def lucas_oracle(n: int, m: int) -> int:
    """
    Largest k such that C(k, j) is odd for some j <= m with k - j <= n.

    By Lucas' theorem C(k, j) is odd exactly when the binary digits of j are
    a subset of those of k.
    """
    best = 0
    for k in range(n + m + 1):
        if any(j & k == j for j in range(max(0, k - n), min(m, k) + 1)):
            best = k
    return best
