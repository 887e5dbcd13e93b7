"""
Graded ring module.
Provides finitely presented graded-commutative rings computed degree by degree,
graded tensor products with the Koszul sign rule, ring elements, and
homomorphisms verified against the source relations.

A presentation is reduced in two stages. Relations of the form g^e = (terms
with smaller g-exponent) become rewrite rules applied to every monomial; the
remaining relations are multiplied by all standard monomials and row reduced
in each degree. Degrees above the top degree are zero.
"""

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.fields import FieldSpec, Scalar
from src.algebra.linear import DegreeQuotient, matrix_rank
from src.utils.errors import (
    FieldMismatch, PresentationError, RelationNotPreserved, RingMismatch, VerificationError
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

Monomial = Tuple[int, ...]
SparseVector = Tuple[Tuple[int, object], ...]

_ring_ids = itertools.count(1)


@dataclass(frozen=True)
class Generator:
    """A ring generator and its cohomological degree."""

    name: str
    degree: int


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with rational coefficients, as sorted (monomial, coefficient) terms."""

    terms: Tuple[Tuple[Monomial, Fraction], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[Monomial, Scalar]) -> "Polynomial":
        collected: Dict[Monomial, Fraction] = {}
        for mono, coeff in mapping.items():
            collected[tuple(mono)] = collected.get(tuple(mono), Fraction(0)) + Fraction(coeff)
        return cls(tuple(sorted((m, c) for m, c in collected.items() if c != 0)))

    @classmethod
    def monomial(cls, exponents: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls.from_mapping({tuple(exponents): coeff})

    def degree(self, degrees: Sequence[int]) -> int:
        return monomial_degree(self.terms[0][0], degrees)

    def is_homogeneous(self, degrees: Sequence[int]) -> bool:
        return len({monomial_degree(m, degrees) for m, _ in self.terms}) <= 1


def monomial_degree(mono: Monomial, degrees: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(mono, degrees))


def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class GradedRingPresentation:
    """
    Generators, relations, field and top degree of a graded-commutative ring.

    Relations above the top degree do not affect the quotient but are kept so
    that homomorphisms out of the ring are checked against them.
    """

    generators: Tuple[Generator, ...]
    relations: Tuple[Polynomial, ...]
    field: FieldSpec
    top_degree: int

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"Duplicate generator names in {names}")
        if any(not g.name for g in self.generators):
            raise PresentationError("Generator names must be nonempty")
        if any(g.degree < 1 for g in self.generators):
            raise PresentationError("Generator degrees must be at least 1")
        if self.top_degree < 0:
            raise PresentationError("top_degree must be non-negative")
        degrees = self.degrees
        for index, relation in enumerate(self.relations):
            if not relation.terms:
                raise PresentationError(f"Relation {index} is zero")
            if any(len(m) != len(self.generators) or min(m, default=0) < 0 for m, _ in relation.terms):
                raise PresentationError(f"Relation {index} has malformed exponents")
            if not relation.is_homogeneous(degrees):
                raise PresentationError(f"Relation {index} is not homogeneous")
            if relation.degree(degrees) < 1:
                raise PresentationError(f"Relation {index} has degree 0")

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"Unknown generator {name!r}")


class MonomialRewriter:
    """
    Normal forms of monomials modulo power rules g^e -> (lower terms).

    A relation becomes a rule for g when it contains the pure power g^e and
    all other terms have g-exponent below e. Rules whose right-hand sides
    would feed back into each other are refused, so the accepted rules have
    pairwise coprime leading powers under a lex order and normal forms are
    unique. In characteristic other than 2, odd generators square to zero.
    """

    def __init__(self, presentation: GradedRingPresentation):
        self.field = presentation.field
        self.K = presentation.field.domain
        self.degrees = presentation.degrees
        self.count = len(self.degrees)
        self.graded_signs = self.field.characteristic != 2
        self.odd = tuple(d % 2 == 1 for d in self.degrees)

        self.relations = [self._to_domain(r) for r in presentation.relations]
        self.rules: Dict[int, Tuple[int, Dict[Monomial, object]]] = {}
        self.ordinary: List[Dict[Monomial, object]] = []
        self._select_rules()
        self._cache: Dict[Monomial, Dict[Monomial, object]] = {}

    def _to_domain(self, relation: Polynomial) -> Dict[Monomial, object]:
        converted = {}
        for mono, coeff in relation.terms:
            value = self.field.coerce(coeff)
            if value:
                converted[mono] = value
        return converted

    def _select_rules(self) -> None:
        if self.graded_signs:
            for g, odd in enumerate(self.odd):
                if odd:
                    self.rules[g] = (2, {})

        candidates: Dict[int, Tuple[int, int, Dict[Monomial, object]]] = {}
        for index, relation in enumerate(self.relations):
            for mono, coeff in relation.items():
                support = [i for i, e in enumerate(mono) if e]
                if len(support) != 1:
                    continue
                g = support[0]
                e = mono[g]
                if g in self.rules or g in candidates:
                    continue
                if all(other[g] < e for other in relation if other != mono):
                    rhs = {other: -(c / coeff) for other, c in relation.items() if other != mono}
                    candidates[g] = (index, e, rhs)
                    break

        def uses(rhs: Dict[Monomial, object], g: int) -> set:
            return {h for other in rhs for h, e in enumerate(other) if e and h != g}

        # Rules are accepted while the "rule of g uses h" graph stays acyclic,
        # fewest foreign generators first.
        depends: Dict[int, set] = {g: set() for g in self.rules}
        used = set()
        order = sorted(candidates, key=lambda g: (len(uses(candidates[g][2], g) & set(candidates)), g))
        for g in order:
            index, e, rhs = candidates[g]
            targets = uses(rhs, g)
            if self._reaches(depends, targets, g):
                logger.debug(f"Relation {index} kept as an ideal relation; a rule would cycle")
                continue
            depends[g] = targets
            self.rules[g] = (e, rhs)
            used.add(index)
        self.ordinary = [r for i, r in enumerate(self.relations) if i not in used and r]

    @staticmethod
    def _reaches(depends: Dict[int, set], starts: set, goal: int) -> bool:
        """Whether goal is reachable from starts along accepted rule dependencies."""
        seen = set()
        stack = list(starts)
        while stack:
            h = stack.pop()
            if h == goal:
                return True
            if h in seen:
                continue
            seen.add(h)
            stack.extend(depends.get(h, ()))
        return False

    def caps(self) -> Tuple[Optional[int], ...]:
        """Largest exponent allowed per generator in a standard monomial."""
        return tuple(self.rules[g][0] - 1 if g in self.rules else None for g in range(self.count))

    def standard_monomials(self, top_degree: int) -> Dict[int, List[Monomial]]:
        """Standard monomials grouped by degree, up to the top degree."""
        caps = self.caps()
        grouped: Dict[int, List[Monomial]] = {d: [] for d in range(top_degree + 1)}

        def extend(position: int, prefix: List[int], degree: int) -> Iterator[Tuple[Monomial, int]]:
            if position == self.count:
                yield tuple(prefix), degree
                return
            step = self.degrees[position]
            limit = (top_degree - degree) // step
            if caps[position] is not None:
                limit = min(limit, caps[position])
            for e in range(limit + 1):
                prefix.append(e)
                yield from extend(position + 1, prefix, degree + e * step)
                prefix.pop()

        for mono, degree in extend(0, [], 0):
            grouped[degree].append(mono)
        return grouped

    def sign(self, left: Monomial, right: Monomial) -> int:
        """Sign of reordering left*right into canonical generator order."""
        if not self.graded_signs:
            return 1
        parity = 0
        odd_after = 0
        for i in range(self.count - 1, -1, -1):
            if self.odd[i]:
                parity += right[i] * odd_after
                odd_after += left[i]
        return -1 if parity % 2 else 1

    def multiply(self, left: Monomial, right: Monomial) -> Dict[Monomial, object]:
        """Normal form of the product of two monomials."""
        s = self.sign(left, right)
        product = tuple(a + b for a, b in zip(left, right))
        form = self.normal_form(product)
        if s == 1:
            return form
        return {m: -c for m, c in form.items()}

    def normal_form(self, mono: Monomial) -> Dict[Monomial, object]:
        cached = self._cache.get(mono)
        if cached is not None:
            return cached

        result: Dict[Monomial, object] = {mono: self.K.one}
        for g, (e, rhs) in self.rules.items():
            if mono[g] < e:
                continue
            rest = tuple(x - e if i == g else x for i, x in enumerate(mono))
            power = tuple(e if i == g else 0 for i in range(self.count))
            s = self.sign(power, rest)
            result = {}
            for term, coeff in rhs.items():
                s2 = s * self.sign(term, rest)
                merged = tuple(a + b for a, b in zip(term, rest))
                for m, c in self.normal_form(merged).items():
                    value = coeff * c if s2 == 1 else -(coeff * c)
                    result[m] = result.get(m, self.K.zero) + value
            result = {m: c for m, c in result.items() if c}
            break

        self._cache[mono] = result
        return result


class GradedRing(ABC):
    """
    A graded-commutative ring with a finite basis in each degree 0..top_degree.

    Subclasses provide ranks, basis labels and the product of two basis
    elements; arithmetic on elements is shared.
    """

    def __init__(self, field: FieldSpec, top_degree: int, name: str):
        self.field = field
        self.domain = field.domain
        self.top_degree = top_degree
        self.name = name
        self.ring_id = next(_ring_ids)
        self._products: Dict[Tuple[int, int, int, int], SparseVector] = {}

    @abstractmethod
    def rank(self, degree: int) -> int:
        """Dimension of the given degree."""

    @abstractmethod
    def basis_label(self, degree: int, index: int) -> str:
        """Human-readable name of a basis element."""

    @abstractmethod
    def basis_exponents(self, degree: int, index: int) -> Dict[str, int]:
        """Generator exponents of a basis element, keyed by generator name."""

    @abstractmethod
    def _basis_product(self, d1: int, i: int, d2: int, j: int) -> Dict[int, object]:
        """Product of two basis elements as a sparse vector in degree d1 + d2."""

    def ranks(self) -> Tuple[int, ...]:
        return tuple(self.rank(d) for d in range(self.top_degree + 1))

    def product_vector(self, d1: int, i: int, d2: int, j: int) -> SparseVector:
        key = (d1, i, d2, j)
        cached = self._products.get(key)
        if cached is None:
            if d1 + d2 > self.top_degree:
                cached = ()
            else:
                cached = tuple(sorted(self._basis_product(d1, i, d2, j).items()))
            self._products[key] = cached
        return cached

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.basis_element(0, 0)

    def basis_element(self, degree: int, index: int) -> "RingElement":
        K = self.domain
        vector = [K.zero] * self.rank(degree)
        vector[index] = K.one
        return RingElement(self, {degree: tuple(vector)})

    def basis(self, degree: int) -> List["RingElement"]:
        return [self.basis_element(degree, i) for i in range(self.rank(degree))]

    def scalar(self, value: Scalar) -> "RingElement":
        return self.one().scale(value)

    def multiply(self, a: "RingElement", b: "RingElement") -> "RingElement":
        if a.ring is not self or b.ring is not self:
            raise RingMismatch(f"Cannot multiply elements of {a.ring.name} and {b.ring.name} in {self.name}")
        K = self.domain
        out: Dict[int, list] = {}
        for d1, v1 in a.components.items():
            for d2, v2 in b.components.items():
                d = d1 + d2
                if d > self.top_degree:
                    continue
                acc = out.get(d)
                if acc is None:
                    acc = out[d] = [K.zero] * self.rank(d)
                for i, x in enumerate(v1):
                    if not x:
                        continue
                    for j, y in enumerate(v2):
                        if not y:
                            continue
                        xy = x * y
                        for k, c in self.product_vector(d1, i, d2, j):
                            acc[k] += xy * c
        return RingElement(self, {d: tuple(v) for d, v in out.items()})

    def power(self, a: "RingElement", exponent: int) -> "RingElement":
        if exponent < 0:
            raise ValueError("Negative powers are not defined")
        result = self.one()
        base = a
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            exponent >>= 1
            if exponent:
                base = self.multiply(base, base)
        return result

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} ranks={self.ranks()}>"


class RingElement:
    """An element of a GradedRing as per-degree coefficient vectors."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: GradedRing, components: Mapping[int, Sequence]):
        self.ring = ring
        cleaned = {}
        for degree, vector in components.items():
            if degree > ring.top_degree or degree < 0:
                continue
            vector = tuple(vector)
            if len(vector) != ring.rank(degree):
                raise RingMismatch(
                    f"Vector of length {len(vector)} in degree {degree} of {ring.name} (rank {ring.rank(degree)})"
                )
            if any(vector):
                cleaned[degree] = vector
        self.components: Dict[int, Tuple] = cleaned

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement) or other.ring is not self.ring:
            other_name = other.ring.name if isinstance(other, RingElement) else type(other).__name__
            raise RingMismatch(f"Cannot combine elements of {self.ring.name} and {other_name}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        K = self.ring.domain
        out = dict(self.components)
        for degree, vector in other.components.items():
            current = out.get(degree)
            out[degree] = vector if current is None else tuple(a + b for a, b in zip(current, vector))
        return RingElement(self.ring, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ring, {d: tuple(-c for c in v) for d, v in self.components.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            return self.ring.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "RingElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "RingElement":
        return self.ring.power(self, exponent)

    def scale(self, value: Scalar) -> "RingElement":
        c = self.ring.field.coerce(value)
        return RingElement(self.ring, {d: tuple(c * x for x in v) for d, v in self.components.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and other.ring is self.ring
            and other.components == self.components
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.components

    def component(self, degree: int) -> Tuple:
        vector = self.components.get(degree)
        if vector is None:
            return tuple([self.ring.domain.zero] * self.ring.rank(degree))
        return vector

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self.components))

    def is_homogeneous(self) -> bool:
        return len(self.components) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a nonzero homogeneous element, None otherwise."""
        if len(self.components) != 1:
            return None
        return next(iter(self.components))

    def terms(self) -> List[Tuple[Fraction, int, int]]:
        """Nonzero (coefficient, degree, basis index) triples in degree order."""
        field = self.ring.field
        return [
            (field.to_fraction(c), d, i)
            for d in self.degrees
            for i, c in enumerate(self.components[d]) if c
        ]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for coeff, d, i in self.terms():
            label = self.ring.basis_label(d, i)
            if label == "1":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(label)
            elif coeff == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{coeff}*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


class QuotientRing(GradedRing):
    """Graded-commutative ring given by a presentation, reduced degreewise."""

    def __init__(self, presentation: GradedRingPresentation, name: str = "A"):
        super().__init__(presentation.field, presentation.top_degree, name)
        self.presentation = presentation
        self.names = presentation.names
        self.degrees_of_generators = presentation.degrees
        self._rewriter = MonomialRewriter(presentation)
        self._spanning: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._quotients: Dict[int, DegreeQuotient] = {}
        self._build()
        logger.info(f"Ring {self.name} over {self.field} built with ranks {self.ranks()}")

    def _build(self) -> None:
        """
        Reduce degree by degree. The ideal slice in degree d is spanned by
        g times the slice in degree d - deg(g), for every generator g, plus
        the relations of degree d.
        """
        degrees = self.degrees_of_generators
        grouped = self._rewriter.standard_monomials(self.top_degree)
        ordinary = [
            (monomial_degree(next(iter(r)), degrees), r) for r in self._rewriter.ordinary
        ]
        units = [tuple(1 if i == g else 0 for i in range(len(degrees))) for g in range(len(degrees))]
        K = self.domain

        def to_row(form: Mapping[Monomial, object], index: Dict[Monomial, int], row: Dict[int, object], scale) -> None:
            for mono, c in form.items():
                column = index[mono]
                row[column] = row.get(column, K.zero) + scale * c

        for d in range(self.top_degree + 1):
            spanning = sorted(grouped[d])
            index = {m: i for i, m in enumerate(spanning)}
            self._spanning[d] = spanning
            self._index[d] = index

            rows = []
            for g, step in enumerate(degrees):
                if step > d:
                    continue
                lower = self._spanning[d - step]
                for ideal_row in self._quotients[d - step].ideal_rows():
                    row: Dict[int, object] = {}
                    for column, coeff in ideal_row.items():
                        to_row(self._rewriter.multiply(units[g], lower[column]), index, row, coeff)
                    row = {c: v for c, v in row.items() if v}
                    if row:
                        rows.append(row)
            for rel_degree, relation in ordinary:
                if rel_degree != d:
                    continue
                row = {}
                for term, coeff in relation.items():
                    to_row(self._rewriter.normal_form(term), index, row, coeff)
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows.append(row)
            self._quotients[d] = DegreeQuotient(len(spanning), rows, K)
            logger.debug(f"{self.name}: degree {d} spanned by {len(spanning)} monomials, {len(rows)} ideal rows")

    def rank(self, degree: int) -> int:
        if degree < 0 or degree > self.top_degree:
            return 0
        return self._quotients[degree].rank

    def basis_monomial(self, degree: int, index: int) -> Monomial:
        column = self._quotients[degree].basis_columns[index]
        return self._spanning[degree][column]

    def basis_label(self, degree: int, index: int) -> str:
        return format_monomial(self.basis_monomial(degree, index), self.names)

    def basis_exponents(self, degree: int, index: int) -> Dict[str, int]:
        mono = self.basis_monomial(degree, index)
        return {name: e for name, e in zip(self.names, mono) if e}

    def _reduce(self, degree: int, vector: Mapping[Monomial, object]) -> Tuple:
        index = self._index[degree]
        return self._quotients[degree].reduce({index[m]: c for m, c in vector.items()})

    def _basis_product(self, d1: int, i: int, d2: int, j: int) -> Dict[int, object]:
        product = self._rewriter.multiply(self.basis_monomial(d1, i), self.basis_monomial(d2, j))
        reduced = self._reduce(d1 + d2, product)
        return {k: c for k, c in enumerate(reduced) if c}

    def monomial(self, exponents: Sequence[int], coeff: Scalar = 1) -> RingElement:
        """Class of a monomial given by generator exponents."""
        exponents = tuple(exponents)
        if len(exponents) != len(self.names) or min(exponents, default=0) < 0:
            raise PresentationError(f"Bad exponent vector {exponents} for generators {self.names}")
        degree = monomial_degree(exponents, self.degrees_of_generators)
        if degree > self.top_degree:
            return self.zero()
        c = self.field.coerce(coeff)
        form = self._rewriter.normal_form(exponents)
        reduced = self._reduce(degree, form)
        return RingElement(self, {degree: tuple(c * x for x in reduced)})

    def generator(self, name: str) -> RingElement:
        exponents = [0] * len(self.names)
        exponents[self.presentation.index_of(name)] = 1
        return self.monomial(exponents)

    def generators(self) -> List[RingElement]:
        return [self.generator(name) for name in self.names]

    def evaluate(self, polynomial: Polynomial) -> RingElement:
        """Class of a polynomial in the generators."""
        result = self.zero()
        for mono, coeff in polynomial.terms:
            result = result + self.monomial(mono, coeff)
        return result

    def element_from_terms(self, terms: Sequence[Tuple[Scalar, Mapping[str, int]]]) -> RingElement:
        """Element from (coefficient, {generator name: exponent}) pairs."""
        result = self.zero()
        for coeff, exponents in terms:
            mono = [0] * len(self.names)
            for name, e in exponents.items():
                mono[self.presentation.index_of(name)] = int(e)
            result = result + self.monomial(mono, coeff)
        return result


class TensorRing(GradedRing):
    """Graded tensor product A ⊗ B with (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa'⊗bb'."""

    def __init__(self, left: GradedRing, right: GradedRing):
        if left.field != right.field:
            raise FieldMismatch(f"Cannot tensor rings over {left.field} and {right.field}")
        super().__init__(left.field, left.top_degree + right.top_degree, f"{left.name}⊗{right.name}")
        self.left = left
        self.right = right
        self._basis: Dict[int, List[Tuple[int, int, int]]] = {}
        self._index: Dict[int, Dict[Tuple[int, int, int], int]] = {}
        for d in range(self.top_degree + 1):
            basis = [
                (da, i, j)
                for da in range(max(0, d - right.top_degree), min(d, left.top_degree) + 1)
                for i in range(left.rank(da))
                for j in range(right.rank(d - da))
            ]
            self._basis[d] = basis
            self._index[d] = {b: k for k, b in enumerate(basis)}
        logger.debug(f"TensorRing {self.name} initialized with ranks {self.ranks()}")

    def rank(self, degree: int) -> int:
        if degree < 0 or degree > self.top_degree:
            return 0
        return len(self._basis[degree])

    def basis_label(self, degree: int, index: int) -> str:
        da, i, j = self._basis[degree][index]
        return f"{self.left.basis_label(da, i)}⊗{self.right.basis_label(degree - da, j)}"

    def basis_exponents(self, degree: int, index: int) -> Dict[str, int]:
        da, i, j = self._basis[degree][index]
        exponents = dict(self.left.basis_exponents(da, i))
        for name, e in self.right.basis_exponents(degree - da, j).items():
            exponents[f"{name}'"] = e
        return exponents

    def _basis_product(self, d1: int, i: int, d2: int, j: int) -> Dict[int, object]:
        da1, a1, b1 = self._basis[d1][i]
        da2, a2, b2 = self._basis[d2][j]
        db1, db2 = d1 - da1, d2 - da2
        negative = self.field.characteristic != 2 and (db1 * da2) % 2 == 1
        left = self.left.product_vector(da1, a1, da2, a2)
        right = self.right.product_vector(db1, b1, db2, b2)
        da, d = da1 + da2, d1 + d2
        index = self._index[d]
        out = {}
        for p, x in left:
            for q, y in right:
                value = x * y
                out[index[(da, p, q)]] = -value if negative else value
        return out

    def pure(self, a: RingElement, b: RingElement) -> RingElement:
        """The element a⊗b."""
        if a.ring is not self.left or b.ring is not self.right:
            raise RingMismatch(f"Pure tensor factors do not belong to {self.left.name} and {self.right.name}")
        K = self.domain
        out: Dict[int, list] = {}
        for da, va in a.components.items():
            for db, vb in b.components.items():
                d = da + db
                acc = out.get(d)
                if acc is None:
                    acc = out[d] = [K.zero] * self.rank(d)
                index = self._index[d]
                for i, x in enumerate(va):
                    if not x:
                        continue
                    for j, y in enumerate(vb):
                        if y:
                            acc[index[(da, i, j)]] += x * y
        return RingElement(self, {d: tuple(v) for d, v in out.items()})

    def left_embed(self, a: RingElement) -> RingElement:
        """a ⊗ 1"""
        return self.pure(a, self.right.one())

    def right_embed(self, b: RingElement) -> RingElement:
        """1 ⊗ b"""
        return self.pure(self.left.one(), b)

    def basis_parts(self, degree: int, index: int) -> Tuple[int, int, int]:
        """(left degree, left index, right index) of a basis element."""
        return self._basis[degree][index]


class RingHom:
    """
    Degree-preserving homomorphism from a presented ring, given on generators.

    Construction checks that every source relation maps to zero and spot-checks
    multiplicativity on pairs of generators.
    """

    def __init__(
        self,
        source: QuotientRing,
        target: GradedRing,
        images: Mapping[str, RingElement],
        check: bool = True
    ):
        if not isinstance(source, QuotientRing):
            raise PresentationError("Homomorphisms are defined out of presented rings only")
        if source.field != target.field:
            raise FieldMismatch(f"Homomorphism from {source.field} to {target.field}")
        missing = [name for name in source.names if name not in images]
        if missing:
            raise PresentationError(f"No image given for generators {missing}")
        extra = [name for name in images if name not in source.names]
        if extra:
            raise PresentationError(f"Images given for unknown generators {extra}")

        self.source = source
        self.target = target
        self.images: Dict[str, RingElement] = {}
        for name, degree in zip(source.names, source.degrees_of_generators):
            image = images[name]
            if not isinstance(image, RingElement) or image.ring is not target:
                raise RingMismatch(f"Image of {name} is not an element of {target.name}")
            if not image.is_zero() and image.degree != degree:
                raise PresentationError(
                    f"Image of {name} must be homogeneous of degree {degree}, got degrees {image.degrees}"
                )
            self.images[name] = image

        self._monomial_images: Dict[Monomial, RingElement] = {}
        self._basis_images: Dict[Tuple[int, int], RingElement] = {}
        if check:
            self._check_relations()
            self._check_multiplicative()
        logger.debug(f"RingHom {source.name} -> {target.name} initialized")

    def image_of_monomial(self, mono: Monomial) -> RingElement:
        cached = self._monomial_images.get(mono)
        if cached is None:
            cached = self.target.one()
            for name, e in zip(self.source.names, mono):
                if e:
                    cached = cached * self.target.power(self.images[name], e)
            self._monomial_images[mono] = cached
        return cached

    def _check_relations(self) -> None:
        for index, relation in enumerate(self.source.presentation.relations):
            value = self.target.zero()
            for mono, coeff in relation.terms:
                value = value + self.image_of_monomial(mono).scale(coeff)
            if not value.is_zero():
                logger.error(f"Relation {index} of {self.source.name} maps to {value}")
                raise RelationNotPreserved(
                    f"Relation {index} of {self.source.name} maps to {value} != 0 in {self.target.name}",
                    index
                )

    def _check_multiplicative(self) -> None:
        generators = self.source.generators()
        for (a_name, a), (b_name, b) in itertools.combinations_with_replacement(
            list(zip(self.source.names, generators)), 2
        ):
            if self.apply(a * b) != self.apply(a) * self.apply(b):
                raise VerificationError(f"Homomorphism is not multiplicative on {a_name}*{b_name}")

    def basis_image(self, degree: int, index: int) -> RingElement:
        key = (degree, index)
        cached = self._basis_images.get(key)
        if cached is None:
            cached = self.image_of_monomial(self.source.basis_monomial(degree, index))
            self._basis_images[key] = cached
        return cached

    def apply(self, a: RingElement) -> RingElement:
        if a.ring is not self.source:
            raise RingMismatch(f"Element of {a.ring.name} passed to a homomorphism out of {self.source.name}")
        K = self.target.domain
        out: Dict[int, list] = {}
        for degree, vector in a.components.items():
            if degree > self.target.top_degree:
                continue
            acc = [K.zero] * self.target.rank(degree)
            for i, c in enumerate(vector):
                if not c:
                    continue
                for k, x in enumerate(self.basis_image(degree, i).component(degree)):
                    if x:
                        acc[k] += c * x
            out[degree] = acc
        return RingElement(self.target, {d: tuple(v) for d, v in out.items()})

    __call__ = apply

    def matrix_columns(self, degree: int) -> List[Tuple]:
        """Images of the source basis of one degree as dense target vectors."""
        return [
            self.basis_image(degree, i).component(degree)
            for i in range(self.source.rank(degree))
        ]


def build_presentation(
    generators: Sequence[Tuple[str, int]],
    relations: Sequence[Mapping[Monomial, Scalar]],
    field: FieldSpec,
    top_degree: int
) -> GradedRingPresentation:
    return GradedRingPresentation(
        generators=tuple(Generator(name, degree) for name, degree in generators),
        relations=tuple(Polynomial.from_mapping(r) for r in relations),
        field=field,
        top_degree=top_degree
    )


def build_truncated(gen_degree: int, truncation: int, field: FieldSpec, name: str = "x") -> QuotientRing:
    """
    The ring field[x]/(x^truncation) with x in the given degree.

    Args:
        gen_degree: Degree of x
        truncation: Exponent of the truncation relation, at least 2
        field: Coefficient field
        name: Generator name

    Returns:
        QuotientRing with top degree gen_degree * (truncation - 1)
    """
    if truncation < 2:
        raise PresentationError(f"Truncation must be at least 2, got {truncation}")
    if gen_degree < 1:
        raise PresentationError(f"Generator degree must be positive, got {gen_degree}")
    presentation = build_presentation(
        [(name, gen_degree)], [{(truncation,): 1}], field, gen_degree * (truncation - 1)
    )
    return QuotientRing(presentation, name=f"{field}[{name}]/({name}^{truncation})")


def build_exterior(n: int, field: FieldSpec, prefix: str = "x") -> QuotientRing:
    """Exterior algebra on n degree-1 generators."""
    if n < 1:
        raise PresentationError(f"Exterior algebra needs n >= 1, got {n}")
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    squares = [{tuple(2 if k == i else 0 for k in range(n)): 1} for i in range(n)]
    presentation = build_presentation([(name, 1) for name in names], squares, field, n)
    return QuotientRing(presentation, name=f"Λ_{field}({prefix}1..{prefix}{n})")


def build_wedge(degrees: Sequence[int], field: FieldSpec, prefix: str = "g") -> QuotientRing:
    """Cohomology of a wedge of spheres: classes g_i with all products zero."""
    degrees = list(degrees)
    if not degrees:
        raise PresentationError("A wedge needs at least one sphere")
    n = len(degrees)
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    relations = []
    for i in range(n):
        for j in range(i, n):
            mono = [0] * n
            mono[i] += 1
            mono[j] += 1
            relations.append({tuple(mono): 1})
    presentation = build_presentation(list(zip(names, degrees)), relations, field, max(degrees))
    return QuotientRing(presentation, name="H*(" + "∨".join(f"S^{d}" for d in degrees) + ")")


def build_point(field: FieldSpec) -> QuotientRing:
    """Cohomology of a point."""
    presentation = build_presentation([], [], field, 0)
    return QuotientRing(presentation, name="H*(pt)")


def tensor(a: GradedRing, b: GradedRing) -> TensorRing:
    return TensorRing(a, b)


def hom(source: QuotientRing, target: GradedRing, images: Mapping[str, RingElement]) -> RingHom:
    return RingHom(source, target, images)


def apply_hom(h: RingHom, a: RingElement) -> RingElement:
    return h.apply(a)


def identity_hom(ring: QuotientRing) -> RingHom:
    return RingHom(ring, ring, {name: ring.generator(name) for name in ring.names})


def pairing_rank(ring: GradedRing, degree: int) -> int:
    """
    Rank of the cup-product pairing of a degree with its complement into the top degree.

    Requires the top degree to have rank 1.
    """
    top = ring.top_degree
    if ring.rank(top) != 1:
        raise VerificationError(f"Top degree of {ring.name} has rank {ring.rank(top)}, expected 1")
    complement = top - degree
    rows = []
    for a in ring.basis(degree):
        rows.append([(a * b).component(top)[0] for b in ring.basis(complement)])
    return matrix_rank(rows, ring.rank(complement), ring.domain)


def ring_of(element: Union[RingElement, GradedRing]) -> GradedRing:
    return element.ring if isinstance(element, RingElement) else element
