"""
Bound report module.
Provides space facts, provenance-carrying bound reports, and the general
inequalities for relative topological complexity: the dimension/connectivity
upper bound and the chain cat(X) <= TC(X,Y) <= TC(X) with its exact cases.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any, Dict, List, Optional, Sequence

from src.algebra.cuplength import CupLengthCertificate
from src.utils.errors import InconsistentFacts, PreconditionFailed
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Rule ids that may never contribute a lower bound: TC(Y) can exceed TC(X,Y).
FORBIDDEN_LOWER_RULES = frozenset({"subspace-tc"})

CITE_CONTRACTIBLE = "TC(X,Y) = 1 if and only if X is contractible"
CITE_CAT_CHAIN = "cat(X) <= TC(X,Y) <= TC(X)"
CITE_ABSOLUTE = "TC(X,Y) <= TC(X) for every nonempty Y in X"
CITE_Y_CONTRACTIBLE = "Y contractible in X: TC(X,Y) = cat(X)"
CITE_GROUP = "topological group G, nonempty H in G: TC(G,H) = cat(G)"
CITE_DIM_CONN = "TC(X,Y) < (dim X + dim Y + 1)/(s + 1) + 1 for s-connected X"
CITE_CUPLENGTH = "nonzero k-fold product of zero-divisors in H*(X)⊗H*(Y) forces TC(X,Y) > k"
CITE_FIELD_NOTE = "cohomology taken with field coefficients; torsion classes are not used"


@dataclass
class SpaceFacts:
    """Known facts about a space X (and, for pairs, about Y inside X)."""

    dim: int
    connectivity: int = 0
    contractible: bool = False
    known_cat: Optional[int] = None
    known_tc: Optional[int] = None
    is_topological_group: bool = False

    def __post_init__(self):
        if self.dim < 0 or self.connectivity < 0:
            raise PreconditionFailed("dim and connectivity must be non-negative")
        if self.contractible and self.known_cat not in (None, 1):
            raise InconsistentFacts(f"Contractible space with cat = {self.known_cat}")
        if not self.contractible and self.known_cat == 1:
            raise InconsistentFacts("cat(X) = 1 only for contractible X")
        if self.known_cat is not None and self.known_tc is not None and self.known_cat > self.known_tc:
            raise InconsistentFacts(f"cat(X) = {self.known_cat} exceeds TC(X) = {self.known_tc}")


@dataclass
class PairFacts:
    """Facts about a pair Y ⊆ X."""

    x: SpaceFacts
    dim_y: int = 0
    y_contractible_in_x: bool = False


@dataclass(frozen=True)
class BoundStep:
    """One provenance line: which rule, what it cites, what it contributed."""

    rule: str
    cite: str
    value: str

    def to_json(self) -> Dict[str, str]:
        return {"rule": self.rule, "cite": self.cite, "value": self.value}


@dataclass
class BoundReport:
    """
    Lower and upper bounds on TC(X,Y) with the steps that produced them.

    The report is exact when the bounds meet, unless exactness was withheld;
    both sides always carry a step.
    """

    subject: str = "TC(X,Y)"
    lower: int = 1
    upper: Optional[int] = None
    steps: List[BoundStep] = field(default_factory=list)
    certificates: List[CupLengthCertificate] = field(default_factory=list)
    asserts_exact: bool = True

    @property
    def exact(self) -> bool:
        return self.asserts_exact and self.upper is not None and self.lower == self.upper

    def withhold_exact(self, reason: str) -> None:
        """Keep the report a range even if the bounds meet."""
        self.asserts_exact = False
        self.note(reason)

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None

    def raise_lower(self, value: int, rule: str, cite: str) -> None:
        """
        Record a lower bound TC >= value.

        Raises:
            PreconditionFailed: For rules that must not give lower bounds
            InconsistentFacts: If the bound exceeds the current upper bound
        """
        if rule in FORBIDDEN_LOWER_RULES:
            raise PreconditionFailed(f"Rule {rule!r} cannot give a lower bound: TC(Y) may exceed TC(X,Y)")
        self.steps.append(BoundStep(rule, cite, f"TC >= {value}"))
        self.lower = max(self.lower, value)
        self._check()

    def cap_upper(self, value: int, rule: str, cite: str) -> None:
        """Record an upper bound TC <= value."""
        self.steps.append(BoundStep(rule, cite, f"TC <= {value}"))
        self.upper = value if self.upper is None else min(self.upper, value)
        self._check()

    def note(self, text: str, cite: str = "") -> None:
        self.steps.append(BoundStep("note", cite, text))

    def attach(self, certificate: CupLengthCertificate, rule: str = "cup-length", cite: str = CITE_CUPLENGTH) -> None:
        """Attach a cup-length certificate and its lower bound."""
        self.certificates.append(certificate)
        self.raise_lower(certificate.bound_implied, rule, cite)

    def _check(self) -> None:
        if self.upper is not None and self.lower > self.upper:
            logger.error(f"Inconsistent bounds for {self.subject}: {self.lower} > {self.upper}")
            raise InconsistentFacts(f"Lower bound {self.lower} exceeds upper bound {self.upper} for {self.subject}")

    def to_json(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "steps": [step.to_json() for step in self.steps]
        }


def upper_from_dim_conn(facts: SpaceFacts, dim_y: int) -> int:
    """
    Largest integer strictly below (dim X + dim Y + 1)/(s + 1) + 1.

    Args:
        facts: Facts for X, with connectivity s
        dim_y: Dimension of Y

    Returns:
        Upper bound on TC(X,Y); equals dim X + dim Y + 1 when s = 0
    """
    bound = Fraction(facts.dim + dim_y + 1, facts.connectivity + 1) + 1
    return ceil(bound) - 1


def chain_rules(pair: PairFacts, report: Optional[BoundReport] = None) -> BoundReport:
    """
    Apply the general inequalities to a pair.

    Order: contractible X gives 1; Y contractible in X with known cat gives
    cat(X); a topological group with known cat gives cat(G); otherwise the
    known cat and TC of X bound from below and above.

    Raises:
        InconsistentFacts: If the derived lower bound exceeds the upper bound
    """
    report = report or BoundReport()
    x = pair.x
    if x.contractible:
        report.raise_lower(1, "contractible", CITE_CONTRACTIBLE)
        report.cap_upper(1, "contractible", CITE_CONTRACTIBLE)
        return report

    report.raise_lower(2, "non-contractible", CITE_CONTRACTIBLE)

    if pair.y_contractible_in_x and x.known_cat is not None:
        report.raise_lower(x.known_cat, "y-contractible", CITE_Y_CONTRACTIBLE)
        report.cap_upper(x.known_cat, "y-contractible", CITE_Y_CONTRACTIBLE)
    elif x.is_topological_group and x.known_cat is not None:
        report.raise_lower(x.known_cat, "topological-group", CITE_GROUP)
        report.cap_upper(x.known_cat, "topological-group", CITE_GROUP)
    else:
        if x.known_cat is not None:
            report.raise_lower(x.known_cat, "cat-lower", CITE_CAT_CHAIN)
        if x.known_tc is not None:
            report.cap_upper(x.known_tc, "absolute-tc", CITE_ABSOLUTE)
    return report


def is_monotone_in_subspace(reports: Sequence[BoundReport]) -> bool:
    """
    Whether exact values weakly increase along reports ordered by growing subspace.

    Reports without an exact value are skipped.
    """
    values = [r.value for r in reports if r.exact]
    return all(a <= b for a, b in zip(values, values[1:]))
