"""
Error module for tcpair.
Provides the exception hierarchy shared by the library and the command line.

Input errors subclass ValueError so callers that only know the standard
library can still catch them; verification errors signal that a computed
certificate or planner failed its own check.
"""

from typing import Optional


class TCPairError(Exception):
    """Base class for every tcpair error."""

    exit_code = 1


class InputError(TCPairError, ValueError):
    """Invalid input or unmet precondition (exit code 2)."""

    exit_code = 2


class VerificationError(TCPairError):
    """A computed object failed its own consistency check (exit code 3)."""

    exit_code = 3


# Length vectors and partitions

class InvalidLength(InputError):
    """Length vector cannot be parsed or has a non-positive entry."""


class SizeTooLarge(InputError):
    """Input exceeds an enumeration or construction ceiling."""


class BadPartition(InputError):
    """Parts do not partition [n]."""


class TooFewParts(InputError):
    """Edge identification needs at least three parts."""


class NonGenericLength(InputError):
    """Some subset has the same length sum as its complement."""


class DegenerateLength(InputError):
    """A single edge is at least as long as all others combined."""


# Rings

class InvalidField(InputError):
    """Unknown field name, non-prime characteristic, or unsupported characteristic."""


class PresentationError(InputError):
    """Malformed ring presentation."""


class FieldMismatch(InputError):
    """Rings over different fields were combined."""


class RingMismatch(InputError):
    """Elements of different rings were combined."""


class IndexOutOfRange(InputError):
    """Index outside its 1-based range."""


class RelationNotPreserved(InputError):
    """A source relation does not map to zero under a proposed homomorphism."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


# Bounds

class PreconditionFailed(InputError):
    """Catalog entry called outside its range of validity."""


class InconsistentFacts(InputError):
    """Supplied facts force a lower bound above an upper bound."""


# Planners

class NotOnSphere(InputError):
    """Point is not a unit vector of the expected dimension."""


class NotInSubsphere(InputError):
    """Point does not lie on the standard subsphere."""


class SubwedgeViolation(InputError):
    """Target point lies outside the first m spheres of the wedge."""


class NotNonsingular(InputError):
    """Bilinear map vanishes on a pair of nonzero vectors."""


class PositivizationFailed(InputError):
    """No functional is positive on the diagonal image of a bilinear map."""


# Files

class SchemaError(InputError):
    """JSON document does not match its schema."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{message} (at {pointer or '/'})")
        self.pointer = pointer


# Verification failures

class NotAZeroDivisor(VerificationError):
    """A listed zero-divisor does not evaluate to zero."""


class PullbackMismatch(VerificationError):
    """The pullback of the ambient symplectic class differs from the subspace class."""


class TopPowerVanishes(VerificationError):
    """A symplectic class has vanishing top power."""


class NoRuleApplies(VerificationError):
    """A planner query is not covered by any rule."""


class PlannerVerificationFailed(VerificationError):
    """Sampling verification of a planner found failures."""


class CertificateMismatch(VerificationError):
    """Re-multiplying certificate factors does not reproduce the stored product."""


def describe(error: TCPairError) -> dict:
    """
    Structured diagnostic for an error.

    Args:
        error: Error to describe

    Returns:
        Dictionary with error class name, message and optional JSON pointer
    """
    payload = {"error": type(error).__name__, "message": str(error)}
    pointer: Optional[str] = getattr(error, "pointer", None)
    if pointer is not None:
        payload["pointer"] = pointer
    index: Optional[int] = getattr(error, "index", None)
    if index is not None:
        payload["index"] = index
    return payload
