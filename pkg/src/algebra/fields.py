"""
Coefficient field module.
Provides FieldSpec, the choice of Q, F2 or Fp backing every ring computation,
and the conversions between sympy domain elements and Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from src.utils.errors import InvalidField

Scalar = Union[int, Fraction, str]


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: characteristic 0 means Q, otherwise a prime p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise InvalidField(f"Characteristic {self.characteristic} is not prime")

    @classmethod
    def parse(cls, name: str) -> "FieldSpec":
        """
        Parse "Q", "F2" or "Fp:<p>".

        Raises:
            InvalidField: On unknown names or non-prime p
        """
        text = name.strip()
        if text == "Q":
            return cls(0)
        if text == "F2":
            return cls(2)
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise InvalidField(f"Cannot parse characteristic in {name!r}")
            return cls(p)
        raise InvalidField(f"Unknown field {name!r}; expected Q, F2 or Fp:<p>")

    @property
    def label(self) -> str:
        if self.characteristic == 0:
            return "Q"
        if self.characteristic == 2:
            return "F2"
        return f"Fp:{self.characteristic}"

    @cached_property
    def domain(self):
        """sympy domain implementing the field arithmetic."""
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic)

    def coerce(self, value: Scalar):
        """
        Convert an int, Fraction or rational literal to a domain element.

        Raises:
            InvalidField: If the denominator vanishes in the field
        """
        q = value if isinstance(value, Fraction) else Fraction(value)
        K = self.domain
        if self.characteristic == 0:
            return K(q.numerator, q.denominator)
        if q.denominator % self.characteristic == 0:
            raise InvalidField(f"Coefficient {q} is undefined in {self.label}")
        return K(q.numerator) / K(q.denominator)

    def to_fraction(self, a) -> Fraction:
        """Canonical Fraction of a domain element (residues in 0..p-1)."""
        K = self.domain
        if self.characteristic == 0:
            return Fraction(int(K.numer(a)), int(K.denom(a)))
        return Fraction(int(K.to_sympy(a)) % self.characteristic)

    def format(self, a) -> str:
        return str(self.to_fraction(a))

    def is_zero(self, a) -> bool:
        return not a

    def __str__(self) -> str:
        return self.label


Q = FieldSpec(0)
F2 = FieldSpec(2)
