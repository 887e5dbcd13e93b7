"""
JSON serialization module for rings.
Provides the schemas for ring presentations, homomorphisms and pair
specifications, schema validation with JSON-pointer diagnostics, and
conversion of ring elements and certificates to JSON-ready structures.
"""

from fractions import Fraction
from typing import Any, Dict, List, Tuple

from jsonschema import Draft202012Validator

from src.algebra.fields import FieldSpec
from src.algebra.rings import (
    GradedRingPresentation, Generator, Polynomial, QuotientRing, RingElement, RingHom, TensorRing
)
from src.utils.errors import InputError, PresentationError, SchemaError
from src.utils.logger import get_logger

logger = get_logger(__name__)

RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]*[1-9][0-9]*)?$"

TERM_LIST_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["coeff", "monomial"],
        "additionalProperties": False,
        "properties": {
            "coeff": {"type": "string", "pattern": RATIONAL_PATTERN},
            "monomial": {
                "type": "object",
                "additionalProperties": {"type": "integer", "minimum": 0}
            }
        }
    }
}

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["field", "generators", "relations", "top_degree"],
    "additionalProperties": False,
    "properties": {
        "field": {"type": "string", "pattern": r"^(Q|F2|Fp:[0-9]+)$"},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "degree"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "degree": {"type": "integer", "minimum": 1}
                }
            }
        },
        "relations": {"type": "array", "items": {**TERM_LIST_SCHEMA, "minItems": 1}},
        "top_degree": {"type": "integer", "minimum": 0}
    }
}

HOM_SCHEMA = {
    "type": "object",
    "required": ["images"],
    "additionalProperties": False,
    "properties": {
        "images": {"type": "object", "additionalProperties": TERM_LIST_SCHEMA}
    }
}

PAIR_SPEC_SCHEMA = {
    "type": "object",
    "required": ["source", "target", "hom"],
    "additionalProperties": False,
    "properties": {
        "source": PRESENTATION_SCHEMA,
        "target": PRESENTATION_SCHEMA,
        "hom": HOM_SCHEMA,
        "max_factors": {"type": "integer", "minimum": 1}
    }
}


def _pointer(path) -> str:
    return "".join(
        "/" + str(part).replace("~", "~0").replace("/", "~1") for part in path
    )


def validate_document(document: Any, schema: Dict[str, Any], base: Tuple = ()) -> None:
    """
    Validate a JSON document.

    Raises:
        SchemaError: For the first error in path order, with its JSON pointer
    """
    validator = Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        first = errors[0]
        pointer = _pointer(base + tuple(first.absolute_path))
        logger.error(f"Schema validation failed at {pointer or '/'}: {first.message}")
        raise SchemaError(first.message, pointer)


def _exponent_vector(monomial: Dict[str, int], names: Tuple[str, ...], pointer: str) -> Tuple[int, ...]:
    exponents = [0] * len(names)
    for name, e in monomial.items():
        if name not in names:
            raise SchemaError(f"Unknown generator {name!r}", pointer)
        exponents[names.index(name)] = e
    return tuple(exponents)


def presentation_from_json(document: Dict[str, Any], base: Tuple = ()) -> GradedRingPresentation:
    """
    Build a presentation from its JSON document.

    Args:
        document: {"field", "generators", "relations", "top_degree"}
        base: Path of the document inside an enclosing document, for pointers

    Raises:
        SchemaError: On schema violations or unknown generator names
        PresentationError: On non-homogeneous or zero relations
    """
    validate_document(document, PRESENTATION_SCHEMA, base)
    try:
        field = FieldSpec.parse(document["field"])
    except InputError as e:
        raise SchemaError(str(e), _pointer(base + ("field",)))

    generators = tuple(Generator(g["name"], g["degree"]) for g in document["generators"])
    names = tuple(g.name for g in generators)
    relations = []
    for r, terms in enumerate(document["relations"]):
        mapping: Dict[Tuple[int, ...], Fraction] = {}
        for t, term in enumerate(terms):
            pointer = _pointer(base + ("relations", r, t, "monomial"))
            mono = _exponent_vector(term["monomial"], names, pointer)
            mapping[mono] = mapping.get(mono, Fraction(0)) + Fraction(term["coeff"])
        polynomial = Polynomial.from_mapping(mapping)
        if not polynomial.terms:
            raise SchemaError("Relation has no nonzero terms", _pointer(base + ("relations", r)))
        relations.append(polynomial)

    return GradedRingPresentation(
        generators=generators,
        relations=tuple(relations),
        field=field,
        top_degree=document["top_degree"]
    )


def presentation_to_json(presentation: GradedRingPresentation) -> Dict[str, Any]:
    names = presentation.names
    return {
        "field": presentation.field.label,
        "generators": [{"name": g.name, "degree": g.degree} for g in presentation.generators],
        "relations": [
            [
                {"coeff": str(coeff), "monomial": {n: e for n, e in zip(names, mono) if e}}
                for mono, coeff in relation.terms
            ]
            for relation in presentation.relations
        ],
        "top_degree": presentation.top_degree
    }


def element_from_json(ring: QuotientRing, terms: List[Dict[str, Any]], base: Tuple = ()) -> RingElement:
    """Element of a presented ring from a term list."""
    validate_document(terms, TERM_LIST_SCHEMA, base)
    result = ring.zero()
    for t, term in enumerate(terms):
        mono = _exponent_vector(term["monomial"], ring.names, _pointer(base + (t, "monomial")))
        result = result + ring.monomial(mono, Fraction(term["coeff"]))
    return result


def element_to_terms(element: RingElement) -> List[Dict[str, Any]]:
    """
    Term list of an element over its ring's basis.

    Tensor basis elements merge both factors; generators of the right factor
    carry a trailing prime.
    """
    ring = element.ring
    return [
        {"coeff": str(coeff), "monomial": ring.basis_exponents(degree, index)}
        for coeff, degree, index in element.terms()
    ]


def hom_from_json(source: QuotientRing, target: QuotientRing, document: Dict[str, Any], base: Tuple = ()) -> RingHom:
    """
    Build a homomorphism from {"images": {name: term list}}.

    Raises:
        SchemaError: On schema violations
        RelationNotPreserved: If a source relation does not map to zero
    """
    validate_document(document, HOM_SCHEMA, base)
    images = {}
    for name, terms in document["images"].items():
        if name not in source.names:
            raise SchemaError(f"Unknown source generator {name!r}", _pointer(base + ("images", name)))
        images[name] = element_from_json(target, terms, base + ("images", name))
    missing = [name for name in source.names if name not in images]
    if missing:
        raise SchemaError(f"No image for generators {missing}", _pointer(base + ("images",)))
    return RingHom(source, target, images)


def hom_to_json(hom: RingHom) -> Dict[str, Any]:
    return {"images": {name: element_to_terms(image) for name, image in hom.images.items()}}


def load_pair_spec(document: Dict[str, Any]) -> Tuple[TensorRing, RingHom]:
    """
    Build H*(X) ⊗ H*(Y) and ι* from a pair specification document.

    Args:
        document: {"source": presentation, "target": presentation, "hom": {"images": ...}}

    Returns:
        Tuple of (tensor ring, homomorphism)
    """
    validate_document(document, PAIR_SPEC_SCHEMA)
    source = QuotientRing(presentation_from_json(document["source"], ("source",)), name="H*(X)")
    target = QuotientRing(presentation_from_json(document["target"], ("target",)), name="H*(Y)")
    if source.field != target.field:
        raise PresentationError(f"Source over {source.field} but target over {target.field}")
    hom = hom_from_json(source, target, document["hom"], ("hom",))
    return TensorRing(source, target), hom


def certificate_to_json(certificate) -> Dict[str, Any]:
    """JSON form of a CupLengthCertificate."""
    return {
        "k": certificate.k,
        "factors": [element_to_terms(f) for f in certificate.factors],
        "product": element_to_terms(certificate.product),
        "bound": f"TC >= {certificate.bound_implied}"
    }


CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["k", "factors", "product", "bound"],
    "additionalProperties": False,
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "factors": {"type": "array", "items": TERM_LIST_SCHEMA},
        "product": TERM_LIST_SCHEMA,
        "bound": {"type": "string", "pattern": r"^TC >= [0-9]+$"}
    }
}

BOUND_REPORT_SCHEMA = {
    "type": "object",
    "required": ["lower", "upper", "exact", "steps"],
    "additionalProperties": False,
    "properties": {
        "lower": {"type": "integer", "minimum": 1},
        "upper": {"type": ["integer", "null"], "minimum": 1},
        "exact": {"type": "boolean"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["rule", "cite", "value"],
                "additionalProperties": False,
                "properties": {
                    "rule": {"type": "string"},
                    "cite": {"type": "string"},
                    "value": {"type": "string"}
                }
            }
        }
    }
}

PATH_SAMPLE_SCHEMA = {
    "type": "object",
    "required": ["rule", "t", "points"],
    "additionalProperties": False,
    "properties": {
        "rule": {"type": "integer", "minimum": 1},
        "t": {"type": "array", "items": {"type": "number"}},
        "points": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
    }
}

VERIFICATION_SCHEMA = {
    "type": "object",
    "required": ["N", "cover_failures", "endpoint_max_err", "continuity_defect", "seed"],
    "additionalProperties": False,
    "properties": {
        "N": {"type": "integer", "minimum": 1},
        "cover_failures": {"type": "integer", "minimum": 0},
        "endpoint_max_err": {"type": "number"},
        "continuity_defect": {"type": "number"},
        "seed": {"type": "integer"}
    }
}
