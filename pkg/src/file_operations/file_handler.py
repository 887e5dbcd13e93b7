"""
File operations module for reading ring specifications and writing results.
Provides JSON loading with schema diagnostics and byte-stable JSON output.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from src.algebra.rings import RingHom, TensorRing
from src.algebra.serialization import load_pair_spec
from src.utils.errors import InputError, SchemaError
from src.utils.logger import get_logger


logger = get_logger(__name__)


def read_json(file_path: Path) -> Any:
    """
    Read a JSON document.

    Args:
        file_path: Path to a UTF-8 JSON file

    Returns:
        Parsed document

    Raises:
        InputError: If the file cannot be read
        SchemaError: If the file is not valid JSON
    """
    file_path = Path(file_path)
    try:
        logger.debug(f"Reading JSON file: {file_path.name}")
        with open(file_path, encoding="utf-8") as handle:
            return json.load(handle)

    except FileNotFoundError:
        logger.error(f"File not found: {file_path}")
        raise InputError(f"File not found: {file_path}")

    except json.JSONDecodeError as e:
        logger.error(f"Invalid JSON in {file_path.name}: {e}")
        raise SchemaError(f"Invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})", "")


def load_ring_spec(file_path: Path) -> Tuple[TensorRing, RingHom, Optional[int]]:
    """
    Load and validate a pair specification file.

    The ring, the target ring and the homomorphism are fully validated,
    relations included, before anything else runs.

    Args:
        file_path: Path to the specification

    Returns:
        Tuple of (H*(X) ⊗ H*(Y), ι*, max_factors from the file or None)

    Raises:
        SchemaError: With a JSON pointer to the offending entry
        RelationNotPreserved: If ι* does not respect a relation of H*(X)
    """
    document = read_json(file_path)
    tensor_ring, hom = load_pair_spec(document)
    logger.info(f"Loaded pair specification {Path(file_path).name}: {tensor_ring.name}")
    return tensor_ring, hom, document.get("max_factors")


def write_json(document: Dict[str, Any], file_path: Path) -> Path:
    """
    Write a JSON document as UTF-8 with keys in insertion order.

    Args:
        document: JSON-ready structure
        file_path: Output path; parent directories are created

    Returns:
        The path written
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, ensure_ascii=False, indent=2)
        handle.write("\n")
    logger.info(f"Wrote {file_path}")
    return file_path
