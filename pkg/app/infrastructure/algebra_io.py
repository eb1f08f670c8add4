"""JSON algebra documents: pydantic schema, loading and dumping.

Document shape (indices 1-based, coefficients as ``"num/den"`` strings or ints)::

    {"name": "b2", "dim": 2,
     "brackets": [{"i": 1, "j": 2, "terms": {"2": "1"}}],
     "invariants": ["x1^2 + 4*x2*x3"]}
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic import ValidationError as SchemaError

from app.core.exceptions import MalformedInputError, ValidationError
from app.domain.liealg import LieAlgebra
from app.domain.ratpoly import MultiPoly, fraction_text, parse_poly, to_fraction

logger = structlog.get_logger(__name__)

Coefficient = Union[int, str]


class BracketEntry(BaseModel):
    """``[e_i, e_j] = sum_k terms[k] e_k``."""

    model_config = ConfigDict(extra="forbid")

    i: int = Field(ge=1)
    j: int = Field(ge=1)
    terms: Dict[str, Coefficient] = Field(default_factory=dict)

    @field_validator("terms")
    @classmethod
    def _keys_are_indices(cls, value: Dict[str, Coefficient]) -> Dict[str, Coefficient]:
        for key in value:
            if not key.isdigit() or int(key) < 1:
                raise ValueError(f"term key {key!r} is not a 1-based index")
        return value


class AlgebraDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(default="custom", description="Label used in reports")
    dim: int = Field(ge=1, description="Dimension of the algebra")
    brackets: List[BracketEntry] = Field(default_factory=list)
    invariants: List[str] = Field(default_factory=list, description="Polynomial texts")


def _location(error: Dict[str, Any]) -> str:
    parts = []
    for item in error.get("loc", ()):
        if isinstance(item, int):
            parts.append(f"[{item}]")
        else:
            parts.append(f".{item}" if parts else str(item))
    return "".join(parts) or "document"


def parse_document(text: str) -> AlgebraDocument:
    """Parse JSON text into a validated document (``MalformedInputError`` with a location)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(
            f"Invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from exc
    try:
        return AlgebraDocument.model_validate(data)
    except SchemaError as exc:
        first = exc.errors()[0]
        raise MalformedInputError(first["msg"], _location(first)) from exc


def _structure(doc: AlgebraDocument) -> Dict[tuple, Fraction]:
    structure: Dict[tuple, Fraction] = {}
    for pos, entry in enumerate(doc.brackets):
        where = f"brackets[{pos}]"
        if entry.i > doc.dim or entry.j > doc.dim:
            raise MalformedInputError(f"Index out of range 1..{doc.dim}", where)
        if entry.i == entry.j:
            raise MalformedInputError("A bracket needs two different basis vectors", where)
        for key, raw in entry.terms.items():
            k = int(key)
            if k > doc.dim:
                raise MalformedInputError(
                    f"Index out of range 1..{doc.dim}", f"{where}.terms.{key}"
                )
            try:
                c = to_fraction(raw)
            except ValidationError as exc:
                raise MalformedInputError(exc.message, f"{where}.terms.{key}") from exc
            triple = (entry.i - 1, entry.j - 1, k - 1)
            if triple in structure or (entry.j - 1, entry.i - 1, k - 1) in structure:
                raise MalformedInputError("Bracket given twice", f"{where}.terms.{key}")
            structure[triple] = c
    return structure


def _invariants(doc: AlgebraDocument) -> List[MultiPoly]:
    result = []
    for pos, text in enumerate(doc.invariants):
        try:
            result.append(parse_poly(text, doc.dim))
        except MalformedInputError as exc:
            raise MalformedInputError(
                exc.message, f"invariants[{pos}] {exc.details.get('location', '')}".strip()
            ) from exc
    return result


def build_algebra(doc: AlgebraDocument) -> LieAlgebra:
    """Unchecked algebra; run ``liealg.validate`` before trusting it."""
    return LieAlgebra(
        doc.dim, _structure(doc), name=doc.name, invariants=tuple(_invariants(doc)), check=False
    )


def load_algebra(text: str) -> LieAlgebra:
    alg = build_algebra(parse_document(text))
    logger.debug("Algebra loaded", algebra=alg.name, dim=alg.dim, brackets=len(alg.structure))
    return alg


def read_algebra(source: Union[str, Path], stdin: Optional[Any] = None) -> LieAlgebra:
    """Load from a file path, inline JSON text, or ``stdin`` when the path is ``-``."""
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return load_algebra(source)
    if str(source) == "-":
        if stdin is None:
            raise ValidationError("No stdin stream available")
        return load_algebra(stdin.read())
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"Cannot read input: {exc.strerror}", str(path)) from exc
    return load_algebra(text)


def dump_algebra(alg: LieAlgebra) -> Dict[str, Any]:
    """Document for ``alg`` (1-based, brackets with ``i < j``)."""
    grouped: Dict[tuple, Dict[str, str]] = {}
    for (i, j, k), c in alg.structure.items():
        grouped.setdefault((i, j), {})[str(k + 1)] = fraction_text(c)
    return AlgebraDocument(
        name=alg.name or "custom",
        dim=alg.dim,
        brackets=[
            BracketEntry(i=i + 1, j=j + 1, terms=terms) for (i, j), terms in sorted(grouped.items())
        ],
        invariants=[f.to_text() for f in alg.invariants],
    ).model_dump()
