"""Deterministic report encoding (schema 1).

Rationals are written as ``"num/den"`` strings and numeric values as
``{"re": ..., "im": ...}``; keys are sorted so identical runs produce
byte-identical output.
"""

import json
from dataclasses import fields, is_dataclass
from enum import Enum
from fractions import Fraction
from functools import singledispatch
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.domain.criterion import SingularSample, Theorem2Verdict
from app.domain.liealg import LieAlgebra
from app.domain.pencil import PencilReport
from app.domain.ratpoly import MultiPoly, NumericRoot, UniPoly, fraction_text
from app.domain.shiftalg import GeneratorSet
from app.domain.value_objects import ValidationReport

SCHEMA_VERSION = 1


class ReportEnvelope(BaseModel):
    """Top-level report document."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    algebra: str
    result: Dict[str, Any]


def _complex(value: complex) -> Dict[str, float]:
    return {"re": float(value.real), "im": float(value.imag)}


@singledispatch
def to_jsonable(value: Any) -> Any:
    """Plain JSON structure for domain values."""
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value) if f.repr}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.complexfloating, complex)):
        return _complex(complex(value))
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


@to_jsonable.register
def _(value: Fraction) -> str:
    return fraction_text(value)


@to_jsonable.register
def _(value: bool) -> bool:
    return value


@to_jsonable.register
def _(value: Enum) -> Any:
    return value.value


@to_jsonable.register
def _(value: MultiPoly) -> str:
    return value.to_text()


@to_jsonable.register
def _(value: UniPoly) -> str:
    return value.to_text()


@to_jsonable.register
def _(value: NumericRoot) -> Dict[str, float]:
    return {
        **_complex(value.value),
        "residual": float(value.residual),
        "low_confidence": value.low_confidence,
    }


@to_jsonable.register
def _(value: ValidationReport) -> Dict[str, Any]:
    return value.to_dict()


@to_jsonable.register
def _(value: GeneratorSet) -> Dict[str, Any]:
    return {
        "kind": value.kind.value,
        "generators": [g.to_text() for g in value.generators],
        "provenance": [{"source": p.source, "power": p.power} for p in value.provenance],
        "note": value.note,
    }


@to_jsonable.register
def _(value: PencilReport) -> Dict[str, Any]:
    return {
        "r": value.r,
        "spectrum": [
            {"lambda": to_jsonable(entry.value), "corank": entry.corank, "eigenspace_dim": dim}
            for entry, dim in zip(value.spectrum, value.eigenspace_dims)
        ],
        "dim_L": value.dim_l,
        "dim_Lperp": value.dim_lperp,
        "diagonalizable": value.diagonalizable,
        "infinity_in_spectrum": value.infinity_in_spectrum,
        "eigenvalue_multiplicities": [
            {"value": to_jsonable(e.value), "algebraic": e.algebraic, "geometric": e.geometric}
            for e in value.eigen
        ],
    }


@to_jsonable.register
def _(value: SingularSample) -> Dict[str, Any]:
    return {
        "point": to_jsonable(value.point),
        "component": value.component_tag,
        "corank": value.corank,
        "subregular": value.subregular,
        "smooth": value.smooth,
        "gradient_norm": value.gradient_norm,
        "residual": value.residual,
        "stab_class": value.stab_class.value,
        "exact": value.exact,
        "low_confidence": value.low_confidence,
    }


def verdict_to_dict(verdict: Theorem2Verdict, verbose: bool = False) -> Dict[str, Any]:
    data = {
        "branch": verdict.branch.value,
        "p_g": verdict.p_g,
        "criterion_complete": verdict.criterion_complete,
        "direct_complete": verdict.direct_complete,
        "agreement": verdict.agreement,
        "corollary_complete": verdict.corollary_complete,
        "low_confidence": verdict.low_confidence,
        "trdeg": verdict.trdeg,
        "b_g": verdict.b_g,
        "per_component": [to_jsonable(c) for c in verdict.per_component],
        "notes": to_jsonable(list(verdict.notes)),
    }
    if verbose:
        data["samples"] = [to_jsonable(s) for s in verdict.samples]
    return data


def envelope(command: str, alg: Optional[LieAlgebra], result: Dict[str, Any]) -> ReportEnvelope:
    return ReportEnvelope(
        command=command, algebra=alg.name if alg is not None else "", result=to_jsonable(result)
    )


def dumps(report: ReportEnvelope) -> str:
    return json.dumps(report.model_dump(by_alias=True), sort_keys=True, indent=2)


def render_text(report: ReportEnvelope) -> str:
    """``key: value`` lines, nested keys joined by dots."""
    lines = [f"schema: {report.schema_version}", f"command: {report.command}"]
    if report.algebra:
        lines.append(f"algebra: {report.algebra}")
    lines.extend(_flatten("", report.result))
    return "\n".join(lines)


def _flatten(prefix: str, value: Any) -> list:
    if isinstance(value, dict):
        out = []
        for key in sorted(value):
            out.extend(_flatten(f"{prefix}.{key}" if prefix else str(key), value[key]))
        return out or [f"{prefix}: {{}}"]
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        out = []
        for pos, item in enumerate(value):
            out.extend(_flatten(f"{prefix}[{pos}]", item))
        return out or [f"{prefix}: []"]
    if isinstance(value, list):
        return [f"{prefix}: " + ", ".join(str(v) for v in value)]
    return [f"{prefix}: {value}"]
