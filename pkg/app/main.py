"""Command-line entry point (``argshift``)."""

import argparse
import sys
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, TextIO, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as SchemaError

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    EXIT_FINDING,
    EXIT_INPUT,
    EXIT_INTERNAL,
    EXIT_OK,
    BaseAppException,
    MalformedInputError,
    ValidationError,
)
from app.core.logging import setup_logging
from app.domain import liealg
from app.domain.criterion import theorem2_decide
from app.domain.liealg import LieAlgebra
from app.domain.pencil import FormPair, pencil_report, verify_la2
from app.domain.poisson import check_pairwise_commute, detect_semiinvariants
from app.domain.ratpoly import (
    MultiPoly,
    parse_poly,
    rational_factors,
    squarefree_part,
    to_fraction,
)
from app.domain.shiftalg import (
    ShiftPoint,
    completeness_direct,
    extended_generators,
    mf_generators,
    shift_expand,
)
from app.domain.singular import fundamental_semiinvariant, index, sing0_codim_flag
from app.infrastructure.algebra_io import read_algebra
from app.infrastructure.serialization import (
    ReportEnvelope,
    dumps,
    envelope,
    render_text,
    verdict_to_dict,
)
from app.services.pipeline import ReportPipeline

logger = structlog.get_logger(__name__)

COMMANDS = (
    "validate",
    "index",
    "semiinvariant",
    "shift",
    "commute-check",
    "pencil",
    "completeness",
    "report",
)


class RunConfig(BaseModel):
    """Validated command-line configuration."""

    model_config = ConfigDict(extra="ignore")

    command: Literal[
        "validate",
        "index",
        "semiinvariant",
        "shift",
        "commute-check",
        "pencil",
        "completeness",
        "report",
    ]
    input: Optional[str] = None
    catalog: Optional[str] = None
    a: Optional[str] = None
    x: Optional[str] = None
    polys: Optional[str] = None
    samples: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    tol: Optional[float] = Field(default=None, ge=0)
    output_format: Literal["json", "text"] = Field(default="json", alias="format")
    verbose: bool = False

    def settings(self) -> Settings:
        base = get_settings()
        return base.with_tolerance(self.tol) if self.tol is not None else base


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argshift",
        description="Argument-shift subalgebras of Lie algebras: index, p_g, completeness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        source = cmd.add_mutually_exclusive_group(required=True)
        source.add_argument("--input", help="Algebra JSON file, inline JSON, or - for stdin")
        source.add_argument("--catalog", help="Catalog expression, e.g. b2+h3")
        cmd.add_argument("--a", help="Shift point as comma-separated rationals")
        cmd.add_argument("--x", help="Point for the pencil and identity checks")
        cmd.add_argument("--polys", help="Semicolon-separated polynomials")
        cmd.add_argument("--samples", type=int)
        cmd.add_argument("--seed", type=int)
        cmd.add_argument("--tol", type=float)
        cmd.add_argument("--format", choices=("json", "text"), default="json")
        cmd.add_argument("--verbose", action="store_true")
    return parser


def parse_vector(text: Optional[str], dim: int, flag: str) -> Tuple[Any, ...]:
    if text is None:
        raise ValidationError(f"{flag} is required for this command")
    parts = [p for p in text.replace(" ", "").split(",")]
    if len(parts) != dim or not all(parts):
        raise MalformedInputError(f"{flag} needs {dim} comma-separated rationals", flag)
    try:
        return tuple(to_fraction(p) for p in parts)
    except ValidationError as exc:
        raise MalformedInputError(exc.message, flag) from exc


def parse_polys(text: Optional[str], dim: int) -> List[MultiPoly]:
    if not text:
        return []
    result = []
    for pos, chunk in enumerate(text.split(";")):
        try:
            result.append(parse_poly(chunk, dim))
        except MalformedInputError as exc:
            raise MalformedInputError(
                exc.message, f"--polys[{pos}] {exc.details.get('location', '')}".strip()
            ) from exc
    return result


def load(config: RunConfig, stdin: TextIO) -> LieAlgebra:
    if config.catalog is not None:
        return liealg.catalog(config.catalog)
    return read_algebra(config.input, stdin)


Outcome = Tuple[Dict[str, Any], int]


def cmd_validate(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    report = liealg.validate(alg)
    return {"dim": alg.dim, **report.to_dict()}, EXIT_OK if report.ok else EXIT_INPUT


def _checked(alg: LieAlgebra) -> None:
    liealg.validate(alg).raise_for_violation()


def cmd_index(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    cert = index(alg, settings, config.seed)
    return {
        "dim": cert.dim,
        "index": cert.index,
        "t": cert.t,
        "b_g": cert.b_g,
        "trials": cert.trials,
    }, EXIT_OK


def cmd_semiinvariant(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    cert = index(alg, settings, config.seed)
    p_g = fundamental_semiinvariant(alg, settings, config.seed)
    codim = sing0_codim_flag(alg, settings, config.seed)
    factors = rational_factors(p_g)
    candidates = (
        list(alg.invariants)
        + [p_g]
        + [f for f, _ in factors]
        + [MultiPoly.variable(alg.dim, k) for k in range(alg.dim)]
        + parse_polys(config.polys, alg.dim)
    )
    found = detect_semiinvariants(alg, candidates)
    return {
        "p_g": p_g,
        "degree": p_g.total_degree or 0,
        "t": cert.t,
        "index": cert.index,
        "codim_one": codim.codim_one,
        "sing0": codim.label,
        "squarefree": squarefree_part(p_g),
        "factors": [{"factor": f, "multiplicity": k} for f, k in factors],
        "semiinvariants": [
            {"polynomial": f, "character": list(ch.values)} for f, ch in found
        ],
    }, EXIT_OK


def _shift_point(alg: LieAlgebra, config: RunConfig, settings: Settings) -> ShiftPoint:
    return ShiftPoint.certify(alg, parse_vector(config.a, alg.dim, "--a"), settings, config.seed)


def cmd_shift(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    point = _shift_point(alg, config, settings)
    sources = parse_polys(config.polys, alg.dim) or list(alg.invariants)
    classical = mf_generators(alg, point, settings, config.seed)
    extended = extended_generators(alg, point, settings, config.seed)
    direct = completeness_direct(alg, extended, settings, config.seed, config.samples)
    return {
        "a": list(point.a),
        "expansions": [
            {"source": f, "coefficients": shift_expand(f, point)} for f in sources
        ],
        "classical": list(classical.generators),
        "extended": list(extended.generators),
        "provenance": [{"source": p.source, "power": p.power} for p in extended.provenance],
        "notes": [n for n in (classical.note, extended.note) if n],
        "trdeg": direct.trdeg,
        "b_g": direct.b_g,
        "complete": direct.complete,
    }, EXIT_OK


def cmd_commute_check(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    a = parse_vector(config.a, alg.dim, "--a")
    polys = parse_polys(config.polys, alg.dim)
    if not polys:
        polys = list(extended_generators(alg, a, settings, config.seed).generators)
    result = check_pairwise_commute(alg, a, polys)
    return {
        "ok": result.ok,
        "pairs_checked": result.pairs_checked,
        "witness": result.witness,
    }, EXIT_OK if result.ok else EXIT_FINDING


def cmd_pencil(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    x = parse_vector(config.x, alg.dim, "--x")
    a = parse_vector(config.a, alg.dim, "--a")
    pair = FormPair.from_algebra(alg, x, a)
    report = pencil_report(pair, None, settings, config.seed)
    la2 = verify_la2(pair, settings, config.seed)
    return {
        "pencil": report,
        "la2": [{"name": c.name, "passed": c.passed, "witness": c.witness} for c in la2.checks],
    }, EXIT_OK


def cmd_completeness(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    _checked(alg)
    point = _shift_point(alg, config, settings)
    verdict = theorem2_decide(alg, point, config.samples, config.seed, settings)
    return verdict_to_dict(verdict, config.verbose), EXIT_OK if verdict.agreement else EXIT_FINDING


def cmd_report(alg: LieAlgebra, config: RunConfig, settings: Settings) -> Outcome:
    a = parse_vector(config.a, alg.dim, "--a") if config.a else None
    result = ReportPipeline(settings=settings).run(
        alg, a, config.samples, config.seed, config.verbose
    )
    return result, EXIT_OK if result["verdict"]["agreement"] else EXIT_FINDING


HANDLERS: Dict[str, Callable[[LieAlgebra, RunConfig, Settings], Outcome]] = {
    "validate": cmd_validate,
    "index": cmd_index,
    "semiinvariant": cmd_semiinvariant,
    "shift": cmd_shift,
    "commute-check": cmd_commute_check,
    "pencil": cmd_pencil,
    "completeness": cmd_completeness,
    "report": cmd_report,
}


def _emit(report: ReportEnvelope, output_format: str, stdout: TextIO) -> None:
    stdout.write(dumps(report) if output_format == "json" else render_text(report))
    stdout.write("\n")


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    """Parse ``argv``, run one subcommand and write its report; returns the exit code."""
    stdout = stdout or sys.stdout
    stdin = stdin or sys.stdin
    try:
        namespace = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        config = RunConfig.model_validate(vars(namespace))
    except SchemaError as exc:
        first = exc.errors()[0]
        error = MalformedInputError(first["msg"], ".".join(str(p) for p in first["loc"]))
        _emit(envelope(namespace.command, None, error.to_report()), "json", stdout)
        return error.exit_code

    settings = get_settings()
    setup_logging(
        level="DEBUG" if config.verbose else settings.log_level,
        format_type=settings.log_format,
        development=settings.is_development,
    )
    alg: Optional[LieAlgebra] = None
    try:
        settings = config.settings()
        alg = load(config, stdin)
        result, code = HANDLERS[config.command](alg, config, settings)
    except BaseAppException as exc:
        logger.warning("Command failed", command=config.command, error=exc.error_code)
        _emit(envelope(config.command, alg, exc.to_report()), config.output_format, stdout)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001
        logger.error("Unexpected failure", command=config.command, error=str(exc))
        report = {"error": "INTERNAL_ERROR", "message": str(exc), "details": {}}
        _emit(envelope(config.command, alg, report), config.output_format, stdout)
        return EXIT_INTERNAL
    _emit(envelope(config.command, alg, result), config.output_format, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
