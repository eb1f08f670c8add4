"""Completeness criterion via stabilizers along the codimension-one singular set.

Sing_0 is sampled on random rational lines, one batch per rational factor of
the fundamental semi-invariant. Smooth subregular samples are classified and a
component passes when its samples are ``b2 + Abelian``. The verdict is always
cross-checked against the direct transcendence-degree computation.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    InsufficientSamplesError,
    NoRootsFoundError,
    NotNiceError,
    ValidationError,
)
from app.domain import linalg
from app.domain.entities import SingularBranch, StabilizerClass
from app.domain.liealg import LieAlgebra, classify_stabilizer, is_exact_point, stabilizer
from app.domain.pencil import INFINITY, FormPair, core_subspace, isotropy_check
from app.domain.ratpoly import (
    MultiPoly,
    NumericRoot,
    Root,
    RootMultiplicity,
    UniPoly,
    random_rational_vector,
    rational_factors,
    restrict_to_line,
    squarefree_part,
    to_fraction,
    univariate_distinct_roots,
)
from app.domain.shiftalg import (
    PointLike,
    ShiftPoint,
    completeness_direct,
    extended_generators,
    mf_generators,
    shift_expand,
)
from app.domain.singular import corank_at, fundamental_semiinvariant, index, line_pfaffian_gcd
from app.domain.value_objects import PropertyCheck, PropertyReport

logger = structlog.get_logger(__name__)

INVARIANTS_MISSING = "invariants_missing"
MIXED_CLASSES = "mixed_classes"
UNLISTED_CLASS = "unlisted_stabilizer_class"


@dataclass(frozen=True)
class SingularSample:
    """One point of ``{p_g = 0}`` with its local diagnostics."""

    point: Tuple[Any, ...]
    gradient_norm: float
    smooth: bool
    residual: float
    corank: int
    subregular: bool
    stab_class: StabilizerClass
    component_tag: str
    exact: bool
    low_confidence: bool = False

    @property
    def valid(self) -> bool:
        """Smooth and subregular, on a root that passed the residual check."""
        return self.smooth and self.subregular and not self.low_confidence


def _line_point(
    base: Sequence[Fraction], direction: Sequence[Fraction], t: Root
) -> Tuple[Any, ...]:
    if isinstance(t, Fraction):
        return tuple(b + t * d for b, d in zip(base, direction))
    z = t.value
    return tuple(complex(float(b)) + z * float(d) for b, d in zip(base, direction))


def _gradient_at(p: MultiPoly, point: Sequence[Any], exact: bool) -> List[Any]:
    if exact:
        return [g.evaluate(point) for g in p.gradient]
    return [g.evaluate_numeric(point) for g in p.gradient]


def _scaled_residual(p: MultiPoly, point: Sequence[complex]) -> float:
    """``|p(point)|`` relative to the size of the point."""
    scale = max(1.0, max(abs(v) for v in point)) ** (p.total_degree or 0)
    return abs(p.evaluate_numeric(point)) / scale


def _make_sample(
    alg: LieAlgebra,
    s: MultiPoly,
    factor: MultiPoly,
    point: Tuple[Any, ...],
    ind_g: int,
    settings: Settings,
    low_confidence: bool = False,
) -> Optional[SingularSample]:
    exact = is_exact_point(point)
    if exact:
        if not factor.evaluate(point) == 0:
            raise ValidationError("Exact line root is not a zero of its factor")
        residual = 0.0
    else:
        residual = _scaled_residual(factor, point)
        if residual > settings.zero_tol:
            logger.debug("Numeric sample off the hypersurface", residual=residual)
            return None
    gradient = _gradient_at(s, point, exact)
    if exact:
        norm = float(np.linalg.norm([float(g) for g in gradient]))
        smooth = any(g != 0 for g in gradient)
    else:
        norm = float(np.linalg.norm(np.asarray(gradient, dtype=complex)))
        smooth = norm > settings.smooth_tol
    corank = corank_at(alg, point, settings)
    h = stabilizer(alg, point, settings)
    stab_class = classify_stabilizer(h, ind_g, settings)
    return SingularSample(
        point=point,
        gradient_norm=norm,
        smooth=smooth,
        residual=residual,
        corank=corank,
        subregular=corank == ind_g + 2,
        stab_class=stab_class,
        component_tag=factor.to_text(),
        exact=exact,
        low_confidence=low_confidence,
    )


def _component_samples(
    alg: LieAlgebra,
    s: MultiPoly,
    factor: MultiPoly,
    slot: int,
    count: int,
    seed: int,
    ind_g: int,
    settings: Settings,
    require_valid: bool,
) -> Tuple[List[SingularSample], int, int]:
    """Samples on one factor; returns ``(samples, attempts, roots_seen)``."""
    n = alg.dim
    budget = settings.retry_factor * count
    samples: List[SingularSample] = []
    roots_seen = 0
    attempts = 0
    while attempts < budget:
        wanted = sum(1 for x in samples if x.valid) if require_valid else len(samples)
        if wanted >= count:
            break
        rng = np.random.default_rng([seed, slot, attempts])
        height = settings.height(attempts)
        base = random_rational_vector(rng, n, height)
        direction = random_rational_vector(rng, n, height)
        attempts += 1
        q = restrict_to_line(factor, base, direction)
        if not q.degree:
            continue
        for rm in univariate_distinct_roots(q, settings):
            roots_seen += 1
            y = _line_point(base, direction, rm.root)
            low = isinstance(rm.root, NumericRoot) and rm.root.low_confidence
            sample = _make_sample(alg, s, factor, y, ind_g, settings, low)
            if sample is not None:
                samples.append(sample)
    return samples, attempts, roots_seen


def sample_sing0(
    alg: LieAlgebra,
    p_g: MultiPoly,
    count: Optional[int] = None,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
    require_valid: bool = False,
) -> List[SingularSample]:
    """Up to ``count`` samples per rational factor of ``p_g``.

    Each attempt draws a random rational line and takes every root of the
    factor's restriction; the retry budget is ``retry_factor * count`` lines.
    With ``require_valid`` the count refers to smooth subregular samples.
    """
    settings = settings or get_settings()
    count = settings.default_samples if count is None else count
    seed = settings.default_seed if seed is None else seed
    if p_g.is_zero or p_g.is_constant:
        raise ValidationError("Sampling the singular set needs a non-constant p_g")
    if p_g.num_vars != alg.dim:
        raise ValidationError("p_g lives in the wrong polynomial ring")
    s = squarefree_part(p_g)
    ind_g = index(alg, settings, seed).index
    samples: List[SingularSample] = []
    for slot, (factor, _) in enumerate(rational_factors(p_g)):
        found, attempts, roots_seen = _component_samples(
            alg, s, factor, slot, count, seed, ind_g, settings, require_valid
        )
        if not roots_seen:
            raise NoRootsFoundError(factor.to_text(), attempts)
        logger.debug(
            "Component sampled",
            component=factor.to_text(),
            samples=len(found),
            valid=sum(1 for x in found if x.valid),
            attempts=attempts,
        )
        samples.extend(found)
    return samples


@dataclass(frozen=True)
class ComponentSummary:
    component_tag: str
    sample_count: int
    valid_count: int
    b2_fraction: Fraction
    dominant_class: Optional[StabilizerClass]
    passed: bool
    low_confidence: bool
    class_counts: Tuple[Tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Theorem2Verdict:
    """Sampling criterion and direct completeness, side by side."""

    per_component: Tuple[ComponentSummary, ...]
    criterion_complete: bool
    direct_complete: bool
    agreement: bool
    corollary_complete: bool
    branch: SingularBranch
    low_confidence: bool
    trdeg: int
    b_g: int
    p_g: str
    notes: Tuple[Dict[str, Any], ...] = ()
    samples: Tuple[SingularSample, ...] = field(default=(), repr=False)

    def __post_init__(self) -> None:
        if self.agreement != (self.criterion_complete == self.direct_complete):
            raise ValueError("agreement must equal criterion_complete == direct_complete")


def _summarize(
    tag: str, samples: Sequence[SingularSample], settings: Settings, notes: List[Dict[str, Any]]
) -> ComponentSummary:
    valid = [x for x in samples if x.valid]
    counts = Counter(x.stab_class for x in valid)
    b2 = counts.get(StabilizerClass.B2_PLUS_ABELIAN, 0)
    fraction = Fraction(b2, len(valid)) if valid else Fraction(0)
    dominant = None
    if counts:
        order = list(StabilizerClass)
        dominant = sorted(counts, key=lambda c: (-counts[c], order.index(c)))[0]
    if len(counts) > 1:
        logger.warning("Stabilizer classes disagree on a component", component=tag)
        notes.append({"finding": MIXED_CLASSES, "component": tag})
    if StabilizerClass.OTHER in counts:
        logger.warning("Unlisted stabilizer class on a smooth subregular sample", component=tag)
        notes.append({"finding": UNLISTED_CLASS, "component": tag})
    low = len(valid) < settings.min_valid_samples
    if low:
        report = InsufficientSamplesError(tag, len(valid), settings.min_valid_samples).to_report()
        logger.warning("Low-confidence component", component=tag, valid=len(valid))
        notes.append(report)
    return ComponentSummary(
        component_tag=tag,
        sample_count=len(samples),
        valid_count=len(valid),
        b2_fraction=fraction,
        dominant_class=dominant,
        passed=bool(valid) and fraction >= Fraction(settings.b2_threshold),
        low_confidence=low,
        class_counts=tuple(sorted((c.value, k) for c, k in counts.items())),
    )


def _regular(
    alg: LieAlgebra, a: PointLike, settings: Settings, seed: Optional[int] = None
) -> ShiftPoint:
    if isinstance(a, ShiftPoint) and a.regular:
        return a
    return ShiftPoint.certify(alg, list(a), settings, seed)


def theorem2_decide(
    alg: LieAlgebra,
    a: PointLike,
    samples_per_component: Optional[int] = None,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Theorem2Verdict:
    """Decide completeness of the extended shift algebra by stabilizer sampling."""
    settings = settings or get_settings()
    count = settings.default_samples if samples_per_component is None else samples_per_component
    seed = settings.default_seed if seed is None else seed
    point = _regular(alg, a, settings, seed)
    p_g = fundamental_semiinvariant(alg, settings, seed)
    notes: List[Dict[str, Any]] = []

    if p_g.is_constant:
        classical = mf_generators(alg, point, settings, seed)
        direct = completeness_direct(alg, classical, settings, seed)
        low = classical.is_empty
        if low:
            notes.append({"finding": INVARIANTS_MISSING})
        verdict = Theorem2Verdict(
            per_component=(),
            criterion_complete=True,
            direct_complete=direct.complete,
            agreement=direct.complete,
            corollary_complete=True,
            branch=SingularBranch.CODIM_TWO,
            low_confidence=low,
            trdeg=direct.trdeg,
            b_g=direct.b_g,
            p_g=p_g.to_text(),
            notes=tuple(notes),
        )
        _log_verdict(alg, verdict)
        return verdict

    extended = extended_generators(alg, point, settings, seed)
    direct = completeness_direct(alg, extended, settings, seed)
    summaries: List[ComponentSummary] = []
    collected: List[SingularSample] = []
    for slot, (factor, _) in enumerate(rational_factors(p_g)):
        tag = factor.to_text()
        try:
            found = _component_only(alg, p_g, factor, slot, count, seed, settings)
        except NoRootsFoundError as exc:
            logger.warning("No roots found on a component", component=tag)
            notes.append(exc.to_report())
            found = []
        collected.extend(found)
        summaries.append(_summarize(tag, found, settings, notes))

    criterion = all(c.passed for c in summaries)
    corollary = all(
        any(
            x.valid and x.stab_class is StabilizerClass.B2_PLUS_ABELIAN
            for x in collected
            if x.component_tag == c.component_tag
        )
        for c in summaries
    )
    verdict = Theorem2Verdict(
        per_component=tuple(summaries),
        criterion_complete=criterion,
        direct_complete=direct.complete,
        agreement=criterion == direct.complete,
        corollary_complete=corollary,
        branch=SingularBranch.CODIM_ONE,
        low_confidence=any(c.low_confidence for c in summaries),
        trdeg=direct.trdeg,
        b_g=direct.b_g,
        p_g=p_g.to_text(),
        notes=tuple(notes),
        samples=tuple(collected),
    )
    _log_verdict(alg, verdict)
    return verdict


def _component_only(
    alg: LieAlgebra,
    p_g: MultiPoly,
    factor: MultiPoly,
    slot: int,
    count: int,
    seed: int,
    settings: Settings,
) -> List[SingularSample]:
    s = squarefree_part(p_g)
    ind_g = index(alg, settings, seed).index
    found, attempts, roots_seen = _component_samples(
        alg, s, factor, slot, count, seed, ind_g, settings, require_valid=True
    )
    if not roots_seen:
        raise NoRootsFoundError(factor.to_text(), attempts)
    return found


def _log_verdict(alg: LieAlgebra, verdict: Theorem2Verdict) -> None:
    log = logger.info if verdict.agreement else logger.warning
    log(
        "Completeness verdict reached",
        algebra=alg.name,
        branch=verdict.branch.value,
        criterion_complete=verdict.criterion_complete,
        direct_complete=verdict.direct_complete,
        agreement=verdict.agreement,
        low_confidence=verdict.low_confidence,
    )


# Differential identities at nice points


@dataclass(frozen=True)
class LambdaDifferential:
    """Root ``lam_i`` of ``s(x - lam a)`` with ``d lam_i(x)``."""

    root: Root
    point: Tuple[Any, ...]
    differential: Tuple[Any, ...]

    @property
    def exact(self) -> bool:
        return isinstance(self.root, Fraction)


def _exact_point(alg: LieAlgebra, x: Sequence[Any], what: str) -> Tuple[Fraction, ...]:
    if len(x) != alg.dim:
        raise ValidationError(f"{what} has the wrong dimension", {"expected": alg.dim})
    if not is_exact_point(x):
        raise ValidationError(f"{what} must be rational")
    return tuple(to_fraction(v) for v in x)


def _component_coranks(
    alg: LieAlgebra, p_g: MultiPoly, seed: int, settings: Settings
) -> Dict[str, int]:
    """Generic corank per component: minimum over a few fresh samples."""
    coranks: Dict[str, int] = {}
    for sample in sample_sing0(alg, p_g, 3, seed + 1, settings):
        tag = sample.component_tag
        coranks[tag] = min(coranks.get(tag, alg.dim), sample.corank)
    return coranks


def _owning_factor(factors: Sequence[MultiPoly], y: Sequence[Any]) -> MultiPoly:
    if is_exact_point(y):
        for f in factors:
            if f.evaluate(y) == 0:
                return f
    z = [complex(float(v)) if isinstance(v, Fraction) else v for v in y]
    return min(factors, key=lambda f: abs(f.evaluate_numeric(z)))


def nice_roots(
    alg: LieAlgebra,
    a: Sequence[Fraction],
    x: Sequence[Fraction],
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> List[RootMultiplicity]:
    """Roots of ``s(x - lam a)``, raising ``NotNiceError`` unless ``x`` is nice.

    Conditions: ``deg s`` distinct simple roots; the singular points of the line
    are exactly those roots; the corank at each root is the generic corank of
    its component.
    """
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    p_g = fundamental_semiinvariant(alg, settings, seed)
    if p_g.is_constant:
        raise NotNiceError("constant_fundamental_semiinvariant")
    s = squarefree_part(p_g)
    d = s.total_degree or 0
    minus_a = [-v for v in a]
    q = restrict_to_line(s, x, minus_a)
    if q.is_zero:
        raise NotNiceError("line_inside_singular_set")
    roots = univariate_distinct_roots(q, settings)
    if len(roots) != d or any(rm.multiplicity != 1 for rm in roots):
        raise NotNiceError(
            "distinct_roots",
            {
                "expected": d,
                "found": len(roots),
                "multiplicities": [rm.multiplicity for rm in roots],
            },
        )
    line = line_pfaffian_gcd(alg, x, minus_a, settings, seed)
    if line.is_zero:
        raise NotNiceError("line_inside_singular_set")
    singular = UniPoly.from_sympy(line.to_sympy().sqf_part()).monic()
    if singular != q.monic():
        raise NotNiceError(
            "extra_singular_points", {"line": singular.to_text(), "restriction": q.to_text()}
        )
    factors = [f for f, _ in rational_factors(p_g)]
    generic = _component_coranks(alg, p_g, seed, settings)
    for rm in roots:
        y = _line_point(x, minus_a, rm.root)
        tag = _owning_factor(factors, y).to_text()
        observed = corank_at(alg, y, settings)
        if observed != generic.get(tag, observed):
            raise NotNiceError(
                "corank_jump",
                {"root": _root_text(rm.root), "corank": observed, "generic": generic[tag]},
            )
    return roots


def _root_text(root: Root) -> str:
    if isinstance(root, Fraction):
        return f"{root.numerator}/{root.denominator}"
    return root.to_text()


def lambda_differentials(
    alg: LieAlgebra,
    a: Sequence[Fraction],
    x: Sequence[Fraction],
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> List[LambdaDifferential]:
    """``d lam_i = grad s(y) / <a, grad s(y)>`` at ``y = x - lam_i a`` for every root."""
    settings = settings or get_settings()
    s = squarefree_part(fundamental_semiinvariant(alg, settings, seed))
    result = []
    for rm in nice_roots(alg, a, x, seed, settings):
        y = _line_point(x, [-v for v in a], rm.root)
        exact = rm.is_exact
        grad = _gradient_at(s, y, exact)
        denominator = sum((ai * g for ai, g in zip(a, grad)), Fraction(0) if exact else 0j)
        if denominator == 0:
            raise NotNiceError("multiple_root", {"root": _root_text(rm.root)})
        result.append(LambdaDifferential(rm.root, y, tuple(g / denominator for g in grad)))
    return result


def _residual(values: Sequence[Any]) -> float:
    if not values:
        return 0.0
    return float(max(abs(complex(v) if not isinstance(v, Fraction) else v) for v in values))


def _stabilizer_vectors(alg: LieAlgebra, y: Sequence[Any], settings: Settings) -> List[List[Any]]:
    return [list(v) for v in stabilizer(alg, y, settings).basis]


def verify_lambda_differentials(
    alg: LieAlgebra,
    a: PointLike,
    x: Sequence[Any],
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> PropertyReport:
    """Kernel membership of ``d lam_i``, the stabilizer bracket identity and the span equality."""
    settings = settings or get_settings()
    point = _regular(alg, a, settings, seed)
    xs = _exact_point(alg, x, "Point")
    diffs = lambda_differentials(alg, point.a, xs, seed, settings)

    membership: Dict[str, float] = {}
    identity: Dict[str, float] = {}
    for item in diffs:
        key = _root_text(item.root)
        dl = list(item.differential)
        if item.exact:
            image = linalg.matvec(alg.structure_matrix_at(item.point), dl)
            membership[key] = _residual(image)
        else:
            a_y = alg.structure_matrix_numeric(item.point)
            image = a_y @ np.asarray(dl, dtype=complex)
            scale = max(1.0, float(np.max(np.abs(a_y))) * float(np.max(np.abs(dl))))
            membership[key] = float(np.max(np.abs(image))) / scale
        worst = 0.0
        basis = _stabilizer_vectors(alg, item.point, settings)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                br = alg.bracket(basis[i], basis[j])
                start = Fraction(0) if item.exact else 0j
                pairing = sum((ak * bk for ak, bk in zip(point.a, br)), start)
                lhs = [b - pairing * d for b, d in zip(br, dl)]
                value = _residual(lhs)
                if not item.exact:
                    value /= max(1.0, _residual(br), abs(pairing) * _residual(dl))
                worst = max(worst, value)
        identity[key] = worst

    all_exact = all(item.exact for item in diffs)
    ops: linalg.SubspaceOps = (
        linalg.ExactOps() if all_exact else linalg.NumericOps(settings.rank_tol)
    )
    p_g = fundamental_semiinvariant(alg, settings, seed)
    shifts = [p for p in shift_expand(p_g, point.a)[1:] if not p.is_constant]
    shift_grads = [[g.evaluate(xs) for g in p.gradient] for p in shifts]
    lam_grads = [list(item.differential) for item in diffs]
    span_ok = ops.same_span(lam_grads, shift_grads)

    def _ok(values: Dict[str, float], exact_flags: Sequence[bool]) -> bool:
        return all(
            v == 0 if flag else v <= settings.identity_tol
            for v, flag in zip(values.values(), exact_flags)
        )

    flags = [item.exact for item in diffs]
    checks = (
        PropertyCheck(
            "nice_point",
            True,
            {"roots": [_root_text(item.root) for item in diffs]},
        ),
        PropertyCheck("differential_in_kernel", _ok(membership, flags), {"residuals": membership}),
        PropertyCheck("bracket_identity", _ok(identity, flags), {"residuals": identity}),
        PropertyCheck(
            "span_of_differentials",
            span_ok,
            {
                "dim_lambda": ops.rank(lam_grads) if lam_grads else 0,
                "dim_shifts": ops.rank(shift_grads) if shift_grads else 0,
            },
        ),
    )
    report = PropertyReport(checks)
    if not report.all_passed:
        failed = [c.name for c in report.failures()]
        logger.warning("Differential identity failed", algebra=alg.name, failures=failed)
    return report


def _differential_span(
    generators: Sequence[MultiPoly], x: Sequence[Fraction]
) -> List[List[Fraction]]:
    rows = [[g.evaluate(x) for g in p.gradient] for p in generators]
    return linalg.span_basis(rows) if rows else []


def bolsinov_lemma_check(
    alg: LieAlgebra,
    a: PointLike,
    x: Sequence[Any],
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> PropertyCheck:
    """Span of the classical generators' differentials at ``x`` equals the pencil core ``L``."""
    settings = settings or get_settings()
    point = _regular(alg, a, settings, seed)
    xs = _exact_point(alg, x, "Point")
    classical = mf_generators(alg, point, settings, seed)
    if classical.is_empty:
        raise ValidationError("The differential span check needs attached invariants")
    spanned = _differential_span(classical.generators, xs)
    core = core_subspace(FormPair.from_algebra(alg, xs, point.a), seed, settings)
    return PropertyCheck(
        "differentials_span_core",
        linalg.same_span(spanned, linalg.to_matrix(core)) if core or spanned else True,
        {"dim_span": len(spanned), "dim_core": len(core)},
    )


def maximal_isotropy_check(
    alg: LieAlgebra,
    a: PointLike,
    x: Sequence[Any],
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> PropertyCheck:
    """Extended differentials at ``x`` against ``L + span{d lam_i}``.

    The span is maximal isotropic for ``A_a`` exactly when the extended set is complete.
    """
    settings = settings or get_settings()
    point = _regular(alg, a, settings, seed)
    xs = _exact_point(alg, x, "Point")
    extended = extended_generators(alg, point, settings, seed)
    spanned = _differential_span(extended.generators, xs)
    pair = FormPair.from_algebra(alg, xs, point.a)
    core = core_subspace(pair, seed, settings)
    p_g = fundamental_semiinvariant(alg, settings, seed)
    diffs = [] if p_g.is_constant else lambda_differentials(alg, point.a, xs, seed, settings)
    subspace: List[Any] = list(core) + [list(item.differential) for item in diffs]
    exact = all(item.exact for item in diffs)
    ops: linalg.SubspaceOps = linalg.ExactOps() if exact else linalg.NumericOps(settings.rank_tol)
    equal = ops.same_span(spanned, subspace)
    isotropy = isotropy_check(pair, subspace, [INFINITY], settings)
    direct = completeness_direct(alg, extended, settings, seed)
    return PropertyCheck(
        "maximal_isotropy",
        equal and isotropy.isotropic and isotropy.maximal_at_generic == direct.complete,
        {
            "span_equal": equal,
            "isotropic": isotropy.isotropic,
            "maximal": isotropy.maximal_at_generic,
            "complete": direct.complete,
        },
    )


__all__ = [
    "ComponentSummary",
    "LambdaDifferential",
    "SingularSample",
    "Theorem2Verdict",
    "bolsinov_lemma_check",
    "lambda_differentials",
    "maximal_isotropy_check",
    "nice_roots",
    "sample_sing0",
    "theorem2_decide",
    "verify_lambda_differentials",
]
