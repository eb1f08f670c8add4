"""Argument-shift expansion, Mischenko-Fomenko generator sets, transcendence degree."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    CommutationFailureError,
    DimensionMismatchError,
    IrregularShiftPointError,
)
from app.domain import linalg
from app.domain.entities import GeneratorKind
from app.domain.liealg import LieAlgebra
from app.domain.poisson import check_pairwise_commute
from app.domain.ratpoly import (
    MultiPoly,
    homogeneous_components,
    normalize,
    random_rational_vector,
    to_fraction,
    translate,
)
from app.domain.singular import fundamental_semiinvariant, index
from app.domain.value_objects import CompletenessResult, TrdegEstimate

logger = structlog.get_logger(__name__)

NO_GENERATORS = "no_generators_available"
MISSING_INVARIANTS = "missing_invariants"


@dataclass(frozen=True)
class ShiftPoint:
    """A shift point whose regularity has been checked exactly."""

    a: Tuple[Fraction, ...]
    regular: bool = False

    @classmethod
    def certify(
        cls,
        alg: LieAlgebra,
        a: Sequence[Any],
        settings: Optional[Settings] = None,
        seed: Optional[int] = None,
    ) -> "ShiftPoint":
        """Raise unless ``rank A_a`` equals the generic rank."""
        if len(a) != alg.dim:
            raise DimensionMismatchError(alg.dim, len(a), "shift point")
        point = tuple(to_fraction(v) for v in a)
        t = index(alg, settings, seed).t
        observed = linalg.rank(alg.structure_matrix_at(point))
        if observed != t:
            raise IrregularShiftPointError(observed, t)
        return cls(point, regular=True)

    def __len__(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __getitem__(self, i: int) -> Fraction:
        return self.a[i]


PointLike = Union[ShiftPoint, Sequence[Any]]


def _coords(a: PointLike) -> Tuple[Fraction, ...]:
    if isinstance(a, ShiftPoint):
        return a.a
    return tuple(to_fraction(v) for v in a)


@dataclass(frozen=True)
class Provenance:
    """Which polynomial a generator was shifted from and at which power of ``lam``."""

    source: str
    power: int


@dataclass(frozen=True)
class GeneratorSet:
    kind: GeneratorKind
    generators: Tuple[MultiPoly, ...]
    provenance: Tuple[Provenance, ...]
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if len(self.generators) != len(self.provenance):
            raise ValueError("Every generator needs a provenance tag")
        if any(g.is_constant for g in self.generators):
            raise ValueError("Constant generators are never stored")

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def is_empty(self) -> bool:
        return not self.generators


def shift_expand(f: MultiPoly, a: PointLike) -> List[MultiPoly]:
    """Coefficients ``f_0 .. f_deg`` of ``f(a + lam x) = sum_j f_j(x) lam^j``."""
    point = _coords(a)
    if len(point) != f.num_vars:
        raise DimensionMismatchError(f.num_vars, len(point), "shift point")
    return homogeneous_components(translate(f, point))


def _publish(
    alg: LieAlgebra,
    a: ShiftPoint,
    kind: GeneratorKind,
    sources: Sequence[MultiPoly],
    note: Optional[str] = None,
    seed_with: Optional[GeneratorSet] = None,
) -> GeneratorSet:
    generators: List[MultiPoly] = list(seed_with.generators) if seed_with else []
    provenance: List[Provenance] = list(seed_with.provenance) if seed_with else []
    seen = {normalize(g) for g in generators}
    for source in sources:
        for power, coefficient in enumerate(shift_expand(source, a)):
            if coefficient.is_constant:
                continue
            key = normalize(coefficient)
            if key in seen:
                continue
            seen.add(key)
            generators.append(coefficient)
            provenance.append(Provenance(source.to_text(), power))
    result = check_pairwise_commute(alg, a.a, generators)
    if not result.ok:
        w = result.witness
        raise CommutationFailureError(w.left, w.right, w.bracket, w.kind)
    if not generators and note is None:
        note = NO_GENERATORS
    logger.info(
        "Generator set published",
        algebra=alg.name,
        kind=kind.value,
        generators=len(generators),
        note=note,
    )
    return GeneratorSet(kind, tuple(generators), tuple(provenance), note)


def _require_regular(
    alg: LieAlgebra, a: PointLike, settings: Optional[Settings], seed: Optional[int] = None
) -> ShiftPoint:
    if isinstance(a, ShiftPoint) and a.regular:
        return a
    return ShiftPoint.certify(alg, _coords(a), settings, seed)


def mf_generators(
    alg: LieAlgebra, a: PointLike, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> GeneratorSet:
    """Non-constant shift coefficients of the attached invariants, certified commuting."""
    point = _require_regular(alg, a, settings, seed)
    note = None
    if not alg.invariants:
        logger.warning("No invariants attached; classical set is empty", algebra=alg.name)
        note = MISSING_INVARIANTS
    return _publish(alg, point, GeneratorKind.CLASSICAL, alg.invariants, note)


def extended_generators(
    alg: LieAlgebra, a: PointLike, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> GeneratorSet:
    """Classical generators plus the shifts of the fundamental semi-invariant."""
    point = _require_regular(alg, a, settings, seed)
    classical = mf_generators(alg, point, settings, seed)
    p_g = fundamental_semiinvariant(alg, settings, seed)
    return _publish(
        alg,
        point,
        GeneratorKind.EXTENDED,
        [p_g],
        note=None,
        seed_with=classical,
    )


def jacobian_rank(generators: Sequence[MultiPoly], point: Sequence[Fraction]) -> int:
    rows = [[partial.evaluate(point) for partial in g.gradient] for g in generators]
    return linalg.rank(rows) if rows else 0


def trdeg_estimate(
    gens: Union[GeneratorSet, Sequence[MultiPoly]],
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> TrdegEstimate:
    """Maximal exact Jacobian rank over random rational points (point ``i`` uses ``seed + i``)."""
    settings = settings or get_settings()
    samples = settings.default_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed
    generators = list(gens.generators if isinstance(gens, GeneratorSet) else gens)
    if not generators:
        return TrdegEstimate(trdeg=0, witness_point=None, points_tried=0)
    n = generators[0].num_vars
    ceiling = min(len(generators), n)
    best, witness, stable, tried = -1, None, 0, 0
    for step in range(max(samples, 1)):
        rng = np.random.default_rng(seed + step)
        point = random_rational_vector(rng, n, settings.height(step))
        observed = jacobian_rank(generators, point)
        tried += 1
        if observed > best:
            best, witness, stable = observed, point, 0
        else:
            stable += 1
        if best == ceiling or stable >= settings.trdeg_window:
            break
    logger.debug("Transcendence degree estimated", trdeg=best, points=tried)
    return TrdegEstimate(trdeg=best, witness_point=witness, points_tried=tried)


def completeness_direct(
    alg: LieAlgebra,
    gens: GeneratorSet,
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
) -> CompletenessResult:
    """Compare the estimated transcendence degree with ``b(g) = (dim + ind) / 2``."""
    b_g = index(alg, settings, seed).b_g
    estimate = trdeg_estimate(gens, samples=samples, seed=seed, settings=settings)
    return CompletenessResult(complete=estimate.trdeg == b_g, trdeg=estimate.trdeg, b_g=b_g)
