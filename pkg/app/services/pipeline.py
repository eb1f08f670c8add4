"""The full report pipeline: index, p_g, generator sets, commutation, completeness, verdict."""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, Optional, Sequence
from uuid import UUID, uuid4

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import ValidationError
from app.core.logging import log_stage
from app.domain import linalg
from app.domain.criterion import theorem2_decide
from app.domain.entities import SingularBranch
from app.domain.liealg import LieAlgebra, validate
from app.domain.poisson import check_pairwise_commute
from app.domain.ratpoly import random_rational_vector
from app.domain.shiftalg import (
    GeneratorSet,
    ShiftPoint,
    completeness_direct,
    extended_generators,
    mf_generators,
)
from app.domain.singular import fundamental_semiinvariant, index, sing0_codim_flag
from app.events import (
    CommutationChecked,
    EventBus,
    EventRecorder,
    GeneratorsPublished,
    IndexCertified,
    SemiInvariantComputed,
    VerdictReached,
    record_all,
)
from app.infrastructure.serialization import verdict_to_dict

logger = structlog.get_logger(__name__)


@contextmanager
def stage(name: str, extra: Optional[Dict[str, Any]] = None) -> Iterator[Dict[str, Any]]:
    """Time a stage; the yielded dict is merged into the stage log entry."""
    details: Dict[str, Any] = dict(extra or {})
    started = time.perf_counter()
    yield details
    log_stage(name, time.perf_counter() - started, details)


def choose_regular_point(
    alg: LieAlgebra, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> ShiftPoint:
    """First random rational point of full generic rank (point ``i`` uses ``seed + i``)."""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    t = index(alg, settings, seed).t
    for step in range(settings.retry_factor * settings.index_window):
        rng = np.random.default_rng(seed + 7 + step)
        point = random_rational_vector(rng, alg.dim, settings.height(step))
        if linalg.rank(alg.structure_matrix_at(point)) == t:
            return ShiftPoint(point, regular=True)
    raise ValidationError("No regular shift point found", {"algebra": alg.name})


def _published(bus: EventBus, run_id: UUID, alg: LieAlgebra, gens: GeneratorSet) -> None:
    bus.publish(
        GeneratorsPublished(
            run_id=run_id, algebra=alg.name, kind=gens.kind.value, count=len(gens), note=gens.note
        )
    )


@dataclass
class ReportPipeline:
    """Runs every stage in order and publishes one event per stage result."""

    settings: Settings = field(default_factory=get_settings)
    bus: EventBus = field(default_factory=EventBus)
    run_id: UUID = field(default_factory=uuid4)
    recorder: EventRecorder = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.recorder = record_all(self.bus)

    def run(
        self,
        alg: LieAlgebra,
        a: Optional[Sequence[Any]] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
        verbose: bool = False,
    ) -> Dict[str, Any]:
        settings = self.settings
        seed = settings.default_seed if seed is None else seed
        logger.info("Report pipeline started", algebra=alg.name, dim=alg.dim, seed=seed)
        self.recorder.clear()

        with stage("validate", {"algebra": alg.name}):
            validate(alg).raise_for_violation()

        with stage("index") as details:
            certificate = index(alg, settings, seed)
            details["index"] = certificate.index
        self.bus.publish(
            IndexCertified(
                run_id=self.run_id,
                algebra=alg.name,
                index=certificate.index,
                trials=certificate.trials,
            )
        )

        with stage("semiinvariant") as details:
            p_g = fundamental_semiinvariant(alg, settings, seed)
            codim = sing0_codim_flag(alg, settings, seed)
            details["p_g"] = p_g.to_text()
        branch = SingularBranch.CODIM_ONE if codim.codim_one else SingularBranch.CODIM_TWO
        self.bus.publish(
            SemiInvariantComputed(
                run_id=self.run_id,
                algebra=alg.name,
                p_g=p_g.to_text(),
                degree=p_g.total_degree or 0,
                branch=branch.value,
            )
        )

        with stage("shift_point"):
            if a is None:
                point = choose_regular_point(alg, settings, seed)
            else:
                point = ShiftPoint.certify(alg, a, settings, seed)

        with stage("generators") as details:
            classical = mf_generators(alg, point, settings, seed)
            extended = extended_generators(alg, point, settings, seed)
            details["classical"] = len(classical)
            details["extended"] = len(extended)
        _published(self.bus, self.run_id, alg, classical)
        _published(self.bus, self.run_id, alg, extended)

        with stage("commute") as details:
            commute = check_pairwise_commute(alg, point.a, extended.generators)
            details["pairs"] = commute.pairs_checked
        self.bus.publish(
            CommutationChecked(
                run_id=self.run_id,
                algebra=alg.name,
                ok=commute.ok,
                pairs_checked=commute.pairs_checked,
            )
        )

        with stage("completeness") as details:
            direct = completeness_direct(alg, extended, settings, seed, samples)
            details["trdeg"] = direct.trdeg

        with stage("verdict"):
            verdict = theorem2_decide(alg, point, samples, seed, settings)
        self.bus.publish(
            VerdictReached(
                run_id=self.run_id,
                algebra=alg.name,
                criterion_complete=verdict.criterion_complete,
                direct_complete=verdict.direct_complete,
                low_confidence=verdict.low_confidence,
            )
        )

        result: Dict[str, Any] = {
            "dim": alg.dim,
            "index": certificate.index,
            "b_g": certificate.b_g,
            "p_g": p_g.to_text(),
            "sing0": codim.label,
            "a": list(point.a),
            "classical": classical,
            "extended": extended,
            "commute": commute,
            "complete": direct.complete,
            "trdeg": direct.trdeg,
            "verdict": verdict_to_dict(verdict, verbose),
        }
        if verbose:
            result["trace"] = self.recorder.trace()
        return result
