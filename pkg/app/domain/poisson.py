"""Lie-Poisson and frozen-argument brackets, and the semi-invariant calculus."""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import structlog

from app.core.exceptions import CharacterViolationError, DimensionMismatchError, ValidationError
from app.domain.liealg import LieAlgebra
from app.domain.ratpoly import MultiPoly, homogeneous_components, normalize, to_fraction, translate
from app.domain.value_objects import (
    Character,
    CommuteCheckResult,
    CommuteWitness,
    NotSemiInvariant,
)

logger = structlog.get_logger(__name__)


def _check_dims(alg: LieAlgebra, *polys: MultiPoly) -> None:
    for p in polys:
        if p.num_vars != alg.dim:
            raise DimensionMismatchError(alg.dim, p.num_vars, "polynomial")


def _point(alg: LieAlgebra, a: Sequence[Any]) -> Tuple[Fraction, ...]:
    if len(a) != alg.dim:
        raise DimensionMismatchError(alg.dim, len(a), "shift point")
    return tuple(to_fraction(v) for v in a)


def lie_poisson_bracket(alg: LieAlgebra, f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """``{f, g}(x) = sum_{i<j,k} c_ij^k x_k (f_i g_j - f_j g_i)``."""
    _check_dims(alg, f, g)
    total = MultiPoly.zero(alg.dim)
    if f.is_constant or g.is_constant:
        return total
    df, dg = f.gradient, g.gradient
    for (i, j) in sorted({(i, j) for i, j, _ in alg.structure}):
        cross = df[i] * dg[j] - df[j] * dg[i]
        if not cross.is_zero:
            total = total + alg.bracket_form(i, j) * cross
    return total


def frozen_bracket(alg: LieAlgebra, a: Sequence[Any], f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """``{f, g}_a(x) = <a, [df(x), dg(x)]>``."""
    _check_dims(alg, f, g)
    point = _point(alg, a)
    total = MultiPoly.zero(alg.dim)
    if f.is_constant or g.is_constant:
        return total
    df, dg = f.gradient, g.gradient
    for (i, j) in sorted({(i, j) for i, j, _ in alg.structure}):
        weight = alg.pairing(point, i, j)
        if weight:
            cross = df[i] * dg[j] - df[j] * dg[i]
            total = total + cross * weight
    return total


def is_semiinvariant(alg: LieAlgebra, f: MultiPoly) -> Union[Character, NotSemiInvariant]:
    """Exact-divide ``{f, x_i}`` by ``f`` for every coordinate.

    Constant quotients ``c_i`` give the character, which must vanish on every
    bracket ``[e_i, e_j]``.
    """
    _check_dims(alg, f)
    if f.is_zero:
        raise ValidationError("The zero polynomial is not a semi-invariant candidate")
    values: List[Fraction] = []
    for i in range(alg.dim):
        bracket = alg.coordinate_bracket(f, i)
        quotient = bracket.exact_divide(f)
        if quotient is None:
            return NotSemiInvariant(i + 1, bracket.to_text())
        if not quotient.is_constant:
            return NotSemiInvariant(i + 1, bracket.to_text(), reason="non_constant_quotient")
        values.append(quotient.constant_value)
    for (i, j, _) in alg.structure:
        on_bracket = sum(
            (c * values[k] for k, c in alg.bracket_terms(i, j).items()), Fraction(0)
        )
        if on_bracket:
            raise CharacterViolationError(f.to_text(), (i + 1, j + 1))
    return Character(tuple(values))


def check_pairwise_commute(
    alg: LieAlgebra, a: Sequence[Any], polys: Sequence[MultiPoly]
) -> CommuteCheckResult:
    """Both brackets vanish on every pair; the first failing pair in order is the witness."""
    point = _point(alg, a)
    checked = 0
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            checked += 1
            for kind, bracket in (
                ("lie_poisson", lie_poisson_bracket(alg, polys[i], polys[j])),
                ("frozen", frozen_bracket(alg, point, polys[i], polys[j])),
            ):
                if not bracket.is_zero:
                    witness = CommuteWitness(
                        polys[i].to_text(), polys[j].to_text(), bracket.to_text(), kind
                    )
                    logger.warning(
                        "Commutation witness found",
                        left=witness.left,
                        right=witness.right,
                        kind=kind,
                    )
                    return CommuteCheckResult(ok=False, pairs_checked=checked, witness=witness)
    logger.debug("Pairwise commutation verified", generators=len(polys), pairs=checked)
    return CommuteCheckResult(ok=True, pairs_checked=checked)


def detect_semiinvariants(
    alg: LieAlgebra, candidates: Sequence[MultiPoly]
) -> List[Tuple[MultiPoly, Character]]:
    """Non-constant candidates that are semi-invariants, deduplicated up to scalars."""
    found: List[Tuple[MultiPoly, Character]] = []
    seen = set()
    for candidate in candidates:
        if candidate.is_zero or candidate.is_constant:
            continue
        key = normalize(candidate)
        if key in seen:
            continue
        seen.add(key)
        result = is_semiinvariant(alg, candidate)
        if isinstance(result, Character):
            found.append((candidate, result))
    return found


def shifted(f: MultiPoly, a: Sequence[Any], lam: Optional[Any] = 1) -> MultiPoly:
    """``x -> f(a + lam * x)``."""
    if len(a) != f.num_vars:
        raise DimensionMismatchError(f.num_vars, len(a), "shift point")
    lam = to_fraction(lam)
    total = MultiPoly.zero(f.num_vars)
    for degree, component in enumerate(homogeneous_components(translate(f, a))):
        if not component.is_zero:
            total = total + component * lam**degree
    return total
