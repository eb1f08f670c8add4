"""Structure matrix, index, Pfaffians of principal minors and the fundamental semi-invariant."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    EXIT_INTERNAL,
    BaseAppException,
    DimensionMismatchError,
    ValidationError,
)
from app.domain import linalg
from app.domain.liealg import LieAlgebra, is_exact_point, stabilizer
from app.domain.poisson import is_semiinvariant
from app.domain.ratpoly import (
    MultiPoly,
    UniPoly,
    gcd_multivariate,
    random_rational_vector,
    squarefree_part,
    to_fraction,
)
from app.domain.value_objects import (
    IndexCertificate,
    NotSemiInvariant,
    PropertyCheck,
    SingCodim,
)

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class StructureMatrix:
    """``(A_x)_ij = sum_k c_ij^k x_k`` as linear forms."""

    dim: int
    entries: Tuple[Tuple[MultiPoly, ...], ...]

    def __post_init__(self) -> None:
        for i in range(self.dim):
            if not self.entries[i][i].is_zero:
                raise ValidationError("Structure matrix diagonal must vanish")
            for j in range(i + 1, self.dim):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValidationError("Structure matrix must be skew-symmetric")
                if (self.entries[i][j].total_degree or 0) > 1:
                    raise ValidationError("Structure matrix entries must be linear")

    def evaluate(self, x: Sequence[Any]) -> linalg.Matrix:
        if len(x) != self.dim:
            raise DimensionMismatchError(self.dim, len(x), "point")
        return [[entry.evaluate(x) for entry in row] for row in self.entries]

    def evaluate_numeric(self, x: Sequence[complex]) -> np.ndarray:
        return np.array([[entry.evaluate_numeric(x) for entry in row] for row in self.entries])

    def along_line(self, base: Sequence[Any], direction: Sequence[Any]) -> List[List[UniPoly]]:
        """Entries of ``A_{base + lam * direction}`` as polynomials in ``lam``."""
        return [
            [UniPoly.linear(entry.evaluate(base), entry.evaluate(direction)) for entry in row]
            for row in self.entries
        ]


@lru_cache(maxsize=128)
def structure_matrix(alg: LieAlgebra) -> StructureMatrix:
    rows = tuple(
        tuple(alg.bracket_form(i, j) for j in range(alg.dim)) for i in range(alg.dim)
    )
    return StructureMatrix(alg.dim, rows)


def rank_at(alg: LieAlgebra, x: Sequence[Any], settings: Optional[Settings] = None) -> int:
    """Rank of ``A_x``; exact at rational points."""
    if is_exact_point(x):
        return linalg.rank(alg.structure_matrix_at(x))
    settings = settings or get_settings()
    return linalg.numeric_rank(alg.structure_matrix_numeric(x), settings.rank_tol)


def corank_at(alg: LieAlgebra, x: Sequence[Any], settings: Optional[Settings] = None) -> int:
    return alg.dim - rank_at(alg, x, settings)


def _height(heights: Tuple[int, ...], step: int) -> int:
    return heights[min(step, len(heights) - 1)]


@lru_cache(maxsize=256)
def _certify_index(
    alg: LieAlgebra, seed: int, window: int, heights: Tuple[int, ...]
) -> IndexCertificate:
    n = alg.dim
    ceiling = n - n % 2
    best, witness, stable, step = -1, None, 0, 0
    while True:
        rng = np.random.default_rng(seed + step)
        point = random_rational_vector(rng, n, _height(heights, step))
        observed = linalg.rank(alg.structure_matrix_at(point))
        step += 1
        if observed > best:
            best, witness, stable = observed, point, 0
        else:
            stable += 1
        logger.debug("Index sample", algebra=alg.name, step=step, rank=observed)
        if best == ceiling or stable >= window:
            break
    certificate = IndexCertificate(
        dim=n, index=n - best, t=best, witness_points=(witness,), trials=step
    )
    logger.info("Index certified", algebra=alg.name, index=certificate.index, trials=step)
    return certificate


def index(
    alg: LieAlgebra, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> IndexCertificate:
    """Index from the maximal rank of ``A_x`` over random rational points.

    The observed rank is an exact lower bound for the generic rank; it is
    declared stable after ``index_window`` points without an increase.
    """
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    return _certify_index(alg, seed, settings.index_window, tuple(settings.heights))


def _is_zero(value: Any) -> bool:
    flag = getattr(value, "is_zero", None)
    if flag is not None:
        return bool(flag)
    return value == 0


class PfaffianExpander:
    """First-row expansion memoized on index subsets of one skew matrix."""

    def __init__(self, m: Sequence[Sequence[Any]], one: Any) -> None:
        self.m = m
        self.zero = one - one
        self.memo: Dict[Tuple[int, ...], Any] = {(): one}

    def __call__(self, indices: Tuple[int, ...]) -> Any:
        cached = self.memo.get(indices)
        if cached is not None:
            return cached
        if len(indices) % 2:
            return self.zero
        first, rest = indices[0], indices[1:]
        total = self.zero
        row = self.m[first]
        for pos, k in enumerate(rest):
            entry = row[k]
            if _is_zero(entry):
                continue
            minor = self(rest[:pos] + rest[pos + 1 :])
            if _is_zero(minor):
                continue
            term = entry * minor
            total = total + term if pos % 2 == 0 else total - term
        self.memo[indices] = total
        return total


def _unit_for(m: Sequence[Sequence[Any]]) -> Any:
    for row in m:
        for entry in row:
            if isinstance(entry, MultiPoly):
                return MultiPoly.one(entry.num_vars)
            if isinstance(entry, UniPoly):
                return UniPoly.constant(1)
            if isinstance(entry, (complex, np.complexfloating, float)):
                return complex(1)
    return Fraction(1)


def _validate_skew(m: Sequence[Sequence[Any]]) -> None:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValidationError("Pfaffian needs a square matrix")
    if n % 2:
        raise ValidationError("Pfaffian needs an even-size matrix", {"size": n})
    for i in range(n):
        if not _is_zero(m[i][i]):
            raise ValidationError("Skew matrix has a nonzero diagonal entry", {"i": i + 1})
        for j in range(i + 1, n):
            if not _is_zero(m[i][j] + m[j][i]):
                raise ValidationError(
                    "Matrix is not skew-symmetric", {"i": i + 1, "j": j + 1}
                )


def pfaffian(m: Sequence[Sequence[Any]], one: Optional[Any] = None) -> Any:
    """Exact Pfaffian by memoized first-row expansion; ``Pf`` of the empty matrix is ``one``."""
    _validate_skew(m)
    one = _unit_for(m) if one is None else one
    return PfaffianExpander(m, one)(tuple(range(len(m))))


def principal_pfaffians(
    m: Sequence[Sequence[Any]], t: int, one: Any
) -> Iterator[Tuple[Tuple[int, ...], Any]]:
    """Generator of ``(subset, Pf)`` over principal ``t x t`` minors in lexicographic order."""
    expander = PfaffianExpander(m, one)
    for subset in combinations(range(len(m)), t):
        yield subset, expander(subset)


@lru_cache(maxsize=128)
def _fundamental(alg: LieAlgebra, t: int) -> MultiPoly:
    n = alg.dim
    if t == 0:
        return MultiPoly.one(n)
    entries = structure_matrix(alg).entries
    running = MultiPoly.zero(n)
    minors = 0
    for subset, pf in principal_pfaffians(entries, t, MultiPoly.one(n)):
        minors += 1
        running = gcd_multivariate(running, pf)
        if not running.is_zero and running.is_constant:
            break
    logger.debug("Pfaffian GCD finished", algebra=alg.name, minors=minors)
    return running


def fundamental_semiinvariant(
    alg: LieAlgebra, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> MultiPoly:
    """Normalized GCD of the Pfaffians of all principal ``t x t`` minors of ``A_x``."""
    certificate = index(alg, settings, seed)
    p_g = _fundamental(alg, certificate.t)
    if p_g.is_zero:
        raise BaseAppException(
            "Every principal Pfaffian vanished; the index certificate is inconsistent",
            exit_code=EXIT_INTERNAL,
            error_code="INDEX_INCONSISTENT",
        )
    if not p_g.is_constant and isinstance(is_semiinvariant(alg, p_g), NotSemiInvariant):
        raise BaseAppException(
            f"Pfaffian GCD {p_g.to_text()} is not a semi-invariant",
            exit_code=EXIT_INTERNAL,
            error_code="SEMIINVARIANT_CHECK_FAILED",
            details={"p_g": p_g.to_text()},
        )
    logger.info(
        "Fundamental semi-invariant computed",
        algebra=alg.name,
        p_g=p_g.to_text(),
        degree=p_g.total_degree,
    )
    return p_g


def sing0_codim_flag(
    alg: LieAlgebra, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> SingCodim:
    p_g = fundamental_semiinvariant(alg, settings, seed)
    return SingCodim(codim_one=(p_g.total_degree or 0) >= 1, p_g=p_g)


def squarefree_fundamental(
    alg: LieAlgebra, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> MultiPoly:
    return squarefree_part(fundamental_semiinvariant(alg, settings, seed))


def line_pfaffian_gcd(
    alg: LieAlgebra,
    base: Sequence[Any],
    direction: Sequence[Any],
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
) -> UniPoly:
    """Monic GCD in ``lam`` of the principal ``t x t`` Pfaffians of ``A_{base + lam * direction}``.

    Its roots are the parameters where the line meets the singular set; the zero
    polynomial means the whole line is singular.
    """
    t = index(alg, settings, seed).t
    if t == 0:
        return UniPoly.constant(1)
    base = [to_fraction(v) for v in base]
    direction = [to_fraction(v) for v in direction]
    entries = structure_matrix(alg).along_line(base, direction)
    running = UniPoly()
    for _, pf in principal_pfaffians(entries, t, UniPoly.constant(1)):
        running = running.gcd(pf)
        if running.degree == 0:
            break
    return running


def vinberg_check(
    alg: LieAlgebra,
    x: Sequence[Any],
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
) -> PropertyCheck:
    """``ind(g_x) >= ind(g)`` at a rational point."""
    if not is_exact_point(x):
        raise ValidationError("The stabilizer index check needs a rational point")
    settings = settings or get_settings()
    ind_g = index(alg, settings, seed).index
    h = stabilizer(alg, x, settings)
    ind_h = index(h.to_lie_algebra(), settings, seed).index if h.dim else 0
    return PropertyCheck(
        name="vinberg_inequality",
        passed=ind_h >= ind_g,
        witness={"stabilizer_index": ind_h, "index": ind_g, "stabilizer_dim": h.dim},
    )
