"""Pairs of skew forms ``P_lam = P0 - lam * Pinf`` at one point.

Minimal corank ``r``, exceptional spectrum, the core subspace ``L`` (sum of
generic kernels), the recursion operator ``Pinf^-1 P0`` on ``L^perp / L`` and
the isotropy properties relating them. Exact pairs stay exact except at
irrational spectrum values, which are handled in floating point.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import DimensionMismatchError, InfinityInSpectrumError, ValidationError
from app.domain import linalg
from app.domain.entities import ScalarKind
from app.domain.liealg import LieAlgebra, is_exact_point
from app.domain.ratpoly import (
    NumericRoot,
    Root,
    UniPoly,
    random_rational_vector,
    to_fraction,
    univariate_distinct_roots,
)
from app.domain.singular import pfaffian, principal_pfaffians
from app.domain.value_objects import PropertyCheck, PropertyReport

logger = structlog.get_logger(__name__)

INFINITY = "inf"
Lam = Union[Fraction, NumericRoot, complex, str]

@dataclass(frozen=True, eq=False)
class FormPair:
    """Two skew forms on the same space; ``kind`` fixes the arithmetic."""

    p0: Any
    pinf: Any
    kind: ScalarKind = ScalarKind.EXACT

    def __post_init__(self) -> None:
        convert = linalg.to_matrix if self.kind.is_exact() else linalg.to_complex_array
        p0, pinf = convert(self.p0), convert(self.pinf)
        n = len(p0)
        for m, label in ((p0, "P0"), (pinf, "Pinf")):
            if len(m) != n or any(len(row) != n for row in m):
                raise DimensionMismatchError(n, len(m), label)
            for i in range(n):
                for j in range(i, n):
                    if not _negligible(m[i][j] + m[j][i], self.kind):
                        raise ValidationError(
                            f"{label} is not skew-symmetric", {"i": i + 1, "j": j + 1}
                        )
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "pinf", pinf)

    @property
    def dim(self) -> int:
        return len(self.p0)

    @classmethod
    def from_algebra(cls, alg: LieAlgebra, x: Sequence[Any], a: Sequence[Any]) -> "FormPair":
        """``P0 = A_x`` and ``Pinf = A_a``."""
        if is_exact_point(x) and is_exact_point(a):
            return cls(alg.structure_matrix_at(x), alg.structure_matrix_at(a), ScalarKind.EXACT)
        return cls(
            alg.structure_matrix_numeric(x), alg.structure_matrix_numeric(a), ScalarKind.NUMERIC
        )

    @cached_property
    def numeric_view(self) -> "FormPair":
        if not self.kind.is_exact():
            return self
        return FormPair(
            linalg.to_complex_array(self.p0), linalg.to_complex_array(self.pinf), ScalarKind.NUMERIC
        )

    def matrix(self, lam: Lam) -> Any:
        if lam == INFINITY:
            return self.pinf
        if self.kind.is_exact():
            value = to_fraction(lam)
            return [[a - value * b for a, b in zip(ra, rb)] for ra, rb in zip(self.p0, self.pinf)]
        return self.p0 - _as_complex(lam) * self.pinf


def _negligible(value: Any, kind: ScalarKind) -> bool:
    if kind.is_exact():
        return value == 0
    return abs(value) <= 1e-12


def _as_complex(lam: Lam) -> complex:
    if isinstance(lam, NumericRoot):
        return lam.value
    if isinstance(lam, Fraction):
        return complex(float(lam))
    return complex(lam)


def _is_rational(lam: Lam) -> bool:
    return isinstance(lam, (int, Fraction)) and not isinstance(lam, bool)


def _context(pair: FormPair, lam: Lam, settings: Settings) -> Tuple[linalg.SubspaceOps, Any]:
    """Subspace arithmetic and ``P_lam`` in it."""
    if pair.kind.is_exact() and (lam == INFINITY or _is_rational(lam)):
        return linalg.ExactOps(), pair.matrix(lam)
    return linalg.NumericOps(settings.rank_tol), pair.numeric_view.matrix(lam)


def _base_ops(pair: FormPair, settings: Settings) -> linalg.SubspaceOps:
    return linalg.ExactOps() if pair.kind.is_exact() else linalg.NumericOps(settings.rank_tol)


def corank(pair: FormPair, lam: Lam, settings: Optional[Settings] = None) -> int:
    settings = settings or get_settings()
    ops, m = _context(pair, lam, settings)
    return pair.dim - ops.rank(m)


def kernel_at(pair: FormPair, lam: Lam, settings: Optional[Settings] = None) -> List[Any]:
    settings = settings or get_settings()
    ops, m = _context(pair, lam, settings)
    return ops.kernel(m, pair.dim)


def _random_lambda(seed: int, step: int, settings: Settings) -> Fraction:
    rng = np.random.default_rng(seed + step)
    return random_rational_vector(rng, 1, settings.height(step))[0]


def _generic_lambdas(
    pair: FormPair, count: int, r: int, seed: int, settings: Settings
) -> List[Fraction]:
    """``count`` random rationals with corank ``r`` (outside the spectrum)."""
    picked: List[Fraction] = []
    step = 0
    budget = settings.retry_factor * max(count, 1)
    while len(picked) < count and step < budget:
        lam = _random_lambda(seed + 7919, step, settings)
        step += 1
        if lam not in picked and corank(pair, lam, settings) == r:
            picked.append(lam)
    return picked


def min_corank(
    pair: FormPair,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> int:
    """Minimal corank over random ``lam`` and ``lam = inf``.

    The minimum is declared stable after ``corank_window`` samples without a decrease.
    """
    settings = settings or get_settings()
    samples = settings.default_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed
    floor = pair.dim % 2
    best = corank(pair, INFINITY, settings)
    stable = 0
    for step in range(samples):
        if best == floor or stable >= settings.corank_window:
            break
        observed = corank(pair, _random_lambda(seed, step, settings), settings)
        if observed < best:
            best, stable = observed, 0
        else:
            stable += 1
    return best


@dataclass(frozen=True)
class SpectrumEntry:
    value: Union[Fraction, NumericRoot, str]
    corank: int

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY


def pencil_pfaffian_gcd(pair: FormPair, t: int) -> UniPoly:
    """Monic GCD in ``lam`` of the principal ``t x t`` Pfaffians of ``P0 - lam * Pinf``."""
    if not pair.kind.is_exact():
        raise ValidationError("Pfaffian GCD needs an exact pair")
    if t == 0:
        return UniPoly.constant(1)
    entries = [
        [UniPoly.linear(a, -b) for a, b in zip(ra, rb)] for ra, rb in zip(pair.p0, pair.pinf)
    ]
    running = UniPoly()
    for _, pf in principal_pfaffians(entries, t, UniPoly.constant(1)):
        running = running.gcd(pf)
        if running.degree == 0:
            break
    return running


def _candidates_from_quotient(
    pair: FormPair, r: int, seed: int, settings: Settings
) -> List[NumericRoot]:
    """Finite exceptional values ``mu0 + 1 / nu``, ``nu`` an eigenvalue of ``B_mu0^-1 B_inf``."""
    numeric = pair.numeric_view
    ops = linalg.NumericOps(settings.rank_tol)
    core = core_subspace(numeric, seed=seed, settings=settings, r=r)
    lperp = _lperp(numeric, core, ops)
    complement = _complement(ops, core, lperp)
    if not complement:
        return []
    generic = _generic_lambdas(numeric, 1, r, seed, settings)
    if not generic:
        raise ValidationError("No generic lambda found for the quotient eigenproblem")
    mu0 = generic[0]
    b_mu = ops.gram(complement, numeric.matrix(mu0), complement)
    b_inf = ops.gram(complement, numeric.pinf, complement)
    nus = np.linalg.eigvals(np.linalg.solve(b_mu, b_inf))
    values = []
    for nu in nus:
        if abs(nu) > settings.cluster_tol:
            values.append(complex(float(mu0)) + 1 / complex(nu))
    return [NumericRoot(v, 0.0) for v in _cluster(values, settings.cluster_tol)]


def _cluster(values: Sequence[complex], tol: float) -> List[complex]:
    centers: List[List[complex]] = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for group in centers:
            if abs(np.mean(group) - v) <= tol * max(1.0, abs(v)):
                group.append(v)
                break
        else:
            centers.append([v])
    return [complex(np.mean(group)) for group in centers]


def spectrum(
    pair: FormPair,
    hint: Optional[UniPoly] = None,
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
) -> List[SpectrumEntry]:
    """Exceptional ``lam`` (corank above ``r``), finite values first, then ``inf``.

    Candidates are the distinct roots of ``hint`` when given, otherwise the
    roots of the Pfaffian GCD of the pencil (exact pairs) or of the quotient
    eigenproblem (numeric pairs); each is confirmed by its corank.
    """
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings)
    candidates: List[Root] = []
    if hint is not None:
        if hint.is_zero:
            raise ValidationError("The spectrum hint must be a nonzero polynomial")
        if hint.degree:
            candidates = [rm.root for rm in univariate_distinct_roots(hint, settings)]
    elif pair.kind.is_exact():
        gcd = pencil_pfaffian_gcd(pair, pair.dim - r)
        if not gcd.is_zero and gcd.degree:
            candidates = [rm.root for rm in univariate_distinct_roots(gcd, settings)]
    else:
        candidates = _candidates_from_quotient(pair, r, seed, settings)
    entries = []
    for root in candidates:
        observed = corank(pair, root, settings)
        if observed > r:
            entries.append(SpectrumEntry(root, observed))
    infinite = corank(pair, INFINITY, settings)
    if infinite > r:
        entries.append(SpectrumEntry(INFINITY, infinite))
    logger.debug("Spectrum computed", r=r, size=len(entries))
    return entries


def core_subspace(
    pair: FormPair,
    seed: Optional[int] = None,
    settings: Optional[Settings] = None,
    r: Optional[int] = None,
) -> List[Any]:
    """Basis of ``L``: kernels at generic ``lam`` until ``core_window`` steps add nothing."""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings) if r is None else r
    if r == 0:
        return []
    ops = _base_ops(pair, settings)
    basis: List[Any] = []
    stable, step = 0, 0
    budget = settings.retry_factor * settings.core_window * (pair.dim + 1)
    while stable < settings.core_window and step < budget:
        lam = _random_lambda(seed + 104729, step, settings)
        step += 1
        kernel = kernel_at(pair, lam, settings)
        if len(kernel) != r:
            continue
        grown = ops.span(list(basis) + list(kernel))
        if len(grown) > len(basis):
            basis, stable = grown, 0
        else:
            stable += 1
    return basis


def _row(ops: linalg.SubspaceOps, v: Sequence[Any], m: Any) -> List[Any]:
    """``v^T m`` as a row."""
    if ops.exact:
        return [sum((v[i] * m[i][j] for i in range(len(v))), Fraction(0)) for j in range(len(m))]
    return list(linalg.to_complex_array([list(v)])[0] @ linalg.to_complex_array(m))


def _orthogonal(
    ops: linalg.SubspaceOps, vectors: Sequence[Any], matrices: Sequence[Any], n: int
) -> List[Any]:
    rows = [_row(ops, v, m) for v in vectors for m in matrices]
    return ops.kernel(rows, n) if rows else ops.kernel([], n)


def _lperp(pair: FormPair, core: Sequence[Any], ops: linalg.SubspaceOps) -> List[Any]:
    """``{xi : P0(xi, L) = Pinf(xi, L) = 0}``."""
    return _orthogonal(ops, core, [pair.p0, pair.pinf], pair.dim)


def _complement(ops: linalg.SubspaceOps, sub: Sequence[Any], ambient: Sequence[Any]) -> List[Any]:
    chosen = list(sub)
    current = ops.rank(chosen) if chosen else 0
    extra: List[Any] = []
    for w in ambient:
        r = ops.rank(chosen + extra + [w])
        if r > current:
            extra.append(w)
            current = r
    return extra


@dataclass(frozen=True)
class Eigendata:
    value: Root
    algebraic: int
    geometric: int

    @property
    def is_semisimple(self) -> bool:
        return self.algebraic == self.geometric


@dataclass(frozen=True, eq=False)
class RecursionOperator:
    """``R`` on ``L^perp / L`` written in the basis ``complement``."""

    core: Tuple[Any, ...]
    lperp: Tuple[Any, ...]
    complement: Tuple[Any, ...]
    matrix: Any
    eigen: Tuple[Eigendata, ...]
    lperp_independent: bool
    kind: ScalarKind

    @property
    def diagonalizable(self) -> bool:
        return all(e.is_semisimple for e in self.eigen)

    @property
    def quotient_dim(self) -> int:
        return len(self.complement)

    def lift(self, coords: Sequence[Any]) -> List[Any]:
        """Vector of ``V`` represented by ``coords`` in the complement basis."""
        n = len(self.lperp[0]) if self.lperp else 0
        return [sum((c * v[i] for c, v in zip(coords, self.complement)), 0) for i in range(n)]


def _exact_eigen(
    r_matrix: linalg.Matrix, b0: linalg.Matrix, binf: linalg.Matrix, settings: Settings
) -> List[Eigendata]:
    m = len(r_matrix)
    if m == 0:
        return []
    pencil = [[UniPoly.linear(a, -b) for a, b in zip(ra, rb)] for ra, rb in zip(b0, binf)]
    polynomial = pfaffian(pencil, UniPoly.constant(1))
    eigen = []
    numeric_r = linalg.to_complex_array(r_matrix)
    for rm in univariate_distinct_roots(polynomial, settings):
        if rm.is_exact:
            shifted = [
                [e - (rm.root if i == j else 0) for j, e in enumerate(row)]
                for i, row in enumerate(r_matrix)
            ]
            geometric = m - linalg.rank(shifted)
        else:
            shifted = numeric_r - rm.numeric * np.eye(m)
            geometric = m - linalg.numeric_rank(shifted, settings.rank_tol)
        eigen.append(Eigendata(rm.root, 2 * rm.multiplicity, geometric))
    return eigen


def _numeric_eigen(r_matrix: np.ndarray, settings: Settings) -> List[Eigendata]:
    m = r_matrix.shape[0]
    if m == 0:
        return []
    values = [complex(v) for v in np.linalg.eigvals(r_matrix)]
    eigen = []
    tol = settings.cluster_tol
    for center in _cluster(values, tol):
        radius = tol * max(1.0, abs(center))
        algebraic = sum(1 for v in values if abs(v - center) <= radius)
        shifted = r_matrix - center * np.eye(m)
        geometric = m - linalg.numeric_rank(shifted, max(settings.rank_tol, tol))
        eigen.append(Eigendata(NumericRoot(center, 0.0), algebraic, geometric))
    return eigen


def recursion_operator(
    pair: FormPair,
    core: Optional[Sequence[Any]] = None,
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
    shuffle_seed: Optional[int] = None,
) -> RecursionOperator:
    """``R = Pinf^-1 P0`` on ``L^perp / L`` with eigenvalues and multiplicities.

    ``shuffle_seed`` replaces the ``L^perp`` basis by random combinations before
    the complement is chosen, giving a different complement of ``L``.
    """
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings)
    infinite = corank(pair, INFINITY, settings)
    if infinite > r:
        raise InfinityInSpectrumError(infinite, r)
    ops = _base_ops(pair, settings)
    core = list(core_subspace(pair, seed, settings, r) if core is None else core)
    lperp = _lperp(pair, core, ops)
    independent = all(
        ops.same_span(_orthogonal(ops, core, [pair.matrix(lam)], pair.dim), lperp)
        for lam in _generic_lambdas(pair, 3, r, seed, settings)
    )
    if not independent:
        logger.warning("L-perp depends on lambda", dim=pair.dim)
    ambient = lperp
    if shuffle_seed is not None and lperp:
        rng = np.random.default_rng(shuffle_seed)
        mixes = [random_rational_vector(rng, len(lperp), 10) for _ in lperp]
        if ops.exact:
            ambient = [
                [sum((c * v[i] for c, v in zip(mix, lperp)), Fraction(0)) for i in range(pair.dim)]
                for mix in mixes
            ]
        else:
            basis = linalg.to_complex_array([list(v) for v in lperp])
            ambient = [np.array([float(c) for c in mix]) @ basis for mix in mixes]
    complement = _complement(ops, core, ambient)
    b0 = ops.gram(complement, pair.p0, complement)
    binf = ops.gram(complement, pair.pinf, complement)
    if ops.exact:
        matrix = linalg.matmul(linalg.inverse(binf), b0) if complement else []
        eigen = _exact_eigen(matrix, b0, binf, settings)
    else:
        matrix = np.linalg.solve(binf, b0) if complement else np.zeros((0, 0), dtype=complex)
        eigen = _numeric_eigen(matrix, settings)
    operator = RecursionOperator(
        core=tuple(core),
        lperp=tuple(lperp),
        complement=tuple(complement),
        matrix=matrix,
        eigen=tuple(eigen),
        lperp_independent=independent,
        kind=pair.kind,
    )
    logger.debug(
        "Recursion operator built",
        quotient_dim=operator.quotient_dim,
        eigenvalues=len(eigen),
        diagonalizable=operator.diagonalizable,
    )
    return operator


def _values_match(left: Lam, right: Lam, tol: float) -> bool:
    if left == INFINITY or right == INFINITY:
        return left == right
    if _is_rational(left) and _is_rational(right):
        return left == right
    a, b = _as_complex(left), _as_complex(right)
    return abs(a - b) <= tol * max(1.0, abs(a))


def _kernel_meets(ops: linalg.SubspaceOps, kernel: List[Any], core: Sequence[Any]) -> List[Any]:
    return ops.intersect(kernel, list(core)) if kernel and core else []


def _restricted_kernel(ops: linalg.SubspaceOps, kernel: List[Any], form: Any) -> List[Any]:
    """``Ker(P_alpha | K)`` as vectors of ``V``."""
    if not kernel:
        return []
    gram = ops.gram(kernel, form, kernel)
    coeffs = ops.kernel(gram, len(kernel))
    if ops.exact:
        n = len(kernel[0])
        return [
            [sum((c * k[i] for c, k in zip(cs, kernel)), Fraction(0)) for i in range(n)]
            for cs in coeffs
        ]
    basis = linalg.to_complex_array([list(k) for k in kernel])
    return [np.asarray(cs) @ basis for cs in coeffs]


def _exceptional(pair: FormPair, settings: Settings, seed: int) -> List[SpectrumEntry]:
    return spectrum(pair, settings=settings, seed=seed)


def verify_la2(
    pair: FormPair, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> PropertyReport:
    """The five properties of ``L`` at five generic ``lam`` and every exceptional one."""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings)
    core = core_subspace(pair, seed, settings, r)
    ops = _base_ops(pair, settings)
    lperp = _lperp(pair, core, ops)
    complement = _complement(ops, core, lperp)
    samples = _generic_lambdas(pair, 5, r, seed, settings)
    exceptional = [entry.value for entry in _exceptional(pair, settings, seed)]

    isotropic_fail = [
        str(lam)
        for lam in samples + [INFINITY]
        if core and not ops.is_zero(ops.gram(core, pair.matrix(lam), core))
    ]
    independent_fail = [
        str(lam)
        for lam in samples
        if not ops.same_span(_orthogonal(ops, core, [pair.matrix(lam)], pair.dim), lperp)
    ]
    nondegenerate_fail = [
        str(lam)
        for lam in samples
        if complement
        and ops.rank(ops.gram(complement, pair.matrix(lam), complement)) != len(complement)
    ]
    meet_fail: List[str] = []
    contain_fail: List[str] = []
    alphas: List[Lam] = (samples[:1] or []) + [INFINITY]
    for lam in list(samples) + exceptional:
        lam_ops, m = _context(pair, lam, settings)
        kernel = lam_ops.kernel(m, pair.dim)
        met = _kernel_meets(lam_ops, kernel, core)
        if len(met) != r:
            meet_fail.append(_lam_text(lam))
        for alpha in alphas:
            if alpha == lam:
                continue
            form = pair.matrix(alpha) if lam_ops.exact else pair.numeric_view.matrix(alpha)
            restricted = _restricted_kernel(lam_ops, kernel, form)
            if any(not lam_ops.contains(restricted, v) for v in met):
                contain_fail.append(f"{_lam_text(lam)}|{_lam_text(alpha)}")
    checks = (
        PropertyCheck("core_isotropic", not isotropic_fail, _fail_witness(isotropic_fail)),
        PropertyCheck("lperp_independent", not independent_fail, _fail_witness(independent_fail)),
        PropertyCheck(
            "nondegenerate_on_quotient", not nondegenerate_fail, _fail_witness(nondegenerate_fail)
        ),
        PropertyCheck("kernel_meets_core_in_r", not meet_fail, _fail_witness(meet_fail)),
        PropertyCheck(
            "restricted_kernel_contains_core", not contain_fail, _fail_witness(contain_fail)
        ),
    )
    return PropertyReport(checks)


def _fail_witness(failures: List[str]) -> Dict[str, Any]:
    return {"failed_at": failures} if failures else {}


def _lam_text(lam: Lam) -> str:
    if isinstance(lam, Fraction):
        return f"{lam.numerator}/{lam.denominator}"
    if isinstance(lam, NumericRoot):
        return lam.to_text()
    return str(lam)


@dataclass(frozen=True)
class IsotropyResult:
    isotropic: bool
    maximal_at_generic: bool
    dimension: int
    orthogonal_dimension: int


def isotropy_check(
    pair: FormPair,
    subspace: Sequence[Any],
    lam_samples: Sequence[Lam],
    settings: Optional[Settings] = None,
) -> IsotropyResult:
    """Isotropy of ``U`` for every sampled ``lam``; maximality at the first sample."""
    settings = settings or get_settings()
    if not lam_samples:
        raise ValidationError("isotropy_check needs at least one lambda sample")
    numeric_u = any(not isinstance(e, (int, Fraction)) for v in subspace for e in v)
    isotropic = True
    for lam in lam_samples:
        ops, m = _context(pair, lam, settings)
        if numeric_u and ops.exact:
            ops, m = linalg.NumericOps(settings.rank_tol), pair.numeric_view.matrix(lam)
        if subspace and not ops.is_zero(ops.gram(subspace, m, subspace)):
            isotropic = False
            break
    ops, m = _context(pair, lam_samples[0], settings)
    if numeric_u and ops.exact:
        ops, m = linalg.NumericOps(settings.rank_tol), pair.numeric_view.matrix(lam_samples[0])
    dim_u = ops.rank(list(subspace)) if subspace else 0
    orthogonal = _orthogonal(ops, subspace, [m], pair.dim) if subspace else ops.kernel([], pair.dim)
    maximal = isotropic and len(orthogonal) == dim_u
    return IsotropyResult(isotropic, maximal, dim_u, len(orthogonal))


def la3_report(
    pair: FormPair, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> PropertyReport:
    """Spectrum, eigenspaces, orthogonality and the diagonalizability criterion of ``R``."""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    operator = recursion_operator(pair, settings=settings, seed=seed)
    r = min_corank(pair, seed=seed, settings=settings)
    finite = [e for e in _exceptional(pair, settings, seed) if not e.is_infinite]
    eigen_values = [e.value for e in operator.eigen]
    tol = settings.cluster_tol
    spectrum_ok = len(eigen_values) == len(finite) and all(
        any(_values_match(v, entry.value, tol) for v in eigen_values) for entry in finite
    )
    multiplicity_ok = all(e.algebraic >= 2 for e in operator.eigen)
    eigenspaces: List[Tuple[Eigendata, List[Any], linalg.SubspaceOps]] = []
    match_fail: List[str] = []
    for e in operator.eigen:
        ops, space = _eigenspace(operator, e, settings)
        eigenspaces.append((e, space, ops))
        kernel = ops.kernel(_pencil_for(pair, e.value, ops), pair.dim)
        if not ops.same_span(space + list(operator.core), kernel + list(operator.core)):
            match_fail.append(_lam_text(e.value))
    orth_fail: List[str] = []
    samples = _generic_lambdas(pair, 3, r, seed, settings)
    for i in range(len(eigenspaces)):
        for j in range(i + 1, len(eigenspaces)):
            (e1, s1, o1), (e2, s2, o2) = eigenspaces[i], eigenspaces[j]
            ops = o1 if o1.exact and o2.exact else linalg.NumericOps(settings.rank_tol)
            for lam in samples:
                if s1 and s2 and not ops.is_zero(ops.gram(s1, _pencil_for(pair, lam, ops), s2)):
                    tag = f"{_lam_text(e1.value)}~{_lam_text(e2.value)}"
                    orth_fail.append(f"{tag}@{_lam_text(lam)}")
    criterion = diagonalizable_by_kernels(pair, r, finite, settings)
    checks = (
        PropertyCheck(
            "spectrum_matches",
            spectrum_ok and multiplicity_ok,
            {
                "eigenvalues": [_lam_text(v) for v in eigen_values],
                "exceptional": [_lam_text(e.value) for e in finite],
                "multiplicities": [e.algebraic for e in operator.eigen],
            },
        ),
        PropertyCheck("eigenspaces_match_kernels", not match_fail, _fail_witness(match_fail)),
        PropertyCheck("eigenspaces_orthogonal", not orth_fail, _fail_witness(orth_fail)),
        PropertyCheck(
            "diagonalizability_criteria_agree",
            criterion == operator.diagonalizable,
            {"direct": operator.diagonalizable, "kernel_criterion": criterion},
        ),
    )
    return PropertyReport(checks)


def _pencil_for(pair: FormPair, lam: Lam, ops: linalg.SubspaceOps) -> Any:
    return pair.matrix(lam) if ops.exact else pair.numeric_view.matrix(lam)


def _eigenspace(
    operator: RecursionOperator, e: Eigendata, settings: Settings
) -> Tuple[linalg.SubspaceOps, List[Any]]:
    """Eigenvectors of ``R`` for ``e`` lifted to ``V``."""
    m = operator.quotient_dim
    if operator.kind.is_exact() and _is_exact_eigen(e):
        ops: linalg.SubspaceOps = linalg.ExactOps()
        shifted = [
            [x - (e.value if i == j else 0) for j, x in enumerate(row)]
            for i, row in enumerate(operator.matrix)
        ]
        coords = linalg.kernel(shifted, m)
        return ops, [operator.lift(c) for c in coords]
    ops = linalg.NumericOps(max(settings.rank_tol, settings.cluster_tol))
    matrix = linalg.to_complex_array(operator.matrix)
    coords = ops.kernel(matrix - _as_complex(e.value) * np.eye(m), m)
    basis = linalg.to_complex_array([list(v) for v in operator.complement])
    return ops, [np.asarray(c) @ basis for c in coords]


def _is_exact_eigen(e: Eigendata) -> bool:
    return isinstance(e.value, Fraction)


def diagonalizable_by_kernels(
    pair: FormPair, r: int, exceptional: Sequence[SpectrumEntry], settings: Settings
) -> bool:
    """``dim Ker(Pinf | Ker P_lam) == r`` for every finite exceptional ``lam``."""
    for entry in exceptional:
        ops, m = _context(pair, entry.value, settings)
        kernel = ops.kernel(m, pair.dim)
        form = pair.pinf if ops.exact else pair.numeric_view.pinf
        if len(_restricted_kernel(ops, kernel, form)) != r:
            return False
    return True


def _kernel_vector_outside(
    pair: FormPair, lam: Lam, core: Sequence[Any], settings: Settings
) -> Optional[Any]:
    ops, m = _context(pair, lam, settings)
    for v in ops.kernel(m, pair.dim):
        if not (core and ops.contains(list(core), v)):
            return v
    return None


def la4_check(
    pair: FormPair, settings: Optional[Settings] = None, seed: Optional[int] = None
) -> PropertyReport:
    """``U = L + <xi_lam>`` is isotropic; maximal iff every eigenvalue has multiplicity two."""
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings)
    core = core_subspace(pair, seed, settings, r)
    entries = _exceptional(pair, settings, seed)
    subspace = list(core)
    for entry in entries:
        xi = _kernel_vector_outside(pair, entry.value, core, settings)
        if xi is not None:
            subspace.append(xi)
    samples: List[Lam] = list(_generic_lambdas(pair, 3, r, seed, settings))
    result = isotropy_check(pair, subspace, samples + [INFINITY], settings)
    checks = [PropertyCheck("u_isotropic", result.isotropic, {"dim_u": result.dimension})]
    if any(entry.is_infinite for entry in entries):
        checks.append(
            PropertyCheck("maximality_criterion", True, {"applicable": False, "reason": "infinity"})
        )
    else:
        operator = recursion_operator(pair, core, settings, seed)
        condition = all(e.algebraic == 2 for e in operator.eigen)
        checks.append(
            PropertyCheck(
                "maximality_criterion",
                result.maximal_at_generic == condition,
                {"maximal": result.maximal_at_generic, "multiplicities_two": condition},
            )
        )
    return PropertyReport(tuple(checks))


@dataclass(frozen=True)
class PencilReport:
    r: int
    spectrum: Tuple[SpectrumEntry, ...]
    eigenspace_dims: Tuple[Optional[int], ...]
    dim_l: int
    dim_lperp: int
    diagonalizable: Optional[bool]
    eigen: Tuple[Eigendata, ...] = field(default=())
    infinity_in_spectrum: bool = False

    def __post_init__(self) -> None:
        if (self.dim_lperp - self.dim_l) % 2:
            raise ValueError("dim L^perp - dim L must be even")
        if any(entry.corank <= self.r for entry in self.spectrum):
            raise ValueError("Spectrum entries must have corank above r")


def pencil_report(
    pair: FormPair,
    hint: Optional[UniPoly] = None,
    settings: Optional[Settings] = None,
    seed: Optional[int] = None,
) -> PencilReport:
    settings = settings or get_settings()
    seed = settings.default_seed if seed is None else seed
    r = min_corank(pair, seed=seed, settings=settings)
    entries = spectrum(pair, hint, settings, seed)
    core = core_subspace(pair, seed, settings, r)
    ops = _base_ops(pair, settings)
    lperp = _lperp(pair, core, ops)
    infinite = any(entry.is_infinite for entry in entries)
    operator = None if infinite else recursion_operator(pair, core, settings, seed)
    dims: List[Optional[int]] = []
    for entry in entries:
        match = None
        if operator is not None:
            match = next(
                (
                    e.geometric
                    for e in operator.eigen
                    if _values_match(e.value, entry.value, settings.cluster_tol)
                ),
                None,
            )
        dims.append(match)
    return PencilReport(
        r=r,
        spectrum=tuple(entries),
        eigenspace_dims=tuple(dims),
        dim_l=len(core),
        dim_lperp=len(lperp),
        diagonalizable=None if operator is None else operator.diagonalizable,
        eigen=() if operator is None else operator.eigen,
        infinity_in_spectrum=infinite,
    )
