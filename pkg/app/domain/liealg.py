"""Lie algebras by structure constants: validation, catalog, direct sums, stabilizers."""

import re
from dataclasses import InitVar, dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import structlog

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    DimensionMismatchError,
    InvariantViolationError,
    JacobiViolationError,
    UnknownAlgebraError,
    ValidationError,
)
from app.domain import linalg
from app.domain.entities import ScalarKind, StabilizerClass
from app.domain.ratpoly import MultiPoly, to_fraction
from app.domain.value_objects import ValidationReport

logger = structlog.get_logger(__name__)

StructureKey = Tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Structure constants ``c_ij^k`` (0-based, stored for ``i < j`` only).

    Entries given with ``i > j`` are flipped with a sign change. Construction
    validates the Jacobi identity and the attached invariants unless
    ``check=False``.
    """

    dim: int
    structure: Mapping[StructureKey, Any] = field(default_factory=dict)
    name: str = ""
    invariants: Tuple[MultiPoly, ...] = ()
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        if self.dim < 1:
            raise ValidationError("A Lie algebra needs dimension >= 1", {"dim": self.dim})
        normalized: Dict[StructureKey, Fraction] = {}
        for key, value in self.structure.items():
            i, j, k = (int(e) for e in key)
            if not all(0 <= e < self.dim for e in (i, j, k)):
                raise ValidationError(
                    f"Structure index {(i + 1, j + 1, k + 1)} out of range",
                    {"i": i + 1, "j": j + 1, "k": k + 1, "dim": self.dim},
                )
            c = to_fraction(value)
            if i == j:
                if c:
                    raise ValidationError(f"[e{i + 1}, e{i + 1}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            normalized[(i, j, k)] = normalized.get((i, j, k), Fraction(0)) + c
        cleaned = {key: c for key, c in sorted(normalized.items()) if c}
        object.__setattr__(self, "structure", MappingProxyType(cleaned))
        invariants = tuple(self.invariants)
        for f in invariants:
            if f.num_vars != self.dim:
                raise DimensionMismatchError(self.dim, f.num_vars, "invariant")
        object.__setattr__(self, "invariants", invariants)
        if check:
            validate(self).raise_for_violation()

    def __repr__(self) -> str:
        return f"LieAlgebra(name={self.name!r}, dim={self.dim})"

    @cached_property
    def _table(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j, k), c in self.structure.items():
            table.setdefault((i, j), {})[k] = c
            table.setdefault((j, i), {})[k] = -c
        return table

    @cached_property
    def _forms(self) -> Dict[Tuple[int, int], MultiPoly]:
        return {}

    @property
    def is_abelian(self) -> bool:
        return not self.structure

    def constant(self, i: int, j: int, k: int) -> Fraction:
        """``c_ij^k`` with the antisymmetric sign synthesized."""
        return self._table.get((i, j), {}).get(k, Fraction(0))

    def bracket_terms(self, i: int, j: int) -> Dict[int, Fraction]:
        """``[e_i, e_j]`` as a sparse map ``k -> c_ij^k``."""
        return self._table.get((i, j), {})

    def bracket(self, u: Sequence[Any], v: Sequence[Any]) -> List[Any]:
        """``[u, v]`` for coordinate vectors (exact or complex)."""
        if len(u) != self.dim or len(v) != self.dim:
            actual = len(u) if len(u) != self.dim else len(v)
            raise DimensionMismatchError(self.dim, actual, "vector")
        out: List[Any] = [0] * self.dim
        for (i, j), terms in self._table.items():
            coeff = u[i] * v[j]
            if not coeff:
                continue
            for k, c in terms.items():
                out[k] = out[k] + c * coeff
        return out

    def pairing(self, point: Sequence[Any], i: int, j: int) -> Any:
        """``<point, [e_i, e_j]>``."""
        return sum((c * point[k] for k, c in self.bracket_terms(i, j).items()), Fraction(0))

    def bracket_form(self, i: int, j: int) -> MultiPoly:
        """The linear form ``sum_k c_ij^k x_k``."""
        if (i, j) not in self._forms:
            self._forms[(i, j)] = MultiPoly.linear_form(
                [self.constant(i, j, k) for k in range(self.dim)]
            )
        return self._forms[(i, j)]

    def structure_matrix_at(self, x: Sequence[Any]) -> linalg.Matrix:
        """``A_x`` evaluated at a rational point."""
        if len(x) != self.dim:
            raise DimensionMismatchError(self.dim, len(x), "point")
        point = [to_fraction(v) for v in x]
        m = linalg.zeros(self.dim, self.dim)
        for (i, j), terms in self._table.items():
            m[i][j] = sum((c * point[k] for k, c in terms.items()), Fraction(0))
        return m

    def structure_matrix_numeric(self, x: Sequence[complex]) -> np.ndarray:
        if len(x) != self.dim:
            raise DimensionMismatchError(self.dim, len(x), "point")
        m = np.zeros((self.dim, self.dim), dtype=complex)
        for (i, j), terms in self._table.items():
            m[i, j] = sum(float(c) * complex(x[k]) for k, c in terms.items())
        return m

    def coordinate_bracket(self, f: MultiPoly, i: int) -> MultiPoly:
        """``{f, x_i} = sum_a (sum_k c_ai^k x_k) df/dx_a``."""
        total = MultiPoly.zero(self.dim)
        for a, partial in enumerate(f.gradient):
            if partial.is_zero or not self.bracket_terms(a, i):
                continue
            total = total + self.bracket_form(a, i) * partial
        return total


def validate(alg: LieAlgebra) -> ValidationReport:
    """Exact Jacobi check over ``i < j < l`` plus invariance of attached invariants."""
    n = alg.dim
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(j + 1, n):
                totals: Dict[int, Fraction] = {}
                for p, q, r in ((i, j, l), (j, l, i), (l, i, j)):
                    for m, c in alg.bracket_terms(p, q).items():
                        for k, c2 in alg.bracket_terms(m, r).items():
                            totals[k] = totals.get(k, Fraction(0)) + c * c2
                bad = sorted(k for k, v in totals.items() if v)
                if bad:
                    witness = (i + 1, j + 1, l + 1, bad[0] + 1)
                    logger.debug("Jacobi identity violated", algebra=alg.name, witness=witness)
                    return ValidationReport(ok=False, violation=JacobiViolationError(witness))
    for f in alg.invariants:
        for i in range(n):
            if not alg.coordinate_bracket(f, i).is_zero:
                return ValidationReport(
                    ok=False, violation=InvariantViolationError(f.to_text(), i + 1)
                )
    return ValidationReport(ok=True)


# Catalog


def _coordinate(n: int, k: int) -> MultiPoly:
    return MultiPoly.variable(n, k)


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise ValidationError("abelian(n) needs n >= 1")
    return LieAlgebra(
        n, {}, name=f"abelian({n})", invariants=tuple(_coordinate(n, k) for k in range(n))
    )


def b2() -> LieAlgebra:
    return LieAlgebra(2, {(0, 1, 1): 1}, name="b2")


def heisenberg(n: int) -> LieAlgebra:
    """``h_{2n+1}`` with ``[e_i, e_{n+i}] = e_{2n+1}``."""
    if n < 1:
        raise ValidationError("heisenberg(n) needs n >= 1")
    dim = 2 * n + 1
    structure = {(i, n + i, dim - 1): 1 for i in range(n)}
    return LieAlgebra(
        dim, structure, name=f"heisenberg({n})", invariants=(_coordinate(dim, dim - 1),)
    )


def sl2() -> LieAlgebra:
    """Basis (e, h, f): ``[h,e]=2e``, ``[h,f]=-2f``, ``[e,f]=h``."""
    e, h, f = (_coordinate(3, k) for k in range(3))
    casimir = h**2 + 4 * e * f
    return LieAlgebra(
        3, {(0, 1, 0): -2, (0, 2, 1): 1, (1, 2, 2): -2}, name="sl2", invariants=(casimir,)
    )


def so3() -> LieAlgebra:
    x1, x2, x3 = (_coordinate(3, k) for k in range(3))
    return LieAlgebra(
        3,
        {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1},
        name="so3",
        invariants=(x1**2 + x2**2 + x3**2,),
    )


def gl2() -> LieAlgebra:
    """Basis (E11, E12, E21, E22)."""
    x1, x2, x3, x4 = (_coordinate(4, k) for k in range(4))
    structure = {
        (0, 1, 1): 1,
        (0, 2, 2): -1,
        (1, 2, 0): 1,
        (1, 2, 3): -1,
        (1, 3, 1): 1,
        (2, 3, 2): -1,
    }
    return LieAlgebra(4, structure, name="gl2", invariants=(x1 + x4, x1 * x4 - x2 * x3))


_BUILDERS = {
    "abelian": abelian,
    "b2": b2,
    "heisenberg": heisenberg,
    "sl2": sl2,
    "so3": so3,
    "gl2": gl2,
}
_PARAMETRIC = {"abelian", "heisenberg"}
_TERM = re.compile(r"(?P<base>[a-z][a-z0-9]*?)(?:\((?P<param>\d+)\))?")
_ABELIAN_ALIAS = re.compile(r"c(?:\^(?P<power>\d+))?")
_HEISENBERG_ALIAS = re.compile(r"h(?P<dim>\d+)")


def _catalog_term(term: str) -> LieAlgebra:
    text = term.strip().lower().replace(" ", "")
    alias = _ABELIAN_ALIAS.fullmatch(text)
    if alias:
        return abelian(int(alias.group("power") or 1))
    alias = _HEISENBERG_ALIAS.fullmatch(text)
    if alias:
        dim = int(alias.group("dim"))
        if dim < 3 or dim % 2 == 0:
            raise UnknownAlgebraError(term)
        return heisenberg((dim - 1) // 2)
    match = _TERM.fullmatch(text)
    if not match or match.group("base") not in _BUILDERS:
        raise UnknownAlgebraError(term)
    base, param = match.group("base"), match.group("param")
    if (base in _PARAMETRIC) != (param is not None):
        raise UnknownAlgebraError(term)
    return _BUILDERS[base](int(param)) if param is not None else _BUILDERS[base]()


def catalog(name: str, *params: int) -> LieAlgebra:
    """Look up ``name`` (optionally with integer params) or a ``+``-separated sum."""
    if params:
        base = name.strip().lower()
        if base not in _BUILDERS:
            raise UnknownAlgebraError(name)
        return _BUILDERS[base](*params)
    terms = [t for t in name.split("+")]
    if not all(t.strip() for t in terms):
        raise UnknownAlgebraError(name)
    return reduce(direct_sum, (_catalog_term(t) for t in terms))


def _embed(f: MultiPoly, offset: int, total: int) -> MultiPoly:
    terms = {}
    for monom, coeff in f.iter_terms():
        padded = (0,) * offset + monom + (0,) * (total - offset - len(monom))
        terms[padded] = coeff
    return MultiPoly.from_terms(total, terms)


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    """Block-diagonal structure; invariants of both summands lifted."""
    n = a.dim + b.dim
    structure: Dict[StructureKey, Fraction] = dict(a.structure)
    for (i, j, k), c in b.structure.items():
        structure[(i + a.dim, j + a.dim, k + a.dim)] = c
    invariants = tuple(_embed(f, 0, n) for f in a.invariants) + tuple(
        _embed(f, a.dim, n) for f in b.invariants
    )
    return LieAlgebra(
        n,
        structure,
        name=name or f"{a.name or 'g'}+{b.name or 'g'}",
        invariants=invariants,
        check=False,
    )


# Subalgebras and stabilizers


def is_exact_point(x: Sequence[Any]) -> bool:
    return all(isinstance(v, (int, Fraction, str)) and not isinstance(v, bool) for v in x)


@dataclass(frozen=True, eq=False)
class Subalgebra:
    """Span of ``basis`` in ``parent`` with the induced bracket ``s_pq^r`` (``p < q``)."""

    parent: LieAlgebra
    basis: Tuple[Tuple[Any, ...], ...]
    induced_structure: Mapping[StructureKey, Any]
    kind: ScalarKind = ScalarKind.EXACT

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def spanned_by(
        cls,
        parent: LieAlgebra,
        vectors: Sequence[Sequence[Any]],
        kind: ScalarKind = ScalarKind.EXACT,
        settings: Optional[Settings] = None,
    ) -> "Subalgebra":
        """Validate independence and closure, then compute the induced bracket."""
        settings = settings or get_settings()
        ops = linalg.ExactOps() if kind.is_exact() else linalg.NumericOps(settings.rank_tol)
        basis = [list(v) if kind.is_exact() else [complex(e) for e in v] for v in vectors]
        if basis and ops.rank(basis) != len(basis):
            raise ValidationError("Subalgebra basis vectors are linearly dependent")
        structure: Dict[StructureKey, Any] = {}
        for p in range(len(basis)):
            for q in range(p + 1, len(basis)):
                image = parent.bracket(basis[p], basis[q])
                coords = _coordinates_in(basis, image, kind, settings)
                for r, c in enumerate(coords):
                    if c != 0:
                        structure[(p, q, r)] = c
        return cls(parent, tuple(tuple(v) for v in basis), MappingProxyType(structure), kind)

    def constant(self, p: int, q: int, r: int) -> Any:
        if p == q:
            return 0
        if p > q:
            return -self.induced_structure.get((q, p, r), 0)
        return self.induced_structure.get((p, q, r), 0)

    def derived_vectors(self) -> List[List[Any]]:
        """``[b_p, b_q]`` for ``p < q`` in subalgebra coordinates."""
        return [
            [self.constant(p, q, r) for r in range(self.dim)]
            for p in range(self.dim)
            for q in range(p + 1, self.dim)
        ]

    def ad(self, z: Sequence[Any], q: int) -> List[Any]:
        """Coordinates of ``[z, b_q]``."""
        n = self.dim
        return [sum(z[p] * self.constant(p, q, r) for p in range(n)) for r in range(n)]

    def to_lie_algebra(self) -> LieAlgebra:
        if not self.kind.is_exact():
            raise ValidationError("Only exact subalgebras convert to Lie algebras")
        if not self.basis:
            raise ValidationError("The zero subalgebra is not a Lie algebra here")
        return LieAlgebra(
            self.dim,
            dict(self.induced_structure),
            name=f"stab({self.parent.name})",
            check=False,
        )


def _coordinates_in(
    basis: List[List[Any]], image: List[Any], kind: ScalarKind, settings: Settings
) -> List[Any]:
    n = len(image)
    if kind.is_exact():
        if not basis:
            if any(image):
                raise ValidationError("Span is not closed under the bracket")
            return []
        coords = linalg.solve(linalg.columns_matrix(basis, n), image)
        if coords is None:
            raise ValidationError("Span is not closed under the bracket")
        return coords
    target = np.asarray(image, dtype=complex)
    if not basis:
        if np.linalg.norm(target) > settings.closure_tol:
            raise ValidationError("Span is not closed under the bracket")
        return []
    columns = np.asarray(basis, dtype=complex).T
    coords, *_ = np.linalg.lstsq(columns, target, rcond=None)
    residual = float(np.linalg.norm(columns @ coords - target))
    if residual > settings.closure_tol * max(1.0, float(np.linalg.norm(target))):
        raise ValidationError("Span is not closed under the bracket", {"residual": residual})
    return [complex(c) if abs(c) > settings.closure_tol else 0 for c in coords]


def stabilizer(
    alg: LieAlgebra, x: Sequence[Any], settings: Optional[Settings] = None
) -> Subalgebra:
    """``g_x = Ker A_x``; exact for rational ``x``, SVD-based otherwise."""
    settings = settings or get_settings()
    if len(x) != alg.dim:
        raise DimensionMismatchError(alg.dim, len(x), "point")
    if is_exact_point(x):
        basis = linalg.kernel(alg.structure_matrix_at(x), alg.dim)
        return Subalgebra.spanned_by(alg, basis, ScalarKind.EXACT, settings)
    ops = linalg.NumericOps(settings.rank_tol)
    basis = ops.kernel(alg.structure_matrix_numeric(x), alg.dim)
    return Subalgebra.spanned_by(alg, basis, ScalarKind.NUMERIC, settings)


def classify_stabilizer(
    h: Subalgebra, ind_g: Optional[int] = None, settings: Optional[Settings] = None
) -> StabilizerClass:
    """Derived-algebra and center test separating the three subregular classes."""
    settings = settings or get_settings()
    ops = linalg.ExactOps() if h.kind.is_exact() else linalg.NumericOps(settings.rank_tol)
    derived = h.derived_vectors()
    derived_dim = ops.rank(derived) if derived else 0
    if derived_dim == 0:
        result = StabilizerClass.ABELIAN
    elif derived_dim >= 2:
        result = StabilizerClass.OTHER
    else:
        z = ops.span(derived)[0]
        central = all(ops.is_zero([h.ad(z, q)]) for q in range(h.dim))
        result = (
            StabilizerClass.HEISENBERG_PLUS_ABELIAN if central else StabilizerClass.B2_PLUS_ABELIAN
        )
    logger.debug(
        "Stabilizer classified",
        dim=h.dim,
        derived_dim=derived_dim,
        subregular=None if ind_g is None else h.dim == ind_g + 2,
        stab_class=result.value,
    )
    return result
