"""Exact linear algebra over the rationals plus SVD-based numeric counterparts.

Matrices are lists of rows. Exact routines work on ``Fraction`` entries and
never mutate their arguments.
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import DimensionMismatchError, ValidationError

Vector = List[Fraction]
Matrix = List[List[Fraction]]


def to_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [[e if isinstance(e, Fraction) else Fraction(e) for e in row] for row in rows]


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return [[Fraction(0)] * n_cols for _ in range(n_rows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatchError(len(a[0]), len(b), "matrix product")
    cols = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in m]


def bilinear(u: Sequence[Fraction], m: Matrix, v: Sequence[Fraction]) -> Fraction:
    """``u^T m v``."""
    return sum((x * y for x, y in zip(u, matvec(m, v))), Fraction(0))


def columns_matrix(vectors: Sequence[Sequence[Fraction]], size: int) -> Matrix:
    """Matrix whose columns are ``vectors`` (``size`` rows)."""
    return [[v[i] for v in vectors] for i in range(size)]


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    work = [list(row) for row in m]
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    pivots: List[int] = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if work[i_row][piv_c] != 0:
                break
        else:
            continue
        work[piv_r], work[i_row] = work[i_row], work[piv_r]
        fp = work[piv_r][piv_c]
        work[piv_r] = [e / fp for e in work[piv_r]]
        for r in range(n_rows):
            fr = work[r][piv_c]
            if r == piv_r or fr == 0:
                continue
            work[r] = [x - fr * y for x, y in zip(work[r], work[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
    return work, pivots


def rank(m: Matrix) -> int:
    """Exact rank by forward elimination."""
    work = [list(row) for row in m]
    n_rows = len(work)
    n_cols = len(work[0]) if work else 0
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if work[i_row][piv_c] != 0:
                break
        else:
            continue
        work[piv_r], work[i_row] = work[i_row], work[piv_r]
        fp = work[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = work[r][piv_c]
            if fr == 0:
                continue
            frp = fr / fp
            work[r] = [x - frp * y for x, y in zip(work[r], work[piv_r])]
        piv_r += 1
        if piv_r == n_rows:
            break
    return piv_r


def det(m: Matrix) -> Fraction:
    """Determinant by Bareiss elimination; every division is exact."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValidationError("Determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    work = to_matrix(m)
    prev, sign = Fraction(1), 1
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if work[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            work[k], work[pivot_row] = work[pivot_row], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (pivot * work[i][j] - work[i][k] * work[k][j]) / prev
            work[i][k] = Fraction(0)
        prev = pivot
    return sign * work[n - 1][n - 1]


def kernel(m: Matrix, n_cols: Optional[int] = None) -> List[Vector]:
    """Basis of ``{v : m v = 0}``, one vector per free column."""
    if not m:
        size = n_cols or 0
        return identity(size)
    n = len(m[0])
    reduced, pivots = rref(m)
    free = [c for c in range(n) if c not in pivots]
    basis: List[Vector] = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of ``m x = b`` or ``None`` if inconsistent."""
    if len(m) != len(b):
        raise DimensionMismatchError(len(m), len(b), "right-hand side")
    n = len(m[0]) if m else 0
    augmented = [list(row) + [bi] for row, bi in zip(m, b)]
    reduced, pivots = rref(augmented)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = reduced[r][n]
    return x


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValidationError("Only square matrices are invertible")
    reduced, pivots = rref([list(row) + unit for row, unit in zip(m, identity(n))])
    if pivots[:n] != list(range(n)):
        raise ValidationError("Matrix is singular")
    return [row[n:] for row in reduced]


def span_basis(vectors: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Echelon basis of the span (empty for the zero space)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return []
    reduced, pivots = rref(vectors)
    return reduced[: len(pivots)]


def contains(basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    return rank(list(basis) + [list(v)]) == rank(list(basis))


def same_span(u: Sequence[Sequence[Fraction]], v: Sequence[Sequence[Fraction]]) -> bool:
    ru = rank(list(u)) if u else 0
    rv = rank(list(v)) if v else 0
    if ru != rv:
        return False
    return (rank(list(u) + list(v)) if u or v else 0) == ru


def intersect(u: Sequence[Sequence[Fraction]], v: Sequence[Sequence[Fraction]]) -> List[Vector]:
    """Basis of ``span(u) & span(v)`` via the kernel of ``[U | -V]``."""
    if not u or not v:
        return []
    size = len(u[0])
    stacked = [[ui[k] for ui in u] + [-vi[k] for vi in v] for k in range(size)]
    vectors = []
    for coeffs in kernel(stacked):
        vectors.append(
            [sum((c * ui[k] for c, ui in zip(coeffs, u)), Fraction(0)) for k in range(size)]
        )
    return span_basis(vectors)


def complement(
    sub: Sequence[Sequence[Fraction]], ambient: Sequence[Sequence[Fraction]]
) -> List[Vector]:
    """Vectors of ``ambient`` extending a basis of ``sub`` to one of ``span(ambient)``."""
    chosen = [list(s) for s in span_basis(sub)]
    extra: List[Vector] = []
    current = len(chosen)
    for w in ambient:
        candidate = chosen + extra + [list(w)]
        r = rank(candidate)
        if r > current:
            extra.append(list(w))
            current = r
    return extra


# Numeric counterparts


def numeric_rank(m: np.ndarray, rel_tol: float) -> int:
    """Rank with singular values below ``rel_tol * sigma_max`` treated as zero."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0
    sigma = np.linalg.svd(m, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0:
        return 0
    return int(np.sum(sigma > rel_tol * sigma[0]))


def numeric_kernel(m: np.ndarray, rel_tol: float) -> np.ndarray:
    """Orthonormal kernel basis as the columns of the returned array."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, sigma, vh = np.linalg.svd(m)
    r = numeric_rank(m, rel_tol) if sigma.size and sigma[0] else 0
    return vh[r:].conj().T


def as_array(m: Matrix) -> np.ndarray:
    return np.array([[complex(float(e)) for e in row] for row in m], dtype=complex)


def _complex(e: Any) -> complex:
    return complex(float(e)) if isinstance(e, Fraction) else complex(e)


def to_complex_array(rows: Sequence[Sequence[Any]]) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        return rows.astype(complex)
    return np.array(
        [[_complex(e) for e in row] for row in rows],
        dtype=complex,
    )


class ExactOps:
    """Subspace arithmetic over the rationals; vectors are lists of ``Fraction``."""

    exact = True

    def matrix(self, rows: Sequence[Sequence[Any]]) -> Matrix:
        return to_matrix(rows)

    def rank(self, m: Sequence[Sequence[Any]]) -> int:
        return rank(to_matrix(m)) if len(m) else 0

    def kernel(self, m: Sequence[Sequence[Any]], n_cols: int) -> List[Vector]:
        return kernel(to_matrix(m), n_cols)

    def span(self, vectors: Sequence[Sequence[Any]]) -> List[Vector]:
        return span_basis([to_matrix([v])[0] for v in vectors])

    def contains(self, basis: Sequence[Sequence[Any]], v: Sequence[Any]) -> bool:
        return contains(to_matrix(basis), to_matrix([v])[0]) if len(basis) else not any(v)

    def same_span(self, u: Sequence[Sequence[Any]], v: Sequence[Sequence[Any]]) -> bool:
        return same_span(to_matrix(u), to_matrix(v))

    def intersect(self, u: Sequence[Sequence[Any]], v: Sequence[Sequence[Any]]) -> List[Vector]:
        return intersect(to_matrix(u), to_matrix(v))

    def gram(self, u: Sequence[Sequence[Any]], m: Matrix, v: Sequence[Sequence[Any]]) -> Matrix:
        """Matrix of the form ``m`` restricted to ``u x v``."""
        m = to_matrix(m)
        return [[bilinear(to_matrix([x])[0], m, to_matrix([y])[0]) for y in v] for x in u]

    def is_zero(self, m: Sequence[Sequence[Any]]) -> bool:
        return all(e == 0 for row in m for e in row)

    def residual(self, values: Sequence[Any]) -> float:
        return 0.0 if all(e == 0 for e in values) else float(max(abs(e) for e in values))


class NumericOps:
    """Subspace arithmetic in floating point with a relative rank threshold."""

    exact = False

    def __init__(self, rel_tol: float) -> None:
        self.rel_tol = rel_tol

    def matrix(self, rows: Sequence[Sequence[Any]]) -> np.ndarray:
        return to_complex_array(rows)

    def rank(self, m: Any) -> int:
        m = to_complex_array(m)
        return numeric_rank(m, self.rel_tol) if m.size else 0

    def kernel(self, m: Any, n_cols: int) -> List[np.ndarray]:
        m = to_complex_array(m)
        if m.size == 0:
            return list(np.eye(n_cols, dtype=complex))
        return list(numeric_kernel(m, self.rel_tol).T)

    def span(self, vectors: Sequence[Sequence[Any]]) -> List[np.ndarray]:
        if len(vectors) == 0:
            return []
        stacked = to_complex_array([list(v) for v in vectors])
        _, sigma, vh = np.linalg.svd(stacked)
        r = numeric_rank(stacked, self.rel_tol)
        return list(vh[:r])

    def contains(self, basis: Sequence[Sequence[Any]], v: Sequence[Any]) -> bool:
        if len(basis) == 0:
            return float(np.linalg.norm(to_complex_array([list(v)]))) <= self.rel_tol
        return self.rank(list(basis) + [list(v)]) == self.rank(list(basis))

    def same_span(self, u: Sequence[Sequence[Any]], v: Sequence[Sequence[Any]]) -> bool:
        ru = self.rank([list(x) for x in u]) if len(u) else 0
        rv = self.rank([list(x) for x in v]) if len(v) else 0
        if ru != rv:
            return False
        if ru == 0:
            return True
        return self.rank([list(x) for x in u] + [list(x) for x in v]) == ru

    def intersect(self, u: Sequence[Sequence[Any]], v: Sequence[Sequence[Any]]) -> List[np.ndarray]:
        if len(u) == 0 or len(v) == 0:
            return []
        uu = to_complex_array([list(x) for x in u])
        vv = to_complex_array([list(x) for x in v])
        stacked = np.hstack([uu.T, -vv.T])
        coeffs = self.kernel(stacked, stacked.shape[1])
        return self.span([np.asarray(c[: len(uu)]) @ uu for c in coeffs])

    def gram(self, u: Sequence[Sequence[Any]], m: Any, v: Sequence[Sequence[Any]]) -> np.ndarray:
        if len(u) == 0 or len(v) == 0:
            return np.zeros((len(u), len(v)), dtype=complex)
        uu = to_complex_array([list(x) for x in u])
        vv = to_complex_array([list(x) for x in v])
        return uu @ to_complex_array(m) @ vv.T

    def is_zero(self, m: Any) -> bool:
        m = to_complex_array(m)
        return m.size == 0 or float(np.max(np.abs(m))) <= self.rel_tol

    def residual(self, values: Sequence[Any]) -> float:
        arr = np.asarray([_complex(e) for e in values])
        return float(np.max(np.abs(arr))) if arr.size else 0.0


SubspaceOps = Union[ExactOps, NumericOps]
