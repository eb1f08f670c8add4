"""Shared test fixtures and configuration."""

from fractions import Fraction
from typing import Callable, List

import numpy as np
import pytest

from app.core.config import Settings, get_settings
from app.domain import liealg
from app.domain.liealg import LieAlgebra
from app.domain.pencil import FormPair
from app.domain.ratpoly import MultiPoly


@pytest.fixture
def settings() -> Settings:
    """Default toolkit settings."""
    return get_settings()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for reproducible random inputs."""
    return np.random.default_rng(12345)


@pytest.fixture
def b2() -> LieAlgebra:
    return liealg.b2()


@pytest.fixture
def h3() -> LieAlgebra:
    return liealg.heisenberg(1)


@pytest.fixture
def sl2() -> LieAlgebra:
    return liealg.sl2()


@pytest.fixture
def so3() -> LieAlgebra:
    return liealg.so3()


@pytest.fixture
def gl2() -> LieAlgebra:
    return liealg.gl2()


@pytest.fixture
def catalog() -> Callable[[str], LieAlgebra]:
    """Catalog lookup by expression, e.g. ``b2+h3``."""
    return liealg.catalog


def _j2(scale: int = 1) -> List[List[int]]:
    return [[0, scale], [-scale, 0]]


def _block(a: List[List[int]], b: List[List[int]]) -> List[List[int]]:
    return [row + [0, 0] for row in a] + [[0, 0] + row for row in b]


@pytest.fixture
def block_pair() -> FormPair:
    """``P0 = J2 + 2 J2``, ``Pinf = J2 + J2``: spectrum {1, 2}, R = diag(1, 1, 2, 2)."""
    return FormPair(_block(_j2(1), _j2(2)), _block(_j2(1), _j2(1)))


@pytest.fixture
def nondiagonalizable_pair() -> FormPair:
    """Pencil with ``Pf(P_lam) = -lam^2`` and a single two-dimensional eigenspace."""
    pinf = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    p0 = [[0, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 0]]
    return FormPair(p0, pinf)


def random_skew(rng: np.random.Generator, n: int, height: int = 5) -> List[List[Fraction]]:
    """Random rational skew-symmetric ``n x n`` matrix."""
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 4)))
            m[i][j] = value
            m[j][i] = -value
    return m


@pytest.fixture
def skew_factory(rng: np.random.Generator) -> Callable[[int], List[List[Fraction]]]:
    return lambda n: random_skew(rng, n)


@pytest.fixture
def seeded_skew() -> Callable[[int, int], List[List[Fraction]]]:
    """``(seed, n) -> matrix``, one independent stream per seed."""
    return lambda seed, n: random_skew(np.random.default_rng(seed), n)


def random_poly(
    rng: np.random.Generator, n: int, max_degree: int = 3, terms: int = 4, height: int = 5
) -> MultiPoly:
    """Random rational polynomial in ``n`` variables of total degree ``<= max_degree``."""
    coefficients = {}
    for _ in range(terms):
        exponents = [0] * n
        for k in rng.integers(0, n, size=int(rng.integers(0, max_degree + 1))):
            exponents[int(k)] += 1
        value = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 4)))
        monom = tuple(exponents)
        coefficients[monom] = coefficients.get(monom, Fraction(0)) + value
    return MultiPoly.from_terms(n, coefficients)


@pytest.fixture
def poly_factory() -> Callable[..., MultiPoly]:
    """``(seed, n, max_degree=3) -> polynomial``, one independent stream per seed."""
    return lambda seed, n, max_degree=3: random_poly(np.random.default_rng(seed), n, max_degree)
