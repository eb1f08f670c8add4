"""Тесты для индекса, пфаффианов и фундаментального полуинварианта."""

from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import ValidationError
from app.domain import linalg
from app.domain.ratpoly import MultiPoly, UniPoly
from app.domain.singular import (
    StructureMatrix,
    corank_at,
    fundamental_semiinvariant,
    index,
    line_pfaffian_gcd,
    pfaffian,
    principal_pfaffians,
    rank_at,
    sing0_codim_flag,
    squarefree_fundamental,
    structure_matrix,
    vinberg_check,
)


def x(n: int, k: int) -> MultiPoly:
    return MultiPoly.variable(n, k)


class TestIndex:
    """Тесты для вычисления индекса."""

    @pytest.mark.parametrize(
        "name, expected",
        [("b2", 0), ("h3", 1), ("h5", 1), ("sl2", 1), ("so3", 1), ("gl2", 2), ("abelian(7)", 7)],
    )
    def test_catalog_indices(self, catalog, name, expected):
        """Индексы алгебр каталога."""
        cert = index(catalog(name))
        assert cert.index == expected
        assert cert.t == cert.dim - expected
        assert cert.trials >= 1

    def test_b_g(self, catalog):
        """b(g) = (dim + ind) / 2."""
        assert index(catalog("b2+h3")).b_g == 3
        assert index(catalog("sl2")).b_g == 2

    def test_index_is_deterministic(self, gl2):
        """Один и тот же seed даёт тот же сертификат."""
        assert index(gl2, seed=3) == index(gl2, seed=3)

    def test_rank_and_corank(self, sl2):
        """Ранг A_x в точке."""
        assert rank_at(sl2, (1, 0, 0)) == 2
        assert corank_at(sl2, (0, 0, 0)) == 3
        assert rank_at(sl2, (1 + 0.5j, 0.25, 2.0)) == 2


class TestPfaffian:
    """Тесты для пфаффианов."""

    def test_small_pfaffians(self):
        """Pf двумерной и четырёхмерной матриц."""
        assert pfaffian([[0, 3], [-3, 0]]) == 3
        m = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
        assert pfaffian(m) == 1 * 6 - 2 * 5 + 3 * 4

    def test_empty_matrix(self):
        """Pf пустой матрицы равен единице."""
        assert pfaffian([]) == 1

    def test_odd_and_non_skew_rejected(self):
        """Нечётный размер и несимметричные матрицы отклоняются."""
        with pytest.raises(ValidationError):
            pfaffian([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
        with pytest.raises(ValidationError):
            pfaffian([[0, 1], [1, 0]])

    def test_numeric_pfaffian(self):
        """Комплексные матрицы обрабатываются тем же разложением."""
        m = np.array([[0, 2j], [-2j, 0]])
        assert pfaffian(m) == pytest.approx(2j)

    def test_symbolic_pfaffian(self, h3):
        """Pf матрицы из линейных форм является многочленом."""
        entries = structure_matrix(h3).entries
        minors = dict(principal_pfaffians(entries, 2, MultiPoly.one(3)))
        assert minors[(0, 1)] == x(3, 2)
        assert minors[(0, 2)].is_zero
        assert list(minors) == [(0, 1), (0, 2), (1, 2)]

    @pytest.mark.parametrize("seed", range(100))
    def test_pfaffian_squared_is_determinant(self, seeded_skew, seed):
        """Pf^2 = det точно, размеры от 2 до 8."""
        m = seeded_skew(seed, 2 + 2 * (seed % 4))
        assert pfaffian(m) ** 2 == linalg.det(m)

    @pytest.mark.parametrize("n", [1, 3, 5])
    def test_odd_size(self, seeded_skew, n):
        """Нечётный размер: det = 0, пфаффиан не определён."""
        m = seeded_skew(n, n)
        assert linalg.det(m) == 0
        with pytest.raises(ValidationError):
            pfaffian(m)


class TestStructureMatrix:
    """Тесты для структурной матрицы."""

    def test_entries_are_linear_forms(self, b2):
        """(A_x)_12 = x2."""
        sm = structure_matrix(b2)
        assert sm.entries[0][1] == x(2, 1)
        assert sm.evaluate((3, 5)) == [[0, 5], [-5, 0]]

    def test_rejects_non_skew(self):
        """Несимметричная матрица форм отклоняется."""
        x1 = x(2, 0)
        zero = MultiPoly.zero(2)
        with pytest.raises(ValidationError):
            StructureMatrix(2, ((zero, x1), (x1, zero)))

    def test_along_line(self, b2):
        """Ограничение на прямую линейно по lam."""
        rows = structure_matrix(b2).along_line((1, 1), (0, 1))
        assert rows[0][1] == UniPoly((1, 1))


class TestFundamentalSemiInvariant:
    """Тесты для p_g."""

    @pytest.mark.parametrize("name", ["b2", "h3", "h5", "b2+h3", "b2+c", "b2+c^2", "b2+b2"])
    def test_golden_values(self, catalog, name):
        """Эталонные значения p_g."""
        alg = catalog(name)
        p_g = fundamental_semiinvariant(alg)
        n = alg.dim
        expected = {
            "b2": lambda: x(n, 1),
            "h3": lambda: x(n, 2),
            "h5": lambda: x(n, 4) ** 2,
            "b2+h3": lambda: x(n, 1) * x(n, 4),
            "b2+c": lambda: x(n, 1),
            "b2+c^2": lambda: x(n, 1),
            "b2+b2": lambda: x(n, 1) * x(n, 3),
        }[name]()
        assert p_g == expected
        assert sing0_codim_flag(alg).codim_one

    @pytest.mark.parametrize("name", ["sl2", "so3", "abelian(3)"])
    def test_trivial_p_g(self, catalog, name):
        """Для унимодулярных примеров p_g = 1."""
        alg = catalog(name)
        assert fundamental_semiinvariant(alg) == MultiPoly.one(alg.dim)
        flag = sing0_codim_flag(alg)
        assert not flag.codim_one
        assert flag.label == "CodimAtLeastTwo"

    def test_squarefree(self, catalog):
        """Бесквадратная часть x5^2 равна x5."""
        assert squarefree_fundamental(catalog("h5")) == x(5, 4)

    def test_line_gcd(self, b2, sl2):
        """Корни НОД дают пересечения прямой с особым множеством."""
        assert line_pfaffian_gcd(b2, (1, 1), (0, 1)) == UniPoly((1, 1))
        assert line_pfaffian_gcd(sl2, (1, 2, 3), (3, 1, 2)).degree == 0


class TestVinberg:
    """Тесты для неравенства индекса стабилизатора."""

    def test_inequality_holds(self, sl2, b2, h3):
        """ind(g_x) >= ind(g) в особых и регулярных точках."""
        for alg, point in ((sl2, (0, 0, 0)), (sl2, (1, 2, 3)), (b2, (1, 0)), (h3, (1, 1, 0))):
            check = vinberg_check(alg, point)
            assert check.name == "vinberg_inequality"
            assert check.passed

    def test_requires_rational_point(self, b2):
        """Комплексная точка отклоняется."""
        with pytest.raises(ValidationError):
            vinberg_check(b2, (0.5j, 1.0))

    def test_stabilizer_index_recorded(self, b2):
        """Свидетель содержит индексы."""
        check = vinberg_check(b2, (Fraction(1), Fraction(0)))
        assert check.witness == {"stabilizer_index": 0, "index": 0, "stabilizer_dim": 2}
