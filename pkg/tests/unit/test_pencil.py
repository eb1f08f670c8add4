"""Тесты для пучков кососимметричных форм."""

from fractions import Fraction

import pytest

from app.core.exceptions import DimensionMismatchError, InfinityInSpectrumError, ValidationError
from app.domain.entities import ScalarKind
from app.domain.pencil import (
    INFINITY,
    FormPair,
    corank,
    core_subspace,
    diagonalizable_by_kernels,
    isotropy_check,
    kernel_at,
    la3_report,
    la4_check,
    min_corank,
    pencil_pfaffian_gcd,
    pencil_report,
    recursion_operator,
    spectrum,
    verify_la2,
)
from app.domain.ratpoly import UniPoly


def degenerate_pair() -> FormPair:
    """Pinf = 0, so infinity lies in the spectrum."""
    return FormPair([[0, 1], [-1, 0]], [[0, 0], [0, 0]])


class TestFormPair:
    """Тесты для пары форм."""

    def test_matrix_at_lambda(self, block_pair):
        """P_lam = P0 - lam Pinf."""
        m = block_pair.matrix(Fraction(1))
        assert m[0][1] == 0
        assert m[2][3] == 1
        assert block_pair.matrix(INFINITY) == block_pair.pinf

    def test_rejects_non_skew(self):
        """Несимметричная форма отклоняется."""
        with pytest.raises(ValidationError):
            FormPair([[0, 1], [1, 0]], [[0, 1], [-1, 0]])

    def test_rejects_size_mismatch(self):
        """Формы разного размера."""
        with pytest.raises(DimensionMismatchError):
            FormPair([[0, 1], [-1, 0]], [[0, 0, 0], [0, 0, 0], [0, 0, 0]])

    def test_from_algebra(self, sl2):
        """P0 = A_x, Pinf = A_a."""
        pair = FormPair.from_algebra(sl2, (1, 2, 3), (1, 0, 1))
        assert pair.kind is ScalarKind.EXACT
        assert pair.p0 == sl2.structure_matrix_at((1, 2, 3))
        numeric = FormPair.from_algebra(sl2, (1.5, 2.0, 3.0), (1, 0, 1))
        assert numeric.kind is ScalarKind.NUMERIC


class TestCorankAndSpectrum:
    """Тесты для коранга и исключительного спектра."""

    def test_coranks(self, block_pair):
        """Коранг растёт в точках спектра."""
        assert corank(block_pair, Fraction(1)) == 2
        assert corank(block_pair, Fraction(2)) == 2
        assert corank(block_pair, INFINITY) == 0
        assert min_corank(block_pair) == 0

    def test_kernel_at(self, block_pair):
        """Ker P_2 = span(e3, e4)."""
        kernel = kernel_at(block_pair, Fraction(2))
        assert len(kernel) == 2
        assert all(v[0] == 0 and v[1] == 0 for v in kernel)

    def test_pfaffian_gcd(self, block_pair):
        """НОД пфаффианов равен (lam - 1)(lam - 2)."""
        assert pencil_pfaffian_gcd(block_pair, 4) == UniPoly((2, -3, 1))

    def test_exact_spectrum(self, block_pair):
        """Спектр {1, 2} с корангом 2."""
        entries = spectrum(block_pair)
        assert sorted(e.value for e in entries) == [1, 2]
        assert all(e.corank == 2 for e in entries)

    def test_numeric_spectrum(self, block_pair):
        """Численный пучок даёт тот же спектр приближённо."""
        numeric = FormPair(block_pair.p0, block_pair.pinf, ScalarKind.NUMERIC)
        values = sorted(complex(e.value).real for e in spectrum(numeric))
        assert values == pytest.approx([1.0, 2.0], abs=1e-6)

    def test_cluster_radius_comes_from_settings(self, block_pair, settings):
        """Слишком грубый радиус склеивает 1 и 2, и спектр пропадает."""
        numeric = FormPair(block_pair.p0, block_pair.pinf, ScalarKind.NUMERIC)
        coarse = settings.model_copy(update={"cluster_tol": 1.0})
        assert len(spectrum(numeric, settings=settings)) == 2
        assert spectrum(numeric, settings=coarse) == []

    def test_spectrum_with_hint(self, block_pair):
        """Лишние корни подсказки отбрасываются проверкой коранга."""
        hint = UniPoly((-1, 1)) * UniPoly((-2, 1)) * UniPoly((-5, 1))
        assert sorted(e.value for e in spectrum(block_pair, hint)) == [1, 2]
        with pytest.raises(ValidationError):
            spectrum(block_pair, UniPoly())

    def test_infinity_in_spectrum(self):
        """Вырожденная Pinf даёт бесконечность в спектре."""
        entries = spectrum(degenerate_pair())
        assert entries[-1].is_infinite
        with pytest.raises(InfinityInSpectrumError):
            recursion_operator(degenerate_pair())
        report = pencil_report(degenerate_pair())
        assert report.infinity_in_spectrum
        assert report.diagonalizable is None


class TestRecursionOperator:
    """Тесты для рекурсионного оператора."""

    def test_block_pair_is_diagonal(self, block_pair):
        """R = diag(1, 1, 2, 2)."""
        operator = recursion_operator(block_pair)
        assert operator.quotient_dim == 4
        assert operator.diagonalizable
        assert {e.value: (e.algebraic, e.geometric) for e in operator.eigen} == {
            1: (2, 2),
            2: (2, 2),
        }

    def test_nondiagonalizable(self, nondiagonalizable_pair):
        """Нильпотентный R: алгебраическая кратность 4, геометрическая 2."""
        operator = recursion_operator(nondiagonalizable_pair)
        assert not operator.diagonalizable
        (eigen,) = operator.eigen
        assert eigen.value == 0
        assert (eigen.algebraic, eigen.geometric) == (4, 2)

    def test_kernel_criterion(self, block_pair, nondiagonalizable_pair, settings):
        """Критерий через ядра совпадает с прямой проверкой."""
        for pair, expected in ((block_pair, True), (nondiagonalizable_pair, False)):
            finite = [e for e in spectrum(pair) if not e.is_infinite]
            assert diagonalizable_by_kernels(pair, 0, finite, settings) is expected

    def test_shuffled_complement(self, block_pair):
        """Другое дополнение даёт тот же спектр."""
        operator = recursion_operator(block_pair, shuffle_seed=11)
        assert sorted(e.value for e in operator.eigen) == [1, 2]


class TestProperties:
    """Тесты для свойств ядра пучка и изотропности."""

    def test_core_of_sl2_pencil(self, sl2):
        """L как сумма ядер двумерна для sl2."""
        pair = FormPair.from_algebra(sl2, (1, 2, 3), (1, 0, 1))
        assert min_corank(pair) == 1
        assert len(core_subspace(pair)) == 2
        report = pencil_report(pair)
        assert report.spectrum == ()
        assert report.dim_l == 2

    @pytest.mark.parametrize("fixture", ["block_pair", "nondiagonalizable_pair"])
    def test_la2_properties(self, request, fixture):
        """Пять свойств L выполняются."""
        report = verify_la2(request.getfixturevalue(fixture))
        assert report.all_passed, report.failures()

    def test_la2_on_algebra_pencil(self, gl2):
        """Свойства L для пучка из gl2."""
        pair = FormPair.from_algebra(gl2, (1, 2, 3, 5), (2, -1, 1, 3))
        assert verify_la2(pair).all_passed

    @pytest.mark.parametrize("fixture", ["block_pair", "nondiagonalizable_pair"])
    def test_la3_properties(self, request, fixture):
        """Спектр, собственные подпространства и критерий диагонализуемости."""
        report = la3_report(request.getfixturevalue(fixture))
        assert report.all_passed, report.failures()

    def test_la4_maximal(self, block_pair):
        """U = L + <xi_lam> максимально изотропно при кратностях 2."""
        report = la4_check(block_pair)
        assert report.all_passed
        assert report.get("u_isotropic").witness == {"dim_u": 2}
        assert report.get("maximality_criterion").witness["maximal"]

    def test_la4_not_maximal(self, nondiagonalizable_pair):
        """При кратности 4 подпространство U не максимально."""
        report = la4_check(nondiagonalizable_pair)
        assert report.all_passed
        witness = report.get("maximality_criterion").witness
        assert witness == {"maximal": False, "multiplicities_two": False}

    def test_isotropy_check(self, block_pair):
        """span(e1, e3) изотропно и максимально."""
        u = [[1, 0, 0, 0], [0, 0, 1, 0]]
        result = isotropy_check(block_pair, u, [Fraction(1, 3), INFINITY])
        assert result.isotropic
        assert result.maximal_at_generic
        assert (result.dimension, result.orthogonal_dimension) == (2, 2)
        with pytest.raises(ValidationError):
            isotropy_check(block_pair, u, [])

    def test_non_isotropic_subspace(self, block_pair):
        """span(e1, e2) не изотропно."""
        result = isotropy_check(block_pair, [[1, 0, 0, 0], [0, 1, 0, 0]], [Fraction(1, 3)])
        assert not result.isotropic
        assert not result.maximal_at_generic
