"""Тесты для рациональных многочленов."""

from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from app.core.exceptions import DimensionMismatchError, MalformedInputError, ValidationError
from app.domain.ratpoly import (
    MultiPoly,
    NumericRoot,
    UniPoly,
    fraction_text,
    gcd_many,
    gcd_multivariate,
    homogeneous_components,
    normalize,
    parse_poly,
    random_rational_vector,
    rational_factors,
    restrict_to_line,
    squarefree_part,
    to_fraction,
    translate,
    univariate_distinct_roots,
)


def x(n: int, k: int) -> MultiPoly:
    return MultiPoly.variable(n, k)


class TestScalars:
    """Тесты для рациональных скаляров."""

    def test_to_fraction_accepts_strings_and_ints(self):
        """Строки "p/q" и целые приводятся к Fraction."""
        assert to_fraction("3/6") == Fraction(1, 2)
        assert to_fraction(4) == Fraction(4)
        assert to_fraction(Fraction(2, 3)) == Fraction(2, 3)

    def test_to_fraction_rejects_garbage(self):
        """Нечисловые значения отклоняются."""
        with pytest.raises(ValidationError):
            to_fraction("abc")
        with pytest.raises(ValidationError):
            to_fraction(True)
        with pytest.raises(ValidationError):
            to_fraction("1/0")

    def test_fraction_text(self):
        """Рациональные числа сериализуются как num/den."""
        assert fraction_text(Fraction(-3, 4)) == "-3/4"
        assert fraction_text(Fraction(5)) == "5/1"


class TestMultiPoly:
    """Тесты для разреженных многочленов."""

    def test_arithmetic(self):
        """Сложение, умножение и степени точны."""
        x1, x2 = x(2, 0), x(2, 1)
        p = (x1 + x2) ** 2
        assert p == x1**2 + 2 * x1 * x2 + x2**2
        assert (p - p).is_zero
        assert p.total_degree == 2
        assert p.is_homogeneous

    def test_dimension_mismatch(self):
        """Многочлены из разных колец не складываются."""
        with pytest.raises(DimensionMismatchError):
            x(2, 0) + x(3, 0)

    def test_derivative_and_gradient(self):
        """Частные производные и градиент."""
        x1, x2 = x(2, 0), x(2, 1)
        p = x1**3 * x2 + 5 * x2
        assert p.derivative(0) == 3 * x1**2 * x2
        assert p.gradient[1] == x1**3 + 5

    def test_evaluate_exact(self):
        """Вычисление в рациональной точке точно."""
        x1, x2 = x(2, 0), x(2, 1)
        p = x1 * x2 - Fraction(1, 3)
        assert p.evaluate([Fraction(1, 2), 4]) == Fraction(5, 3)

    def test_evaluate_wrong_dimension(self):
        """Точка неправильной размерности отклоняется."""
        with pytest.raises(DimensionMismatchError):
            x(2, 0).evaluate([1, 2, 3])

    def test_exact_divide(self):
        """Точное деление возвращает частное или None."""
        x1, x2 = x(2, 0), x(2, 1)
        assert (x1**2 - x2**2).exact_divide(x1 - x2) == x1 + x2
        assert (x1**2 + x2).exact_divide(x1) is None

    def test_to_text_and_parse(self):
        """Текстовый формат читается обратно."""
        p = parse_poly("x1^2 + 4*x2*x3 - 1/2", 3)
        assert p == x(3, 0) ** 2 + 4 * x(3, 1) * x(3, 2) - Fraction(1, 2)
        assert parse_poly(p.to_text(), 3) == p

    def test_to_text_format(self):
        """Коэффициенты выводятся как num/den."""
        p = 2 * x(2, 0) ** 2 - x(2, 1)
        assert p.to_text() == "2/1 * x1^2 - 1/1 * x2"
        assert MultiPoly.zero(2).to_text() == "0"

    @pytest.mark.parametrize("text", ["x1 +", "x4", "2 x1", "x1^1/2", "", "x1 $ x2"])
    def test_parse_errors_carry_location(self, text):
        """Ошибки разбора содержат позицию."""
        with pytest.raises(MalformedInputError) as info:
            parse_poly(text, 3)
        assert info.value.details["location"].startswith("char")
        assert info.value.exit_code == 2


class TestPolynomialOperations:
    """Тесты для операций над многочленами."""

    def test_translate_and_components(self):
        """Сдвиг и однородные компоненты."""
        x1, x2 = x(2, 0), x(2, 1)
        shifted = translate(x1 * x2, [1, 2])
        assert shifted == x1 * x2 + 2 * x1 + x2 + 2
        components = homogeneous_components(shifted)
        assert [c.total_degree for c in components] == [0, 1, 2]
        assert components[1] == 2 * x1 + x2

    def test_restrict_to_line(self):
        """Ограничение на прямую даёт многочлен от lam."""
        x1, x2 = x(2, 0), x(2, 1)
        q = restrict_to_line(x1 * x2, [1, 0], [0, 1])
        assert q == UniPoly((0, 1))

    def test_normalize(self):
        """Нормализация делает многочлен примитивным с положительным старшим коэффициентом."""
        x1, x2 = x(2, 0), x(2, 1)
        assert normalize(-Fraction(2, 3) * x1 + Fraction(4, 3) * x2) == x1 - 2 * x2

    def test_gcd_multivariate(self):
        """НОД сертифицирован точным делением."""
        x1, x2, x3 = x(3, 0), x(3, 1), x(3, 2)
        p = (x1 + x2) * (x1 - x3) ** 2
        q = (x1 - x3) * (x2 + 3 * x3)
        assert gcd_multivariate(p, q) == x1 - x3

    def test_gcd_with_zero_and_constants(self):
        """Нулевой многочлен нейтрален, константы дают 1."""
        x1 = x(2, 0)
        assert gcd_multivariate(MultiPoly.zero(2), 3 * x1) == x1
        assert gcd_multivariate(MultiPoly.constant(2, 5), x1) == MultiPoly.one(2)

    def test_gcd_many_stops_at_constant(self):
        """Последовательный НОД."""
        x1, x2 = x(2, 0), x(2, 1)
        assert gcd_many([x1 * x2, x1**2, x1 * (x2 + 1)], 2) == x1
        assert gcd_many([x1, x2, x1 * x2], 2).is_constant

    def test_squarefree_part(self):
        """Бесквадратная часть."""
        x1, x2 = x(2, 0), x(2, 1)
        assert squarefree_part(x1**3 * x2**2) == x1 * x2
        assert squarefree_part(x2**2) == x2

    def test_rational_factors(self):
        """Разложение на неприводимые множители с кратностями."""
        x1, x2 = x(2, 0), x(2, 1)
        factors = rational_factors(x1**2 * (x1 + x2))
        assert (x1, 2) in factors
        assert (x1 + x2, 1) in factors
        assert rational_factors(MultiPoly.one(2)) == []


class TestUniPoly:
    """Тесты для многочленов от одной переменной."""

    def test_arithmetic_and_trailing_zeros(self):
        """Старшие нули отбрасываются."""
        p = UniPoly((1, 2, 0))
        assert p.degree == 1
        assert (p * p).coefficients == (1, 4, 4)
        assert (p - p).is_zero

    def test_gcd_is_monic(self):
        """НОД нормирован."""
        p = UniPoly((-2, 2)) * UniPoly((3, 1))
        q = UniPoly((-1, 1)) * UniPoly((5, 1))
        assert p.gcd(q) == UniPoly((-1, 1))
        assert UniPoly().gcd(UniPoly((2, 4))) == UniPoly((Fraction(1, 2), 1))

    def test_distinct_roots_exact_and_numeric(self, settings):
        """Рациональные корни точны, иррациональные численны."""
        q = UniPoly((-1, 1)) * UniPoly((-1, 1)) * UniPoly((-2, 0, 1))
        roots = univariate_distinct_roots(q, settings)
        exact = [r for r in roots if r.is_exact]
        numeric = [r for r in roots if not r.is_exact]
        assert exact[0].root == Fraction(1)
        assert exact[0].multiplicity == 2
        assert len(numeric) == 2
        assert all(isinstance(r.root, NumericRoot) for r in numeric)
        assert sorted(abs(r.numeric.real) for r in numeric) == pytest.approx([2**0.5, 2**0.5])
        assert all(r.root.residual < 1e-9 for r in numeric)

    def test_distinct_roots_of_zero(self, settings):
        """У нулевого многочлена нет списка корней."""
        with pytest.raises(ValidationError):
            univariate_distinct_roots(UniPoly(), settings)

    def test_residual_tolerance_marks_low_confidence(self, settings):
        """Корень с невязкой выше допуска помечается, но не отбрасывается."""
        q = UniPoly((-1, -1, 1)) * UniPoly((-2, 0, 1))
        assert not any(rm.root.low_confidence for rm in univariate_distinct_roots(q, settings))
        strict = settings.model_copy(update={"root_residual_tol": 0.0})
        roots = univariate_distinct_roots(q, strict)
        assert len(roots) == 4
        assert all(rm.root.low_confidence == (rm.root.residual > 0.0) for rm in roots)


class TestRandomizedProperties:
    """Тесты алгебраических свойств на случайных многочленах."""

    @pytest.mark.parametrize("seed", range(10))
    def test_ring_axioms(self, poly_factory, seed):
        """Ассоциативность, коммутативность и дистрибутивность."""
        p, q, r = (poly_factory(3 * seed + k, 3) for k in range(3))
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p + q == q + p
        assert p * q == q * p
        assert p * (q + r) == p * q + p * r
        assert p - p == MultiPoly.zero(3)

    @pytest.mark.parametrize("seed", range(10))
    def test_gcd_contains_common_factor(self, poly_factory, seed):
        """h делит gcd(p h, q h)."""
        x1, x2 = x(3, 0), x(3, 1)
        p, q = poly_factory(seed, 3, 2) * x1 + x2, poly_factory(50 + seed, 3, 2) * x2 + x1
        h = poly_factory(100 + seed, 3, 2) * x1 + 1
        g = gcd_multivariate(p * h, q * h)
        assert g.exact_divide(h) is not None
        assert (p * h).exact_divide(g) is not None
        assert (q * h).exact_divide(g) is not None

    @pytest.mark.parametrize("seed", range(10))
    def test_restriction_matches_directional_derivatives(self, poly_factory, seed):
        """k-й коэффициент p(b + lam d) равен (D_d^k p)(b) / k!."""
        rng = np.random.default_rng(seed)
        p = poly_factory(seed, 3, 4)
        base, direction = random_rational_vector(rng, 3, 4), random_rational_vector(rng, 3, 4)
        line = restrict_to_line(p, base, direction)
        assert len(line.coefficients) <= 5
        coeffs = line.coefficients + (Fraction(0),) * (5 - len(line.coefficients))
        deriv = p
        for k in range(5):
            assert coeffs[k] == deriv.evaluate(base) / factorial(k)
            deriv = sum(
                (d * deriv.derivative(i) for i, d in enumerate(direction)), MultiPoly.zero(3)
            )

    @pytest.mark.parametrize("seed", range(10))
    def test_roots_reconstruct_polynomial(self, settings, seed):
        """lc * prod (lam - r)^m восстанавливает многочлен."""
        rng = np.random.default_rng(seed)
        den = int(rng.integers(1, 4))
        roots = [Fraction(int(v), den) for v in rng.choice(np.arange(-6, 7), 3, replace=False)]
        mults = [int(m) for m in rng.integers(1, 4, size=3)]
        lead = Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
        q = UniPoly.constant(lead)
        for r, m in zip(roots, mults):
            for _ in range(m):
                q = q * UniPoly((-r, 1))

        found = univariate_distinct_roots(q, settings)
        assert all(rm.is_exact for rm in found)
        rebuilt = UniPoly.constant(q.leading_coefficient)
        for rm in found:
            for _ in range(rm.multiplicity):
                rebuilt = rebuilt * UniPoly((-rm.root, 1))
        assert rebuilt == q

        # an irreducible quadratic contributes two numeric roots
        full = q * UniPoly((1, 1, 1))
        found = univariate_distinct_roots(full, settings)
        assert sum(rm.multiplicity for rm in found) == full.degree
        assert sum(not rm.is_exact for rm in found) == 2
        values = [rm.numeric for rm in found for _ in range(rm.multiplicity)]
        expected = [float(c) for c in reversed(full.coefficients)]
        assert np.allclose(float(full.leading_coefficient) * np.poly(values), expected)
