"""End-to-end checks against known values for the catalog algebras."""

import io
from fractions import Fraction
from typing import List, Sequence

import numpy as np
import pytest

from app.core.exceptions import NotNiceError
from app.domain import linalg
from app.domain.criterion import (
    bolsinov_lemma_check,
    lambda_differentials,
    nice_roots,
    sample_sing0,
    theorem2_decide,
    verify_lambda_differentials,
)
from app.domain.pencil import (
    FormPair,
    la3_report,
    la4_check,
    recursion_operator,
    spectrum,
    verify_la2,
)
from app.domain.poisson import check_pairwise_commute, is_semiinvariant
from app.domain.ratpoly import random_rational_vector, rational_factors
from app.domain.shiftalg import completeness_direct, extended_generators, mf_generators
from app.domain.singular import fundamental_semiinvariant, index, pfaffian, principal_pfaffians
from app.domain.value_objects import Character
from app.main import run
from app.services.pipeline import choose_regular_point

pytestmark = pytest.mark.integration

Matrix = List[List[Fraction]]

SHIFT_POINTS = {
    "b2": (0, 1),
    "h3": (0, 0, 1),
    "b2+h3": (0, 1, 0, 0, 1),
    "b2+c": (0, 1, 1),
    "b2+b2": (0, 1, 0, 1),
    "sl2": (1, 0, 1),
    "gl2": (1, 2, 3, 5),
}


def congruent(m: Sequence[Sequence[Fraction]], t: Sequence[Sequence[Fraction]]) -> Matrix:
    """``t^T m t``."""
    n = len(m)
    mt = [[sum(m[i][k] * t[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(t[k][i] * mt[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def unimodular(rng: np.random.Generator, n: int) -> Matrix:
    """Random integer matrix with determinant one (lower times upper unitriangular)."""
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    upper = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            lower[i][j] = Fraction(int(rng.integers(-3, 4)))
            upper[j][i] = Fraction(int(rng.integers(-3, 4)))
    return [[sum(lower[i][k] * upper[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def block_diagonal(scales: Sequence[int]) -> Matrix:
    n = 2 * len(scales)
    m = [[Fraction(0)] * n for _ in range(n)]
    for b, s in enumerate(scales):
        m[2 * b][2 * b + 1] = Fraction(s)
        m[2 * b + 1][2 * b] = Fraction(-s)
    return m


class TestGoldenValues:
    """Index and fundamental semi-invariant of the catalog algebras."""

    @pytest.mark.parametrize(
        "name, ind, b_g",
        [
            ("b2", 0, 1),
            ("h3", 1, 2),
            ("h5", 1, 3),
            ("sl2", 1, 2),
            ("so3", 1, 2),
            ("gl2", 2, 3),
            ("b2+h3", 1, 3),
            ("abelian(7)", 7, 7),
        ],
    )
    def test_index(self, catalog, name, ind, b_g):
        cert = index(catalog(name))
        assert cert.index == ind
        assert cert.b_g == b_g

    @pytest.mark.parametrize(
        "name, p_g",
        [
            ("b2", "1/1 * x2"),
            ("h3", "1/1 * x3"),
            ("h5", "1/1 * x5^2"),
            ("b2+h3", "1/1 * x2 * x5"),
            ("b2+c", "1/1 * x2"),
            ("b2+c^2", "1/1 * x2"),
            ("b2+b2", "1/1 * x2 * x4"),
            ("sl2", "1/1"),
            ("so3", "1/1"),
            ("abelian(3)", "1/1"),
        ],
    )
    def test_fundamental_semiinvariant(self, catalog, name, p_g):
        assert fundamental_semiinvariant(catalog(name)).to_text() == p_g

    @pytest.mark.parametrize("name", ["b2", "h3", "h5", "b2+h3", "b2+b2", "sl2", "so3"])
    def test_pfaffian_oracle(self, catalog, settings, name):
        """p_g vanishes exactly where every principal t x t Pfaffian of A_x vanishes."""
        alg = catalog(name)
        t = index(alg).t
        p_g = fundamental_semiinvariant(alg)

        def all_vanish(point) -> bool:
            m = alg.structure_matrix_at(point)
            return all(pf == 0 for _, pf in principal_pfaffians(m, t, Fraction(1)))

        rng = np.random.default_rng(17)
        for _ in range(10):
            point = random_rational_vector(rng, alg.dim, 10)
            assert all_vanish(point) == (p_g.evaluate(point) == 0)
        if not p_g.is_constant:
            exact = [s for s in sample_sing0(alg, p_g, 4, 5, settings) if s.exact]
            assert exact
            assert all(all_vanish(s.point) for s in exact)

    @pytest.mark.parametrize("name", ["b2", "h3", "h5", "b2+h3", "b2+b2", "b2+c"])
    def test_p_g_factors_are_semiinvariants(self, catalog, name):
        """p_g and each of its rational factors carry a character."""
        alg = catalog(name)
        p_g = fundamental_semiinvariant(alg)
        for f in [p_g] + [factor for factor, _ in rational_factors(p_g)]:
            assert isinstance(is_semiinvariant(alg, f), Character)


class TestShiftedSubalgebras:
    """Commutation and completeness of the shifted generator sets."""

    @pytest.mark.parametrize("name", sorted(SHIFT_POINTS))
    def test_extended_generators_commute(self, catalog, name):
        alg = catalog(name)
        gens = extended_generators(alg, SHIFT_POINTS[name])
        result = check_pairwise_commute(alg, SHIFT_POINTS[name], gens.generators)
        assert result.ok, result.witness

    @pytest.mark.parametrize(
        "name, complete",
        [("b2", True), ("h3", False), ("b2+h3", False), ("b2+c", True), ("sl2", True)],
    )
    def test_direct_completeness(self, catalog, name, complete):
        alg = catalog(name)
        gens = extended_generators(alg, SHIFT_POINTS[name])
        assert completeness_direct(alg, gens).complete is complete

    def test_classical_set_of_b2_is_empty(self, b2):
        gens = mf_generators(b2, (0, 1))
        assert gens.is_empty
        assert gens.note == "missing_invariants"

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize(
        "name", ["b2", "h3", "h5", "sl2", "so3", "gl2", "b2+c", "b2+h3", "b2+b2"]
    )
    def test_commutation_at_random_regular_points(self, catalog, settings, name, seed):
        alg = catalog(name)
        point = choose_regular_point(alg, settings, seed)
        gens = extended_generators(alg, point, settings)
        assert check_pairwise_commute(alg, point.a, gens.generators).ok

    @pytest.mark.parametrize("name", ["sl2", "so3"])
    def test_classical_set_complete_without_semiinvariant(self, catalog, settings, name):
        alg = catalog(name)
        for seed in range(8):
            gens = mf_generators(alg, choose_regular_point(alg, settings, seed), settings)
            assert completeness_direct(alg, gens, settings, seed).trdeg == 2

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize(
        "name, complete",
        [
            ("b2", True),
            ("b2+c", True),
            ("b2+c^2", True),
            ("b2+b2", True),
            ("h3", False),
            ("b2+h3", False),
        ],
    )
    def test_criterion_agrees_with_direct_computation(
        self, catalog, settings, name, complete, seed
    ):
        alg = catalog(name)
        point = choose_regular_point(alg, settings, seed)
        verdict = theorem2_decide(alg, point, 5, seed, settings)
        assert verdict.agreement
        assert verdict.criterion_complete is complete
        assert not verdict.low_confidence

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_h5_agreement_is_low_confidence(self, catalog, settings, seed):
        """No subregular samples exist on h5: incomplete, agreeing, flagged."""
        alg = catalog("h5")
        verdict = theorem2_decide(alg, choose_regular_point(alg, settings, seed), 3, seed)
        assert verdict.agreement
        assert not verdict.criterion_complete
        assert verdict.low_confidence


class TestRandomPencils:
    """Pencil properties on randomly generated pairs."""

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_congruent_block_pairs(self, seed):
        """Spectrum {1, 2, 3/2} survives a random change of basis."""
        rng = np.random.default_rng(seed)
        t = unimodular(rng, 6)
        pair = FormPair(
            congruent(block_diagonal([1, 2, 3]), t), congruent(block_diagonal([1, 1, 2]), t)
        )
        entries = spectrum(pair)
        assert sorted(e.value for e in entries) == [1, Fraction(3, 2), 2]
        assert all(e.corank == 2 for e in entries)
        operator = recursion_operator(pair)
        assert operator.diagonalizable
        assert verify_la2(pair).all_passed
        assert la3_report(pair).all_passed
        assert la4_check(pair).get("maximality_criterion").witness["maximal"]

    @pytest.mark.slow
    @pytest.mark.parametrize("blocks", [2, 3])
    @pytest.mark.parametrize("seed", range(10))
    def test_random_block_pairs(self, seed, blocks):
        """Random rational spectra, repeated values included."""
        rng = np.random.default_rng(100 + seed)
        numerators = [int(v) for v in rng.integers(-3, 4, size=blocks)]
        denominators = [int(v) for v in rng.integers(1, 3, size=blocks)]
        t = unimodular(rng, 2 * blocks)
        pair = FormPair(
            congruent(block_diagonal(numerators), t), congruent(block_diagonal(denominators), t)
        )
        values = {Fraction(p, q) for p, q in zip(numerators, denominators)}
        assert {e.value for e in spectrum(pair)} == values
        assert recursion_operator(pair).diagonalizable
        assert verify_la2(pair).all_passed
        assert la3_report(pair).all_passed
        la4 = la4_check(pair)
        assert la4.all_passed
        assert la4.get("maximality_criterion").witness["maximal"] is (len(values) == blocks)

    @pytest.mark.parametrize("name", ["sl2", "so3", "gl2", "b2+h3", "b2+b2", "b2+c"])
    def test_catalog_pencils(self, catalog, settings, name):
        """Pencils (A_x, A_a) of the catalog algebras at seeded random points."""
        alg = catalog(name)
        a = choose_regular_point(alg, settings, 2).a
        x = random_rational_vector(np.random.default_rng(23), alg.dim, 10)
        pair = FormPair.from_algebra(alg, x, a)
        assert verify_la2(pair).all_passed
        assert la3_report(pair).all_passed

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [4, 6])
    @pytest.mark.parametrize("seed", range(25))
    def test_unstructured_pairs(self, seeded_skew, settings, seed, n):
        """Generic rational pairs, irrational spectra included."""
        p0 = seeded_skew(seed, n)
        pinf = next(
            m for m in (seeded_skew(1000 + 50 * k + seed, n) for k in range(20)) if pfaffian(m)
        )
        pair = FormPair(p0, pinf)
        la2 = verify_la2(pair, settings)
        assert la2.all_passed, la2.failures()
        la3 = la3_report(pair, settings)
        assert la3.all_passed, la3.failures()
        la4 = la4_check(pair, settings)
        assert la4.all_passed, la4.failures()

        operator = recursion_operator(pair, settings=settings)
        assert operator.quotient_dim == n
        r_matrix = linalg.to_complex_array(operator.matrix)
        values = np.linalg.eigvals(r_matrix)
        semisimple = []
        for e in operator.eigen:
            lam = complex(float(e.value)) if isinstance(e.value, Fraction) else e.value.value
            algebraic = int(np.sum(np.abs(values - lam) <= 1e-6 * max(1.0, abs(lam))))
            geometric = n - linalg.numeric_rank(r_matrix - lam * np.eye(n), 1e-8)
            assert (e.algebraic, e.geometric) == (algebraic, geometric), lam
            semisimple.append(algebraic == geometric)
        assert sum(e.algebraic for e in operator.eigen) == n
        assert operator.diagonalizable is all(semisimple)

    @pytest.mark.parametrize("n", [3, 5])
    def test_odd_random_pairs(self, skew_factory, n):
        """Generic odd pencils have corank one and satisfy the core properties."""
        pair = FormPair(skew_factory(n), skew_factory(n))
        report = verify_la2(pair)
        assert report.all_passed, report.failures()


class TestDifferentials:
    """Root differentials against exact finite differences."""

    @pytest.mark.parametrize(
        "name, a, x",
        [
            ("b2+b2", (1, 1, 1, 2), (1, 2, 1, 3)),
            ("b2+h3", (0, 1, 0, 0, 1), (1, 2, 1, 1, 3)),
        ],
    )
    def test_finite_differences(self, catalog, name, a, x):
        alg = catalog(name)
        h = Fraction(1, 1000)
        base = sorted(rm.root for rm in nice_roots(alg, a, x))
        diffs = {d.root: d.differential for d in lambda_differentials(alg, a, x)}
        for k in range(alg.dim):
            moved = list(x)
            moved[k] += h
            shifted_roots = sorted(rm.root for rm in nice_roots(alg, a, moved))
            for root, new_root in zip(base, shifted_roots):
                assert (new_root - root) / h == diffs[root][k]

    @pytest.mark.parametrize("name", ["b2", "b2+c", "b2+h3", "b2+b2"])
    def test_identities_at_random_points(self, catalog, settings, name):
        alg = catalog(name)
        a = SHIFT_POINTS[name]
        rng = np.random.default_rng(41)
        checked = 0
        for _ in range(10):
            x = random_rational_vector(rng, alg.dim, 10)
            try:
                report = verify_lambda_differentials(alg, a, x, settings=settings)
            except NotNiceError:
                continue
            assert report.all_passed, report.failures()
            checked += 1
        assert checked > 0


class TestCoreSpan:
    """Differentials of the classical generators span the pencil core."""

    @pytest.mark.parametrize(
        "name, a, x",
        [("sl2", (1, 0, 1), (2, 5, -1)), ("gl2", (2, -1, 1, 3), (1, 2, 3, 5))],
    )
    def test_span(self, catalog, name, a, x):
        check = bolsinov_lemma_check(catalog(name), a, x)
        assert check.passed, check.witness

    @pytest.mark.parametrize("name", ["sl2", "so3", "h3", "gl2"])
    @pytest.mark.parametrize("seed", range(5))
    def test_span_at_seeded_points(self, catalog, settings, name, seed):
        """Shift point and evaluation point both drawn from independent seeded streams."""
        alg = catalog(name)
        a = choose_regular_point(alg, settings, seed).a
        x = choose_regular_point(alg, settings, 100 + seed).a
        check = bolsinov_lemma_check(alg, a, x, seed=seed, settings=settings)
        assert check.passed, (a, x, check.witness)


class TestCommandLine:
    """Whole reports through the command line."""

    def test_report_is_reproducible(self):
        argv = ["report", "--catalog", "b2+h3", "--a", "0,1,0,0,1", "--samples", "4"]
        outputs = []
        for _ in range(2):
            out = io.StringIO()
            assert run(argv + ["--seed", "7"], stdout=out) == 0
            outputs.append(out.getvalue())
        assert outputs[0] == outputs[1]
