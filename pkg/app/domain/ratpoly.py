"""Exact rational scalars and sparse multivariate polynomials over the rationals.

``MultiPoly`` wraps a sympy ``PolyElement`` of ``QQ[x1, ..., xn]`` in graded
lexicographic order and never mutates it. ``UniPoly`` is a dense univariate
polynomial with ``Fraction`` coefficients, lowest degree first.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from sympy import Poly, Rational as SympyRational, Symbol
from sympy.polys.domains import QQ, ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from app.core.config import Settings, get_settings
from app.core.exceptions import (
    DimensionMismatchError,
    GCDCertificationError,
    MalformedInputError,
    ValidationError,
)

logger = structlog.get_logger(__name__)

Rational = Fraction
Scalar = Union[Fraction, int]
Monomial = Tuple[int, ...]

LAMBDA = Symbol("lam")


def to_fraction(value: Any) -> Fraction:
    """Coerce ints, strings ``"num/den"``, sympy and gmpy rationals to ``Fraction``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"Not a rational scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"Not a rational scalar: {value!r}") from exc
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise ValidationError(f"Not a rational scalar: {value!r}")


def fraction_text(value: Fraction) -> str:
    """Serialize a rational as ``num/den``."""
    return f"{value.numerator}/{value.denominator}"


def _to_qq(value: Fraction) -> Any:
    return QQ(value.numerator, value.denominator)


@lru_cache(maxsize=None)
def polynomial_ring(num_vars: int) -> PolyRing:
    """The ring ``QQ[x1, ..., xn]`` with graded lexicographic order."""
    if num_vars < 1:
        raise ValidationError("Polynomials need at least one variable")
    names = ",".join(f"x{i}" for i in range(1, num_vars + 1))
    return PolyRing(names, QQ, grlex)


@lru_cache(maxsize=None)
def _integer_ring(num_vars: int) -> PolyRing:
    names = ",".join(f"x{i}" for i in range(1, num_vars + 1))
    return PolyRing(names, ZZ, grlex)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    num_vars: int
    element: PolyElement = field(repr=False)

    def __post_init__(self) -> None:
        if self.element.ring.ngens != self.num_vars:
            raise DimensionMismatchError(self.num_vars, self.element.ring.ngens, "ring")

    # construction

    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls(num_vars, polynomial_ring(num_vars).zero)

    @classmethod
    def one(cls, num_vars: int) -> "MultiPoly":
        return cls(num_vars, polynomial_ring(num_vars).one)

    @classmethod
    def constant(cls, num_vars: int, value: Any) -> "MultiPoly":
        return cls(num_vars, polynomial_ring(num_vars).ground_new(_to_qq(to_fraction(value))))

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MultiPoly":
        """The coordinate function ``x_{index+1}`` (0-based index)."""
        if not 0 <= index < num_vars:
            raise ValidationError(f"Variable index {index} out of range for {num_vars} variables")
        return cls(num_vars, polynomial_ring(num_vars).gens[index])

    @classmethod
    def from_terms(cls, num_vars: int, terms: Mapping[Monomial, Any]) -> "MultiPoly":
        ring = polynomial_ring(num_vars)
        converted: Dict[Monomial, Any] = {}
        for monom, coeff in terms.items():
            monom = tuple(int(e) for e in monom)
            if len(monom) != num_vars or any(e < 0 for e in monom):
                raise ValidationError(f"Bad exponent vector {monom} for {num_vars} variables")
            value = to_fraction(coeff)
            if value:
                converted[monom] = _to_qq(value) + converted.get(monom, QQ.zero)
        return cls(num_vars, ring.from_dict({m: c for m, c in converted.items() if c}))

    @classmethod
    def linear_form(cls, coefficients: Sequence[Any]) -> "MultiPoly":
        """``sum_k c_k x_k``."""
        n = len(coefficients)
        terms = {}
        for k, c in enumerate(coefficients):
            monom = tuple(1 if i == k else 0 for i in range(n))
            terms[monom] = c
        return cls.from_terms(n, terms)

    # inspection

    def iter_terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        """Terms in descending graded lexicographic order."""
        for monom, coeff in self.element.terms():
            yield monom, to_fraction(coeff)

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self.iter_terms())

    @property
    def is_zero(self) -> bool:
        return not self.element

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.element.keys())

    @property
    def total_degree(self) -> Optional[int]:
        """Total degree; ``None`` for the zero polynomial."""
        if self.is_zero:
            return None
        return max(sum(m) for m in self.element.keys())

    @property
    def constant_value(self) -> Fraction:
        return to_fraction(self.element.get(self.element.ring.zero_monom, QQ.zero))

    @property
    def leading_coefficient(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return to_fraction(self.element.LC)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.element.keys()}) <= 1

    # arithmetic

    def _coerce(self, other: Any) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise DimensionMismatchError(self.num_vars, other.num_vars, "polynomial")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(self.num_vars, other)
        return None

    def __add__(self, other: Any) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MultiPoly(self.num_vars, self.element + rhs.element)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MultiPoly(self.num_vars, self.element - rhs.element)

    def __rsub__(self, other: Any) -> "MultiPoly":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, -self.element)

    def __mul__(self, other: Any) -> "MultiPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MultiPoly(self.num_vars, self.element * rhs.element)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValidationError("Negative powers are not polynomials")
        return MultiPoly(self.num_vars, self.element**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.num_vars == other.num_vars and dict.__eq__(self.element, other.element)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant and self.constant_value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.element.items())))

    def scale(self, factor: Any) -> "MultiPoly":
        return self * to_fraction(factor)

    def exact_divide(self, divisor: "MultiPoly") -> Optional["MultiPoly"]:
        """Quotient if ``divisor`` divides ``self`` exactly, else ``None``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ValidationError("Division by the zero polynomial")
        quotient, remainder = self.element.div(divisor.element)
        if remainder:
            return None
        return MultiPoly(self.num_vars, quotient)

    # calculus and evaluation

    def derivative(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.num_vars:
            raise ValidationError(f"Variable index {var} out of range for {self.num_vars}")
        ring = self.element.ring
        return MultiPoly(self.num_vars, self.element.diff(ring.gens[var]))

    @cached_property
    def gradient(self) -> Tuple["MultiPoly", ...]:
        return tuple(self.derivative(i) for i in range(self.num_vars))

    def evaluate(self, point: Sequence[Any]) -> Fraction:
        if len(point) != self.num_vars:
            raise DimensionMismatchError(self.num_vars, len(point), "point")
        values = [to_fraction(v) for v in point]
        total = Fraction(0)
        for monom, coeff in self.element.items():
            term = to_fraction(coeff)
            for v, e in zip(values, monom):
                if e:
                    term *= v**e
            total += term
        return total

    def evaluate_numeric(self, point: Sequence[complex]) -> complex:
        if len(point) != self.num_vars:
            raise DimensionMismatchError(self.num_vars, len(point), "point")
        values = [complex(v) for v in point]
        total = 0j
        for monom, coeff in self.element.items():
            term = complex(float(to_fraction(coeff)))
            for v, e in zip(values, monom):
                if e:
                    term *= v**e
            total += term
        return total

    # text

    def to_text(self) -> str:
        """``c * x1^e1 * ... * xn^en`` terms, coefficients as ``num/den``."""
        if self.is_zero:
            return "0"
        pieces: List[str] = []
        for monom, coeff in self.iter_terms():
            factors = [fraction_text(abs(coeff))]
            for i, e in enumerate(monom):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            body = " * ".join(factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()


# Functional forms


def _check_same(p: MultiPoly, q: MultiPoly) -> None:
    if p.num_vars != q.num_vars:
        raise DimensionMismatchError(p.num_vars, q.num_vars, "polynomial")


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_same(p, q)
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    _check_same(p, q)
    return p * q


def partial_derivative(p: MultiPoly, var: int) -> MultiPoly:
    return p.derivative(var)


def evaluate(p: MultiPoly, point: Sequence[Any]) -> Fraction:
    return p.evaluate(point)


def translate(p: MultiPoly, base: Sequence[Any]) -> MultiPoly:
    """``x -> p(base + x)``."""
    if len(base) != p.num_vars:
        raise DimensionMismatchError(p.num_vars, len(base), "base point")
    ring = p.element.ring
    replacements = []
    for gen, value in zip(ring.gens, base):
        value = to_fraction(value)
        if value:
            replacements.append((gen, gen + _to_qq(value)))
    if not replacements or p.is_constant:
        return p
    return MultiPoly(p.num_vars, p.element.compose(replacements))


def homogeneous_components(p: MultiPoly) -> List[MultiPoly]:
    """Components by total degree, index = degree; empty for zero."""
    if p.is_zero:
        return []
    buckets: Dict[int, Dict[Monomial, Any]] = {}
    for monom, coeff in p.element.items():
        buckets.setdefault(sum(monom), {})[monom] = coeff
    ring = p.element.ring
    top = max(buckets)
    return [MultiPoly(p.num_vars, ring.from_dict(buckets.get(d, {}))) for d in range(top + 1)]


def restrict_to_line(p: MultiPoly, base: Sequence[Any], direction: Sequence[Any]) -> "UniPoly":
    """``q(lam) = p(base + lam * direction)`` with exact coefficients."""
    if len(direction) != p.num_vars:
        raise DimensionMismatchError(p.num_vars, len(direction), "direction")
    components = homogeneous_components(translate(p, base))
    return UniPoly(tuple(c.evaluate(direction) for c in components))


def normalize(p: MultiPoly) -> MultiPoly:
    """Primitive over the integers with positive graded-lex leading coefficient."""
    if p.is_zero:
        return p
    coeffs = [c for _, c in p.iter_terms()]
    den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
    num = reduce(math.gcd, (abs(c.numerator) * (den // c.denominator) for c in coeffs), 0)
    factor = Fraction(den, num)
    if coeffs[0] < 0:
        factor = -factor
    return p.scale(factor)


def _to_integer_element(p: MultiPoly) -> PolyElement:
    ring = _integer_ring(p.num_vars)
    return ring.from_dict({m: int(c) for m, c in normalize(p).iter_terms()})


def gcd_multivariate(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Normalized GCD by the recursive subresultant PRS, certified by exact division."""
    _check_same(p, q)
    if p.is_zero:
        return normalize(q)
    if q.is_zero:
        return normalize(p)
    if p.is_constant or q.is_constant:
        return MultiPoly.one(p.num_vars)
    ring = _integer_ring(p.num_vars)
    h, _, _ = ring.dmp_rr_prs_gcd(_to_integer_element(p), _to_integer_element(q))
    candidate = normalize(MultiPoly.from_terms(p.num_vars, {m: int(c) for m, c in h.items()}))
    for operand in (p, q):
        if operand.exact_divide(candidate) is None:
            raise GCDCertificationError(candidate.to_text(), operand.to_text())
    return candidate


def gcd_many(polys: Iterable[MultiPoly], num_vars: int) -> MultiPoly:
    """Running GCD with early exit at a constant."""
    result = MultiPoly.zero(num_vars)
    for p in polys:
        result = gcd_multivariate(result, p)
        if not result.is_zero and result.is_constant:
            break
    return result


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """``p / gcd(p, dp/dx1, ..., dp/dxn)``, normalized."""
    if p.is_zero or p.is_constant:
        return normalize(p)
    g = p
    for d in p.gradient:
        g = gcd_multivariate(g, d)
        if g.is_constant:
            break
    quotient = p.exact_divide(g)
    if quotient is None:
        raise GCDCertificationError(g.to_text(), p.to_text())
    return normalize(quotient)


def rational_factors(p: MultiPoly) -> List[Tuple[MultiPoly, int]]:
    """Distinct irreducible factors over the rationals with multiplicities."""
    if p.is_zero or p.is_constant:
        return []
    _, factors = p.element.factor_list()
    result = [(normalize(MultiPoly(p.num_vars, f)), int(k)) for f, k in factors]
    result = [(f, k) for f, k in result if not f.is_constant]
    return sorted(result, key=lambda fk: fk[0].to_text())


# Univariate polynomials


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [to_fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, value: Any) -> "UniPoly":
        return cls((to_fraction(value),))

    @classmethod
    def linear(cls, c0: Any, c1: Any) -> "UniPoly":
        return cls((to_fraction(c0), to_fraction(c1)))

    @classmethod
    def from_sympy(cls, poly: Poly) -> "UniPoly":
        return cls(tuple(to_fraction(c) for c in reversed(poly.all_coeffs())))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> Optional[int]:
        return len(self.coefficients) - 1 if self.coefficients else None

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def evaluate(self, value: Any) -> Fraction:
        value = to_fraction(value)
        total = Fraction(0)
        for c in reversed(self.coefficients):
            total = total * value + c
        return total

    def evaluate_numeric(self, value: complex) -> complex:
        total = 0j
        for c in reversed(self.coefficients):
            total = total * value + float(c)
        return total

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(k * c for k, c in enumerate(self.coefficients) if k))

    def _lift(self, other: Any) -> Optional["UniPoly"]:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniPoly.constant(other)
        return None

    def __add__(self, other: Any) -> "UniPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        size = max(len(self.coefficients), len(rhs.coefficients))
        a = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        b = rhs.coefficients + (Fraction(0),) * (size - len(rhs.coefficients))
        return UniPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Any) -> "UniPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __mul__(self, other: Any) -> "UniPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(rhs.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(rhs.coefficients):
                    out[i + j] += a * b
        return UniPoly(tuple(out))

    __rmul__ = __mul__

    def to_sympy(self) -> Poly:
        coeffs = [SympyRational(c.numerator, c.denominator) for c in reversed(self.coefficients)]
        return Poly(coeffs or [0], LAMBDA, domain=QQ)

    def gcd(self, other: "UniPoly") -> "UniPoly":
        """Monic GCD; the zero polynomial is neutral."""
        if self.is_zero:
            return other.monic()
        if other.is_zero:
            return self.monic()
        return UniPoly.from_sympy(self.to_sympy().gcd(other.to_sympy())).monic()

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lead = self.leading_coefficient
        return UniPoly(tuple(c / lead for c in self.coefficients))

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(
            f"{fraction_text(c)} * lam^{k}" if k else fraction_text(c)
            for k, c in enumerate(self.coefficients)
            if c
        )


@dataclass(frozen=True)
class NumericRoot:
    """Irrational (or non-real) root known to floating precision."""

    value: complex
    residual: float
    low_confidence: bool = False

    @property
    def is_real(self) -> bool:
        return abs(self.value.imag) <= 1e-12 * max(1.0, abs(self.value))

    def __complex__(self) -> complex:
        return self.value

    def to_text(self) -> str:
        if self.is_real:
            return repr(self.value.real)
        return f"{self.value.real!r}{self.value.imag:+.17g}j"


Root = Union[Fraction, NumericRoot]


@dataclass(frozen=True)
class RootMultiplicity:
    root: Root
    multiplicity: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.root, Fraction)

    @property
    def numeric(self) -> complex:
        if isinstance(self.root, Fraction):
            return complex(float(self.root))
        return self.root.value


def _relative_residual(coeffs: Sequence[float], z: complex) -> float:
    value = np.polyval(coeffs, z)
    scale = np.polyval(np.abs(coeffs), abs(z))
    return float(abs(value) / scale) if scale else float(abs(value))


def _polish(coeffs: Sequence[float], z: complex, steps: int = 3) -> complex:
    deriv = np.polyder(np.asarray(coeffs, dtype=complex))
    for _ in range(steps):
        slope = np.polyval(deriv, z)
        if slope == 0:
            break
        z = z - np.polyval(coeffs, z) / slope
    return complex(z)


def univariate_distinct_roots(
    q: UniPoly, settings: Optional[Settings] = None
) -> List[RootMultiplicity]:
    """All complex roots with multiplicities; rational roots exact, the rest numeric.

    Rational roots come from linear factors of the rational factorization; the
    other factors are squarefree, so companion-matrix eigenvalues give their
    (simple) roots.
    """
    settings = settings or get_settings()
    if q.is_zero:
        raise ValidationError("The zero polynomial has no distinct roots")
    _, factors = q.to_sympy().factor_list()
    exact: List[RootMultiplicity] = []
    numeric: List[RootMultiplicity] = []
    for factor, mult in factors:
        coeffs = factor.all_coeffs()
        if factor.degree() == 1:
            exact.append(RootMultiplicity(to_fraction(-coeffs[1] / coeffs[0]), int(mult)))
            continue
        floats = [float(c) for c in coeffs]
        for z in np.roots(floats):
            z = _polish(floats, complex(z))
            residual = _relative_residual(floats, z)
            low = residual > settings.root_residual_tol
            if low:
                logger.warning("Numeric root above residual tolerance", residual=residual)
            numeric.append(RootMultiplicity(NumericRoot(z, residual, low), int(mult)))
    exact.sort(key=lambda r: r.root)
    numeric.sort(key=lambda r: (round(r.numeric.real, 12), round(r.numeric.imag, 12)))
    return exact + numeric


# Text input

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|x(?P<var>\d+)|(?P<pow>\*\*|\^)|(?P<op>[+\-*]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            raise MalformedInputError(f"Cannot parse polynomial {text!r}", f"char {pos}")
        kind = match.lastgroup or ""
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


def parse_poly(text: str, num_vars: int) -> MultiPoly:
    """Read the polynomial text format (``2/1 * x1^2 - 1/3 * x2``, also ``x1^2+4*x2*x3``)."""
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedInputError("Empty polynomial", "char 0")
    terms: Dict[Monomial, Fraction] = {}
    i = 0
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        coeff = Fraction(sign)
        exps = [0] * num_vars
        expect_factor = True
        while i < len(tokens):
            kind, value, pos = tokens[i]
            if expect_factor and kind == "num":
                coeff *= Fraction(value)
                i += 1
            elif expect_factor and kind == "var":
                index = int(value) - 1
                if not 0 <= index < num_vars:
                    raise MalformedInputError(f"Variable x{value} out of range", f"char {pos}")
                power = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                        raise MalformedInputError("Exponent must be an integer", f"char {pos}")
                    power = int(tokens[i + 1][1])
                    i += 2
                exps[index] += power
            elif not expect_factor and kind == "op" and value == "*":
                i += 1
                expect_factor = True
                continue
            elif not expect_factor and kind == "op":
                break
            else:
                raise MalformedInputError(f"Unexpected token {value!r}", f"char {pos}")
            expect_factor = False
        if expect_factor:
            raise MalformedInputError("Dangling operator", f"char {len(text)}")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return MultiPoly.from_terms(num_vars, terms)


def random_rational_vector(
    rng: np.random.Generator, size: int, height: int
) -> Tuple[Fraction, ...]:
    """Random rationals ``p/q`` with ``|p| <= height`` and ``1 <= q <= height``."""
    numerators = rng.integers(-height, height + 1, size=size)
    denominators = rng.integers(1, height + 1, size=size)
    return tuple(Fraction(int(p), int(q)) for p, q in zip(numerators, denominators))
