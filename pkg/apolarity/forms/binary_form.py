"""Binary forms in the binomial basis, dual operators and the contraction pairing.

A degree-n form is stored by its binomial-basis coefficients a_0..a_n,
meaning f = sum_i a_i * C(n, i) * x^(n-i) * y^i. With this convention the
point nu_n(s, t) of the rational normal curve is the coefficient vector of
(s x + t y)^n, and contraction by an operator with symbol
phi(S, T) = sum_j u_j S^(e-j) T^j is the Hankel product
(phi o f)_m = sum_j u_j a_(m+j).

The classical presentation uses the signed pattern (t^2, -2ts, s^2) on
symbols; it is the same map after (s, t) -> (t, -s), so every rank and kernel
dimension agrees.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, lcm
from typing import Iterable, List, Sequence, Tuple

from apolarity.exactlin.qmatrix import QMatrix, canonical_vector, to_fraction
from apolarity.exactlin.qpoly import QPoly, multiply
from apolarity.exceptions import DegreeMismatch, FormatError, ZeroPoint

Point = Tuple[int, int]


def _integral(values: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Scale a rational vector to a primitive integer vector, first nonzero entry positive."""
    scale = reduce(lcm, (v.denominator for v in values), 1)
    integers = canonical_vector(int(v * scale) for v in values)
    return tuple(Fraction(v) for v in integers)


@dataclass(frozen=True)
class BinaryForm:
    """Degree-n binary form given by its binomial-basis coefficients a_0..a_n."""

    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeMismatch(f"negative degree {self.degree}")
        values = tuple(to_fraction(c) for c in self.coeffs)
        if len(values) != self.degree + 1:
            raise DegreeMismatch(f"a degree {self.degree} form needs {self.degree + 1} coefficients, got {len(values)}")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "BinaryForm":
        values = tuple(to_fraction(c) for c in coeffs)
        return cls(len(values) - 1, values)

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, (Fraction(0),) * (degree + 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def normalized(self) -> "BinaryForm":
        """Projective representative: integer coefficients, content 1, first nonzero positive."""
        if self.is_zero():
            return self
        return BinaryForm(self.degree, _integral(self.coeffs))

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add forms of degree {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + other.scale(-1)

    def scale(self, factor) -> "BinaryForm":
        factor = to_fraction(factor)
        return BinaryForm(self.degree, tuple(factor * a for a in self.coeffs))

    def to_plain(self) -> Tuple[Fraction, ...]:
        """Plain monomial coefficients b_i of x^(n-i) y^i."""
        return tuple(a * comb(self.degree, i) for i, a in enumerate(self.coeffs))

    @classmethod
    def from_plain(cls, plain: Sequence) -> "BinaryForm":
        degree = len(plain) - 1
        return cls(degree, tuple(to_fraction(b) / comb(degree, i) for i, b in enumerate(plain)))


@dataclass(frozen=True)
class DualOperator:
    """Degree-e apolarity operator; coeffs are the plain symbol coefficients u_j of S^(e-j) T^j."""

    degree: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeMismatch(f"negative degree {self.degree}")
        values = tuple(to_fraction(c) for c in self.coeffs)
        if len(values) != self.degree + 1:
            raise DegreeMismatch(f"a degree {self.degree} operator needs {self.degree + 1} coefficients")
        object.__setattr__(self, "coeffs", values)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "DualOperator":
        values = tuple(to_fraction(c) for c in coeffs)
        return cls(len(values) - 1, values)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def symbol(self) -> QPoly:
        return QPoly(self.coeffs)

    def __call__(self, s, t) -> Fraction:
        """Evaluate the symbol at (s, t)."""
        s, t = to_fraction(s), to_fraction(t)
        e = self.degree
        return sum((u * s ** (e - j) * t**j for j, u in enumerate(self.coeffs)), Fraction(0))

    def __mul__(self, other: "DualOperator") -> "DualOperator":
        return DualOperator.from_coeffs(multiply(self.symbol(), other.symbol()).coeffs)

    def __add__(self, other: "DualOperator") -> "DualOperator":
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot add operators of degree {self.degree} and {other.degree}")
        return DualOperator(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, factor) -> "DualOperator":
        factor = to_fraction(factor)
        return DualOperator(self.degree, tuple(factor * u for u in self.coeffs))

    def normalized(self) -> "DualOperator":
        if self.is_zero():
            return self
        return DualOperator(self.degree, _integral(self.coeffs))


def contract(phi: DualOperator, f: BinaryForm) -> BinaryForm:
    """Apply the operator phi to f; phi o L^n = phi(L) L^(n-e) holds on pure powers.

    Raises:
        DegreeMismatch: If deg phi > deg f
    """
    e, n = phi.degree, f.degree
    if e > n:
        raise DegreeMismatch(f"cannot contract a degree {n} form by a degree {e} operator")
    a, u = f.coeffs, phi.coeffs
    return BinaryForm(n - e, tuple(sum((u[j] * a[m + j] for j in range(e + 1)), Fraction(0)) for m in range(n - e + 1)))


def catalecticant(f: BinaryForm, e: int) -> QMatrix:
    """Hankel matrix of contraction T_e -> S_(n-e): H[m][j] = a_(m+j).

    Args:
        f (BinaryForm): Form of degree n
        e (int): Operator degree, 0 <= e <= n

    Returns:
        QMatrix: (n - e + 1) x (e + 1) matrix whose kernel is the degree-e part of Ann(f)
    """
    n = f.degree
    if e < 0 or e > n:
        raise DegreeMismatch(f"catalecticant degree {e} outside 0..{n}")
    return QMatrix.from_rows([[f.coeffs[m + j] for j in range(e + 1)] for m in range(n - e + 1)], cols=e + 1)


def veronese(s, t, n: int) -> BinaryForm:
    """Point of the rational normal curve: the coefficients of (s x + t y)^n."""
    s, t = to_fraction(s), to_fraction(t)
    if s == 0 and t == 0:
        raise ZeroPoint("the Veronese map is undefined at (0, 0)")
    return BinaryForm(n, tuple(s ** (n - i) * t**i for i in range(n + 1)))


def linear_power(point: Point, exponent: int) -> BinaryForm:
    return veronese(point[0], point[1], exponent)


def multiply_forms(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    return BinaryForm.from_plain(multiply(QPoly(f.to_plain()), QPoly(g.to_plain())).coeffs)


def root_operator(point: Point) -> DualOperator:
    """Linear operator t0 S - s0 T, which vanishes at (s0:t0) and kills (s0 x + t0 y)^n."""
    s0, t0 = point
    return DualOperator(1, (to_fraction(t0), -to_fraction(s0))).normalized()


def operator_from_roots(roots: Iterable[Tuple[Point, int]]) -> DualOperator:
    """Product of root operators raised to their multiplicities."""
    result = DualOperator(0, (Fraction(1),))
    for point, multiplicity in roots:
        for _ in range(multiplicity):
            result = result * root_operator(point)
    return result


def _substitute_plain(plain: Sequence[Fraction], first: Tuple, second: Tuple) -> Tuple[Fraction, ...]:
    """Plain coefficients of p(first[0] u + first[1] v, second[0] u + second[1] v)."""
    degree = len(plain) - 1
    first_form = QPoly(tuple(to_fraction(c) for c in first))
    second_form = QPoly(tuple(to_fraction(c) for c in second))
    total = [Fraction(0)] * (degree + 1)
    for i, b in enumerate(plain):
        if not b:
            continue
        term = QPoly((b,))
        for _ in range(degree - i):
            term = multiply(term, first_form)
        for _ in range(i):
            term = multiply(term, second_form)
        for j, c in enumerate(term.coeffs):
            total[j] += c
    return tuple(total)


def substitute(f: BinaryForm, a, b, c, d) -> BinaryForm:
    """Transport f along the parameter change (s, t) -> (a s + b t, c s + d t).

    Maps veronese(s, t, n) to veronese(a s + b t, c s + d t, n), so the rational
    normal curve is preserved.
    """
    return BinaryForm.from_plain(_substitute_plain(f.to_plain(), (a, c), (b, d)))


def substitute_operator(phi: DualOperator, a, b, c, d) -> DualOperator:
    """Transport phi so its roots follow the points: the symbol is composed with the adjugate."""
    return DualOperator.from_coeffs(_substitute_plain(phi.coeffs, (d, -b), (-c, a)))


def parse_form(text: str) -> BinaryForm:
    """Parse "a_0,a_1,...,a_n" with each entry an exact rational "p/q" or integer."""
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise FormatError(f"malformed form literal {text!r}")
    if any("." in part or "e" in part.lower() for part in parts):
        raise FormatError(f"decimal entries are not exact rationals: {text!r}")
    try:
        values = [Fraction(part) for part in parts]
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"malformed form literal {text!r}: {e}") from e
    return BinaryForm.from_coeffs(values)


def format_form(f: BinaryForm) -> str:
    return ",".join(str(a) for a in f.coeffs)


def format_operator(phi: DualOperator) -> str:
    """Human readable symbol, e.g. ``s^2*t - 3*t^3``."""
    terms: List[str] = []
    e = phi.degree
    for j, u in enumerate(phi.coeffs):
        if not u:
            continue
        powers = [p for p in (_power("s", e - j), _power("t", j)) if p]
        monomial = "*".join(powers)
        if not monomial:
            terms.append(str(u))
        elif u == 1:
            terms.append(monomial)
        elif u == -1:
            terms.append(f"-{monomial}")
        else:
            terms.append(f"{u}*{monomial}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def _power(name: str, exponent: int) -> str:
    if exponent == 0:
        return ""
    if exponent == 1:
        return name
    return f"{name}^{exponent}"
