import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from sympy import Poly, QQ, Rational, Symbol, factor_list

from apolarity.exactlin.qmatrix import QMatrix, determinant, to_fraction
from apolarity.exceptions import DegreeMismatch, ZeroPoint, ZeroPolynomial

logger = logging.getLogger(__name__)

_x = Symbol("x")

ProjectivePoint = Tuple[int, int]


@dataclass(frozen=True)
class QPoly:
    """Univariate or binary polynomial with rational coefficients.

    With ``homogeneous=True`` (the default) ``coeffs[j]`` is the coefficient of
    ``s^(deg-j) t^j`` and ``deg = len(coeffs) - 1`` is the formal degree; a zero
    ``coeffs[0]`` then means (1:0) is a root. With ``homogeneous=False``
    ``coeffs[j]`` multiplies ``x^j`` and trailing zeros are trimmed, so the
    leading coefficient is nonzero unless the polynomial is zero.
    """

    coeffs: Tuple[Fraction, ...]
    homogeneous: bool = True

    def __post_init__(self):
        values = tuple(to_fraction(c) for c in self.coeffs)
        if not self.homogeneous:
            while len(values) > 1 and values[-1] == 0:
                values = values[:-1]
        if not values:
            values = (Fraction(0),)
        object.__setattr__(self, "coeffs", values)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def chart_t(self) -> Poly:
        """Dehomogenize at t = 1: the polynomial in x = s/t."""
        if not self.homogeneous:
            return _poly(self.coeffs)
        return _poly(tuple(reversed(self.coeffs)))

    def chart_s(self) -> Poly:
        """Dehomogenize at s = 1: the polynomial in y = t/s."""
        if not self.homogeneous:
            raise DegreeMismatch("the s-chart is only defined for homogeneous readings")
        return _poly(self.coeffs)


def _poly(ascending: Sequence[Fraction]) -> Poly:
    return Poly([Rational(c.numerator, c.denominator) for c in reversed(ascending)], _x, domain=QQ)


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _require_nonzero(p: QPoly) -> None:
    if p.is_zero():
        raise ZeroPolynomial("operation undefined on the zero polynomial")


def _affine_squarefree(poly: Poly) -> bool:
    if poly.degree() <= 0:
        return True
    return poly.gcd(poly.diff(_x)).degree() == 0


def squarefree(p: QPoly) -> bool:
    """True iff p has no repeated factor.

    Homogeneous forms are read on both charts; (1:0) counts as a root of the
    t-chart only through the degree drop, so both readings are required.
    """
    _require_nonzero(p)
    if not p.homogeneous:
        return _affine_squarefree(p.chart_t())
    return _affine_squarefree(p.chart_t()) and _affine_squarefree(p.chart_s())


def normalize_point(s, t) -> ProjectivePoint:
    """Integer representative of (s:t): coprime, first nonzero coordinate positive."""
    s, t = to_fraction(s), to_fraction(t)
    if s == 0 and t == 0:
        raise ZeroPoint("(0:0) is not a projective point")
    scale = s.denominator * t.denominator
    a, b = int(s * scale), int(t * scale)
    g = gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return a, b


def rational_roots(p: QPoly) -> Tuple[List[Tuple[ProjectivePoint, int]], bool]:
    """Projective rational roots of a homogeneous reading, with multiplicities.

    Returns:
        Tuple[List[Tuple[ProjectivePoint, int]], bool]: Roots as normalized (s, t) integer pairs
        with multiplicity, and whether the multiplicities account for the full degree
    """
    _require_nonzero(p)
    if not p.homogeneous:
        p = QPoly(p.coeffs, homogeneous=True)
    roots: List[Tuple[ProjectivePoint, int]] = []
    affine = p.chart_t()
    at_infinity = p.degree - affine.degree()
    if at_infinity > 0:
        roots.append(((1, 0), at_infinity))
    if affine.degree() > 0:
        _, factors = factor_list(affine.as_expr(), _x, domain=QQ)
        for factor, multiplicity in factors:
            factor = Poly(factor, _x, domain=QQ)
            if factor.degree() == 1:
                a, b = factor.all_coeffs()
                # a x + b = 0 with x = s/t
                roots.append((normalize_point(_to_fraction(-b), _to_fraction(a)), int(multiplicity)))
    roots.sort()
    fully_split = sum(m for _, m in roots) == p.degree
    logger.debug(f"{len(roots)} rational roots of a degree {p.degree} form, fully_split={fully_split}")
    return roots, fully_split


def multiply(p: QPoly, q: QPoly) -> QPoly:
    """Product; for homogeneous readings the formal degrees add."""
    result = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                result[i + j] += a * b
    return QPoly(tuple(result), homogeneous=p.homogeneous)


def sylvester_matrix(p: QPoly, q: QPoly) -> QMatrix:
    """Sylvester matrix on the formal degrees of two homogeneous readings."""
    m, n = p.degree, q.degree
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p.coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q.coeffs) + [0] * (size - n - 1 - i))
    return QMatrix.from_rows(rows, cols=size)


def homogeneous_resultant(p: QPoly, q: QPoly) -> Fraction:
    """Resultant of two binary forms; zero iff they share a projective root (including (1:0))."""
    _require_nonzero(p)
    _require_nonzero(q)
    if p.degree + q.degree == 0:
        return Fraction(1)
    return determinant(sylvester_matrix(p, q))
