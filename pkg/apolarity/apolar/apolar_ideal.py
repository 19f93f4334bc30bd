import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from apolarity.exactlin.qmatrix import QMatrix, kernel_basis, rank, solve
from apolarity.exactlin.qpoly import homogeneous_resultant, normalize_point, rational_roots
from apolarity.exceptions import ApolarityError, DegreeMismatch, LengthTooLarge, NotSplitOverQ, ZeroForm
from apolarity.forms.binary_form import (
    BinaryForm,
    DualOperator,
    Point,
    catalecticant,
    contract,
    linear_power,
    multiply_forms,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ApolarIdeal:
    """Ann(f) for a binary form f of degree n: a complete intersection (alpha, beta)."""

    n: int
    s: int
    alpha: DualOperator
    beta: DualOperator
    hilbert: Tuple[int, ...]

    def generators_coprime(self) -> bool:
        """alpha and beta have no common projective zero."""
        return homogeneous_resultant(self.alpha.symbol(), self.beta.symbol()) != 0


@dataclass(frozen=True)
class GADTerm:
    """One summand G * L^(n-g+1) of a generalized additive decomposition."""

    point: Point
    g: int
    G: BinaryForm

    @property
    def coefficient(self) -> Fraction:
        """The scalar c of c * L^n when g = 1."""
        if self.g != 1:
            raise DegreeMismatch(f"term with g = {self.g} has no scalar coefficient")
        return self.G.coeffs[0]


@dataclass(frozen=True)
class GAD:
    n: int
    terms: Tuple[GADTerm, ...]

    @property
    def length(self) -> int:
        return sum(term.g for term in self.terms)

    def is_normalized(self) -> bool:
        """No two L_i proportional and no G_i divisible by its L_i."""
        points = [normalize_point(*term.point) for term in self.terms]
        if len(set(points)) != len(points):
            return False
        for term, (s0, t0) in zip(self.terms, points):
            # L = s0 x + t0 y vanishes at (x, y) = (-t0, s0)
            plain = term.G.to_plain()
            degree = term.G.degree
            value = sum((b * (-t0) ** (degree - i) * s0**i for i, b in enumerate(plain)), Fraction(0))
            if value == 0:
                return False
        return True


def _degree_space(f: BinaryForm, d: int) -> List[DualOperator]:
    """Canonical basis of the degree-d part of Ann(f); every operator of degree > n is apolar."""
    if d > f.degree:
        return [DualOperator(d, tuple(int(i == j) for j in range(d + 1))) for i in range(d + 1)]
    return [DualOperator(d, vector) for vector in kernel_basis(catalecticant(f, d))]


def apolar_space(f: BinaryForm, d: int) -> List[DualOperator]:
    """Basis of Ann(f)_d, integer coefficients, content 1."""
    return _degree_space(f, d)


def hilbert_function(f: BinaryForm) -> Tuple[int, ...]:
    """H(A_f) at degrees 0..n+1: the catalecticant ranks, then 0."""
    n = f.degree
    return tuple(rank(catalecticant(f, e)) for e in range(n + 1)) + (0,)


def _monomials(degree: int) -> List[DualOperator]:
    return [DualOperator(degree, tuple(int(i == j) for j in range(degree + 1))) for i in range(degree + 1)]


def multiples(alpha: DualOperator, degree: int) -> List[DualOperator]:
    """Spanning set of S_(degree - deg alpha) * alpha."""
    if degree < alpha.degree:
        return []
    return [alpha * monomial for monomial in _monomials(degree - alpha.degree)]


def _operator_matrix(operators: Sequence[DualOperator], degree: int) -> QMatrix:
    return QMatrix.from_rows([list(op.coeffs) for op in operators], cols=degree + 1)


def apolar_ideal(f: BinaryForm) -> ApolarIdeal:
    """Generators, initial degree and Hilbert function of Ann(f).

    Raises:
        ZeroForm: If f is the zero form
    """
    if f.is_zero():
        raise ZeroForm("the zero form is annihilated by everything")
    n = f.degree
    hilbert = hilbert_function(f)
    s = next(e for e in range(n + 2) if (e + 1) - hilbert[e] >= 1)
    space = _degree_space(f, s)
    alpha = space[0]
    if 2 * s <= n + 1:
        if len(space) != 1:
            raise ApolarityError(f"degree {s} apolar space has dimension {len(space)}, expected 1")
        beta_degree = n + 2 - s
        spanned = multiples(alpha, beta_degree)
        base_rank = rank(_operator_matrix(spanned, beta_degree))
        beta = next(
            op
            for op in _degree_space(f, beta_degree)
            if rank(_operator_matrix(spanned + [op], beta_degree)) > base_rank
        )
    else:
        # n = 2t and s = t + 1: both generators live in the same degree
        beta = space[1]
    logger.debug(f"Ann(f) for degree {n}: s={s}, generator degrees {alpha.degree} and {beta.degree}")
    return ApolarIdeal(n=n, s=s, alpha=alpha.normalized(), beta=beta.normalized(), hilbert=hilbert)


def length(f: BinaryForm) -> int:
    """l(f): the rank of the middle catalecticant."""
    if f.is_zero():
        raise ZeroForm("the zero form has no length")
    return rank(catalecticant(f, f.degree // 2))


def is_apolar(phi: DualOperator, f: BinaryForm) -> bool:
    return contract(phi, f).is_zero()


def common_apolar(center, d: int) -> Tuple[int, List[DualOperator]]:
    """Degree-d operators apolar to every generator of a center.

    Args:
        center: A ProjectionCenter or any sequence of same-degree BinaryForms
        d (int): Operator degree, at most n

    Returns:
        Tuple[int, List[DualOperator]]: Dimension and canonical basis of the intersection of kernels
    """
    generators = getattr(center, "generators", center)
    n = generators[0].degree
    if d > n:
        raise DegreeMismatch(f"operator degree {d} exceeds form degree {n}")
    stacked = catalecticant(generators[0], d).vstack(*(catalecticant(g, d) for g in generators[1:]))
    basis = [DualOperator(d, vector) for vector in kernel_basis(stacked)]
    return len(basis), basis


def gad_basis(terms: Sequence[Tuple[Point, int]], n: int) -> List[BinaryForm]:
    """Images of the monomial basis of each G_i under G_i -> G_i L_i^(n-g_i+1)."""
    images: List[BinaryForm] = []
    for point, g in terms:
        power = linear_power(point, n - g + 1)
        for j in range(g):
            monomial = BinaryForm.from_plain([int(i == j) for i in range(g)])
            images.append(multiply_forms(monomial, power))
    return images


def gad_map_rank(terms: Sequence[Tuple[Point, int]], n: int) -> int:
    """Rank of (G_1..G_m) -> sum G_i L_i^(n-g_i+1); equals sum g_i when the map is injective."""
    images = gad_basis(terms, n)
    return rank(QMatrix.from_rows([list(f.coeffs) for f in images], cols=n + 1))


def _solve_gad(f: BinaryForm, terms: Sequence[Tuple[Point, int]]) -> Optional[GAD]:
    n = f.degree
    images = gad_basis(terms, n)
    system = QMatrix.from_rows([list(image.coeffs) for image in images], cols=n + 1).transpose()
    solution = solve(system, f.coeffs)
    if solution is None:
        return None
    result: List[GADTerm] = []
    offset = 0
    for point, g in terms:
        G = BinaryForm.from_plain(solution[offset : offset + g])
        offset += g
        result.append(GADTerm(point=normalize_point(*point), g=g, G=G))
    return GAD(n=n, terms=tuple(result))


def evaluate_gad(gad: GAD) -> BinaryForm:
    total = BinaryForm.zero(gad.n)
    for term in gad.terms:
        total = total + multiply_forms(term.G, linear_power(term.point, gad.n - term.g + 1))
    return total


def canonical_form(f: BinaryForm) -> GAD:
    """The unique normalized GAD of length l(f) when 2 l(f) <= n + 1.

    Raises:
        ZeroForm: If f is zero
        LengthTooLarge: If 2 l(f) > n + 1
        NotSplitOverQ: If alpha has an irreducible factor of degree > 1
    """
    if f.is_zero():
        raise ZeroForm("the zero form has no canonical form")
    ideal = apolar_ideal(f)
    n, s = f.degree, ideal.s
    if 2 * s > n + 1:
        raise LengthTooLarge(f"length {s} of a degree {n} form exceeds (n + 1) / 2")
    roots, fully_split = rational_roots(ideal.alpha.symbol())
    if not fully_split:
        raise NotSplitOverQ(f"apolar generator of degree {s} does not split over the rationals")
    gad = _solve_gad(f, roots)
    if gad is None:
        raise ApolarityError("the apolar generator does not support a decomposition of f")
    return gad


def additive_decomposition(f: BinaryForm, points: Sequence[Point]) -> Optional[GAD]:
    """Coefficients c_i with f = sum c_i L_i^n on the given points, or None if f is not in their span."""
    return _solve_gad(f, [(point, 1) for point in points])
