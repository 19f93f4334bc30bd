import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import Poly, QQ, Rational, gcd, symbols

from apolarity.bundles.enum_types import BundleKind, CodimTwoStratum
from apolarity.bundles.graded_map import GradedMap, ProjectionCenter, normal_map, section_kernel_dim, tangent_map
from apolarity.exactlin.qmatrix import kernel_basis
from apolarity.exceptions import DegenerateMap, ParameterOutOfRange

logger = logging.getLogger(__name__)

_s, _t = symbols("s t")


@dataclass(frozen=True)
class SplittingType:
    """Degrees of a direct sum of line bundles on P^1, largest first."""

    degrees: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    @classmethod
    def of(cls, degrees: Iterable[int]) -> "SplittingType":
        return cls(tuple(degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def shifted(self, base: int) -> "SplittingType":
        """Degrees base - m for every m."""
        return SplittingType(tuple(base - m for m in self.degrees))

    def count(self, degree: int) -> int:
        return self.degrees.count(degree)

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.degrees)


def splitting_from_sections(graded: GradedMap, expected_rank: int, expected_degree: int) -> SplittingType:
    """Recover E = sum O(m_i) from h(j) = h^0(E(j)) = sum max(0, m_i + j + 1).

    Every m_i is at most 0 because E sits inside a trivial bundle, so the
    first difference c(j) = h(j) - h(j-1) counts the m_i >= -j. The scan stops
    once c(j) reaches the rank.

    Raises:
        DegenerateMap: If the recovered rank or degree disagrees with the expected values
    """
    counts: Dict[int, int] = {}
    previous_h, previous_c = 0, 0
    hard_stop = abs(expected_degree) + 1
    j = 0
    while True:
        h = section_kernel_dim(graded, j)
        c = h - previous_h
        if c > expected_rank:
            raise DegenerateMap(f"kernel sheaf has rank above {expected_rank} (first difference {c} at twist {j})")
        if c < previous_c:
            raise DegenerateMap(f"section counts are not convex at twist {j}")
        if c > previous_c:
            counts[-j] = c - previous_c
        if c == expected_rank:
            break
        if j >= hard_stop:
            raise DegenerateMap(f"no splitting of rank {expected_rank} found by twist {hard_stop}")
        previous_h, previous_c = h, c
        j += 1
    degrees = [m for m, multiplicity in counts.items() for _ in range(multiplicity)]
    if sum(degrees) != expected_degree:
        raise DegenerateMap(f"kernel sheaf has degree {sum(degrees)}, expected {expected_degree}")
    logger.debug(f"kernel splitting {sorted(degrees, reverse=True)} found at twist {j}")
    return SplittingType.of(degrees)


def normal_kernel_splitting(center: ProjectionCenter) -> SplittingType:
    """The m-multiset of the twisted conormal bundle: rank n-k-1, degree -2k."""
    return splitting_from_sections(normal_map(center), center.n - center.k - 1, -2 * center.k)


def normal_splitting(center: ProjectionCenter) -> SplittingType:
    """Splitting type of the normal bundle of the projected curve, n_i = (n+2) - m_i."""
    return normal_kernel_splitting(center).shifted(center.n + 2)


def tangent_splitting(center: ProjectionCenter) -> SplittingType:
    """Splitting type of the restricted tangent bundle, t_i = (n+1) - m_i."""
    kernel = splitting_from_sections(tangent_map(center), center.n - center.k, -center.k)
    return kernel.shifted(center.n + 1)


def graded_map_of(center: ProjectionCenter, kind: BundleKind) -> GradedMap:
    if kind is BundleKind.NORMAL:
        return normal_map(center)
    return tangent_map(center)


def splitting_of(center: ProjectionCenter, kind: BundleKind) -> SplittingType:
    if kind is BundleKind.NORMAL:
        return normal_splitting(center)
    return tangent_splitting(center)


def rank_at_twist_zero(center: ProjectionCenter, kind: BundleKind) -> int:
    graded = graded_map_of(center, kind)
    return graded.domain_rank - section_kernel_dim(graded, 0)


def immersion_check(center: ProjectionCenter) -> bool:
    """True iff the projected parameterization has nowhere vanishing differential.

    The projection is the matrix whose rows span the annihilator of L; the
    check asks that the 2x2 minors of the (d/ds, d/dt) Jacobian have no common
    projective zero, including (1:0).
    """
    n = center.n
    projection = kernel_basis(center.coefficient_matrix())
    coordinates = [
        Poly(sum(Rational(p) * _s ** (n - i) * _t**i for i, p in enumerate(row)), _s, _t, domain=QQ)
        for row in projection
    ]
    by_s = [c.diff(_s) for c in coordinates]
    by_t = [c.diff(_t) for c in coordinates]
    minors: List[Poly] = []
    for a in range(len(coordinates)):
        for b in range(a + 1, len(coordinates)):
            minor = by_s[a] * by_t[b] - by_s[b] * by_t[a]
            if not minor.is_zero:
                minors.append(minor)
    if not minors:
        return False
    common = reduce(gcd, minors)
    logger.debug(f"gcd of {len(minors)} Jacobian minors has degree {common.total_degree()}")
    return common.total_degree() == 0


_STRATUM_EXCESS = {
    (1, 1, 1, 1): CodimTwoStratum.F1,
    (2, 1, 1): CodimTwoStratum.F2,
    (2, 2): CodimTwoStratum.F3,
    (3, 1): CodimTwoStratum.F4,
    (4,): CodimTwoStratum.F5,
}

_STRATUM_BY_RANK = {6: CodimTwoStratum.F1, 5: CodimTwoStratum.F2, 3: CodimTwoStratum.F5}


def _require_codim_two(n: int, k: int) -> None:
    if k != 2 or n < 7:
        raise ParameterOutOfRange(f"codimension-two strata need k = 2 and n >= 7, got n = {n}, k = {k}")


def classify_codim_two(center: ProjectionCenter) -> CodimTwoStratum:
    """Stratum of a line center read off the section ranks at twists 0 and 1 only."""
    n = center.n
    _require_codim_two(n, center.k)
    graded = normal_map(center)
    rank0 = graded.domain_rank - section_kernel_dim(graded, 0)
    if rank0 in _STRATUM_BY_RANK:
        return _STRATUM_BY_RANK[rank0]
    if rank0 == 4:
        h1 = section_kernel_dim(graded, 1)
        if h1 == 2 * (n - 5):
            return CodimTwoStratum.F3
        if h1 == 2 * (n - 5) + 1:
            return CodimTwoStratum.F4
        raise DegenerateMap(f"twist-1 kernel {h1} fits no stratum with rank 4")
    raise DegenerateMap(f"rank {rank0} at twist 0 fits no codimension-two stratum")


def stratum_of_splitting(splitting: SplittingType, n: int) -> CodimTwoStratum:
    """Stratum of a computed k = 2 normal splitting from its summands above n+2."""
    _require_codim_two(n, 2)
    excess = tuple(sorted((d - (n + 2) for d in splitting.degrees if d != n + 2), reverse=True))
    if excess not in _STRATUM_EXCESS:
        raise DegenerateMap(f"splitting {splitting} is not a codimension-two normal splitting for n = {n}")
    return _STRATUM_EXCESS[excess]


def _balanced(total: int, count: int) -> List[int]:
    """count nonpositive integers summing to -total, any two differing by at most one."""
    q, remainder = divmod(total, count)
    return [-(q + 1)] * remainder + [-q] * (count - remainder)


_CODIM_TWO_KERNELS = {
    CodimTwoStratum.F1: [-1, -1, -1, -1],
    CodimTwoStratum.F2: [-1, -1, -2],
    CodimTwoStratum.F3: [-2, -2],
    CodimTwoStratum.F4: [-1, -3],
    CodimTwoStratum.F5: [-4],
}


def stratum_splitting(stratum: CodimTwoStratum, n: int) -> SplittingType:
    _require_codim_two(n, 2)
    nonzero = _CODIM_TWO_KERNELS[stratum]
    return SplittingType.of(nonzero + [0] * (n - 3 - len(nonzero))).shifted(n + 2)


def expected_splitting(kind: BundleKind, n: int, k: int, secancy: Optional[int] = None) -> SplittingType:
    """Closed-form splitting for a center lying in a secancy-secant P^(secancy-1).

    ``secancy=None`` asks for the generic (balanced) splitting.

    Raises:
        ParameterOutOfRange: If no closed form is known for (kind, n, k, secancy)
    """
    if k < 1 or k > n - 3:
        raise ParameterOutOfRange(f"k = {k} outside 1..{n - 3} for n = {n}")
    if kind is BundleKind.NORMAL:
        rank_, base = n - k - 1, n + 2
        if secancy == k + 1:
            return SplittingType.of([0] * (rank_ - 1) + [-2 * k]).shifted(base)
        if k == 2 and secancy == 4:
            return stratum_splitting(CodimTwoStratum.F3, n)
        if k == 2 and secancy == 5:
            return stratum_splitting(CodimTwoStratum.F2, n)
        # below 3k the multiples of the secant operator overfill the twist-0 kernel
        if secancy is None or k == 1 or secancy >= max(2 * k + 2, 3 * k):
            return SplittingType.of(_balanced(2 * k, rank_)).shifted(base)
    else:
        rank_, base = n - k, n + 1
        if secancy == k + 1:
            return SplittingType.of([0] * (rank_ - 1) + [-k]).shifted(base)
        if secancy is None or secancy >= 2 * k:
            return SplittingType.of(_balanced(k, rank_)).shifted(base)
    raise ParameterOutOfRange(f"no closed {kind.value} splitting for n = {n}, k = {k}, secancy {secancy}")
