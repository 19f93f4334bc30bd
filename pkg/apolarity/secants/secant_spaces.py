import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

import numpy as np

from apolarity.apolar.apolar_ideal import common_apolar
from apolarity.bundles.graded_map import ProjectionCenter
from apolarity.exactlin.qmatrix import QMatrix, rank
from apolarity.exactlin.qpoly import normalize_point, rational_roots, squarefree
from apolarity.exceptions import (
    InvalidCenter,
    ParameterOutOfRange,
    RankDeficientCombo,
    RepeatedParams,
    ZeroPoint,
)
from apolarity.forms.binary_form import BinaryForm, DualOperator, Point, linear_power, multiply_forms, veronese
from apolarity.secants.enum_types import CodimFamily
from apolarity.utils.settings import Settings

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
# combinations tried when a multi-dimensional apolar space has no square-free basis vector
_SQUAREFREE_PROBES = 32


def derive_seed(seed: int, index: int) -> int:
    """splitmix64 of (seed xor index): independent per-trial seeds, schedule independent."""
    z = ((seed ^ index) + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _random_point(rng: np.random.Generator, height: int) -> Point:
    while True:
        s, t = (int(v) for v in rng.integers(-height, height + 1, size=2))
        try:
            return normalize_point(s, t)
        except ZeroPoint:
            continue


def _available_points(height: int) -> int:
    """Number of projective points (s:t) with coprime |s|, |t| <= height."""
    points = {
        normalize_point(s, t) for s in range(0, height + 1) for t in range(-height, height + 1) if gcd(s, t) == 1
    }
    return len(points)


def sample_params(count: int, seed: int, height: Optional[int] = None) -> List[Point]:
    """count distinct projective points (s:t) with |s|, |t| <= height, reproducible from seed."""
    if count < 1:
        raise ParameterOutOfRange(f"cannot sample {count} parameters")
    return sample_params_from(np.random.default_rng(seed), count, height)


def sample_params_from(rng: np.random.Generator, count: int, height: Optional[int] = None) -> List[Point]:
    height = Settings.height(height)
    if count > height and count > _available_points(height):
        raise ParameterOutOfRange(f"{count} distinct points do not exist at height {height}")
    points: List[Point] = []
    while len(points) < count:
        point = _random_point(rng, height)
        if point not in points:
            points.append(point)
    return points


def random_combo(rng: np.random.Generator, rows: int, cols: int, height: Optional[int] = None) -> List[List[int]]:
    height = Settings.height(height)
    return [[int(v) for v in rng.integers(-height, height + 1, size=cols)] for _ in range(rows)]


def meets_curve(combo: Sequence[Sequence]) -> bool:
    """True when some unit vector lies in the row space of combo, i.e. L contains one of the curve points."""
    matrix = QMatrix.from_rows(combo)
    base = rank(matrix)
    for j in range(matrix.cols):
        unit = QMatrix.from_rows([[int(i == j) for i in range(matrix.cols)]])
        if rank(matrix.vstack(unit)) == base:
            return True
    return False


def secant_center(params: Sequence[Point], n: int, k: int, combo: Sequence[Sequence]) -> ProjectionCenter:
    """Center spanned by f_i = sum_j combo[i][j] * veronese(params_j, n).

    Raises:
        RepeatedParams: If two params are the same projective point
        RankDeficientCombo: If combo is not k x len(params) of rank k
    """
    points = [normalize_point(*p) for p in params]
    if len(set(points)) != len(points):
        raise RepeatedParams(f"repeated curve parameters in {points}")
    if len(points) > n:
        raise ParameterOutOfRange(f"{len(points)} curve points span all of P^{n}")
    matrix = QMatrix.from_rows(combo, cols=len(points))
    if matrix.rows != k or rank(matrix) != k:
        raise RankDeficientCombo(f"combination matrix must be {k}x{len(points)} of rank {k}")
    powers = [veronese(s, t, n) for s, t in points]
    generators = []
    for i in range(k):
        f = BinaryForm.zero(n)
        for j, power in enumerate(powers):
            if matrix[i, j]:
                f = f + power.scale(matrix[i, j])
        generators.append(f)
    return ProjectionCenter(n, k, tuple(generators))


def random_center(n: int, k: int, rng: np.random.Generator, height: Optional[int] = None) -> ProjectionCenter:
    """Center with independent bounded-height integer coefficients."""
    height = Settings.height(height)
    for attempt in range(Settings.max_resamples()):
        rows = random_combo(rng, k, n + 1, height)
        try:
            return ProjectionCenter.from_rows(rows)
        except InvalidCenter as e:
            logger.warning(f"Resampling random center (attempt {attempt + 1}): {e}")
    raise InvalidCenter(f"no valid random center for n = {n}, k = {k} within {Settings.max_resamples()} draws")


def tangent_point(param: Point, n: int, direction: Point) -> BinaryForm:
    """G * L^(n-1) with G = d0 x + d1 y: a point on the tangent line of the curve at param."""
    G = BinaryForm.from_plain(list(direction))
    return multiply_forms(G, linear_power(param, n - 1))


@dataclass(frozen=True)
class SecancyProfile:
    """Smallest d with a common apolar form of degree d, and what that form says about L."""

    min_degree: int
    dimension: int
    witness: Optional[DualOperator]
    witness_squarefree: bool
    witness_splits: bool

    @property
    def found(self) -> bool:
        return self.witness is not None

    def secant_points(self) -> List[Point]:
        """Curve points whose span contains L, when the witness certifies them."""
        if not (self.witness_squarefree and self.witness_splits):
            return []
        roots, _ = rational_roots(self.witness.symbol())
        return [point for point, _ in roots]


def _probe_candidates(basis: List[DualOperator], degree: int) -> List[DualOperator]:
    candidates = list(basis)
    if len(basis) > 1:
        rng = np.random.default_rng(degree)
        for _ in range(_SQUAREFREE_PROBES):
            weights = [int(v) for v in rng.integers(-3, 4, size=len(basis))]
            combined = DualOperator(degree, (0,) * (degree + 1))
            for weight, op in zip(weights, basis):
                combined = combined + op.scale(weight)
            if not combined.is_zero():
                candidates.append(combined)
    return candidates


def secancy_profile(center: ProjectionCenter) -> SecancyProfile:
    """Scan d = 1..n for the first degree with common apolar forms.

    A square-free witness is looked for on the canonical basis and then on
    deterministic integer combinations; not finding one means "not certified".
    Beyond d = n the profile reports min_degree n+1 and no witness.
    """
    n = center.n
    for d in range(1, n + 1):
        dimension, basis = common_apolar(center, d)
        if dimension == 0:
            continue
        chosen, chosen_squarefree, chosen_splits = basis[0], False, False
        for candidate in _probe_candidates(basis, d):
            if not squarefree(candidate.symbol()):
                continue
            splits = rational_roots(candidate.symbol())[1]
            if not chosen_squarefree or (splits and not chosen_splits):
                chosen, chosen_squarefree, chosen_splits = candidate, True, splits
            if splits:
                break
        if not chosen_squarefree:
            chosen_splits = rational_roots(chosen.symbol())[1]
        logger.debug(f"secancy min_degree {d}, dimension {dimension}, squarefree={chosen_squarefree}")
        return SecancyProfile(
            min_degree=d,
            dimension=dimension,
            witness=chosen.normalized(),
            witness_squarefree=chosen_squarefree,
            witness_splits=chosen_splits,
        )
    return SecancyProfile(
        min_degree=n + 1, dimension=0, witness=None, witness_squarefree=False, witness_splits=False
    )


def expected_codim(family: CodimFamily, n: int, k: int, r: int) -> int:
    """Expected codimension of the locus with the given splitting behaviour; may be negative."""
    if family is CodimFamily.NORMAL:
        return 2 * k + k * r - n + r + 1
    if family is CodimFamily.TANGENT:
        return k - n + r + k * r
    return (k - 1) * (n - k - 1)
