import numpy as np
import pytest

from apolarity.bundles.enum_types import BundleKind, CodimTwoStratum
from apolarity.bundles.graded_map import ProjectionCenter, normal_map, section_kernel_dim
from apolarity.bundles.splitting import (
    SplittingType,
    classify_codim_two,
    expected_splitting,
    immersion_check,
    normal_kernel_splitting,
    normal_splitting,
    rank_at_twist_zero,
    splitting_of,
    stratum_of_splitting,
    stratum_splitting,
    tangent_splitting,
)
from apolarity.exactlin.qmatrix import QMatrix, rank
from apolarity.exceptions import DegenerateMap, ParameterOutOfRange
from apolarity.forms.binary_form import BinaryForm, substitute
from apolarity.secants.secant_spaces import (
    meets_curve,
    random_center,
    random_combo,
    sample_params_from,
    secancy_profile,
    secant_center,
    tangent_point,
)


def test_splitting_type_ordering_and_text():
    splitting = SplittingType.of([9, 13, 9, 9])
    assert splitting.degrees == (13, 9, 9, 9)
    assert str(splitting) == "13,9,9,9"
    assert (splitting.rank, splitting.degree, splitting.count(9)) == (4, 40, 3)
    assert SplittingType.of([0, -4]).shifted(9) == SplittingType.of([9, 13])


def test_three_point_line_center(rank3_center):
    assert str(normal_splitting(rank3_center)) == "13,9,9,9"
    assert str(tangent_splitting(rank3_center)) == "10,8,8,8,8"
    assert normal_kernel_splitting(rank3_center) == SplittingType.of([0, 0, 0, -4])
    assert rank_at_twist_zero(rank3_center, BundleKind.NORMAL) == 3
    assert classify_codim_two(rank3_center) is CodimTwoStratum.F5
    assert stratum_of_splitting(normal_splitting(rank3_center), 7) is CodimTwoStratum.F5


def test_point_centers(point_center, secant_point_center):
    assert str(splitting_of(point_center, BundleKind.NORMAL)) == "9,9,8,8"
    assert str(splitting_of(secant_point_center, BundleKind.NORMAL)) == "10,8,8,8"
    assert splitting_of(secant_point_center, BundleKind.NORMAL) == expected_splitting(BundleKind.NORMAL, 6, 1, 2)
    assert splitting_of(point_center, BundleKind.NORMAL) == expected_splitting(BundleKind.NORMAL, 6, 1)


def test_tangent_point_is_degenerate():
    # x^5 y sits on the tangent line at (1:0); the projection is ramified there
    center = ProjectionCenter(6, 1, (tangent_point((1, 0), 6, (0, 1)),))
    with pytest.raises(DegenerateMap):
        normal_splitting(center)
    assert not immersion_check(center)


def test_immersion_of_ordinary_projections(point_center, secant_point_center, rank3_center):
    assert immersion_check(point_center)
    assert immersion_check(secant_point_center)
    assert immersion_check(rank3_center)


def test_degree_and_rank_of_random_splittings():
    rng = np.random.default_rng(43)
    for n, k in [(6, 1), (7, 2), (8, 2), (9, 3), (8, 4)]:
        center = random_center(n, k, rng, height=9)
        normal = normal_splitting(center)
        tangent = tangent_splitting(center)
        assert (normal.rank, normal.degree) == (n - k - 1, (n - k - 1) * (n + 2) + 2 * k)
        assert (tangent.rank, tangent.degree) == (n - k, (n - k) * (n + 1) + k)
        assert normal == expected_splitting(BundleKind.NORMAL, n, k)
        assert tangent == expected_splitting(BundleKind.TANGENT, n, k)


def test_splitting_is_basis_independent(rank3_center):
    f, g = rank3_center.generators
    rebased = ProjectionCenter(7, 2, (f + g.scale(3), f.scale(2) - g))
    assert normal_splitting(rebased) == normal_splitting(rank3_center)
    assert tangent_splitting(rebased) == tangent_splitting(rank3_center)


def test_splitting_is_reparameterization_invariant(rank3_center, point_center):
    for center in (rank3_center, point_center):
        moved = ProjectionCenter(center.n, center.k, tuple(substitute(f, 2, 1, 1, 1) for f in center.generators))
        assert normal_splitting(moved) == normal_splitting(center)
        assert tangent_splitting(moved) == tangent_splitting(center)


def test_classifier_agrees_with_splitting_on_random_lines():
    rng = np.random.default_rng(47)
    for n in (7, 8):
        center = random_center(n, 2, rng, height=9)
        stratum = classify_codim_two(center)
        assert stratum is CodimTwoStratum.F1
        assert stratum_of_splitting(normal_splitting(center), n) is stratum
        assert stratum_splitting(stratum, n) == normal_splitting(center)


def test_stratum_sections_match_their_profiles():
    for n in (7, 9):
        h1_f3 = sum(max(0, m + 2) for m in stratum_splitting(CodimTwoStratum.F3, n).shifted(n + 2).degrees)
        h1_f4 = sum(max(0, m + 2) for m in stratum_splitting(CodimTwoStratum.F4, n).shifted(n + 2).degrees)
        assert (h1_f3, h1_f4) == (2 * (n - 5), 2 * (n - 5) + 1)


def test_codim_two_requires_lines():
    point = ProjectionCenter(6, 1, (BinaryForm.from_coeffs([2, 1, 1, 1, 1, 1, 2]),))
    with pytest.raises(ParameterOutOfRange):
        classify_codim_two(point)
    with pytest.raises(ParameterOutOfRange):
        stratum_splitting(CodimTwoStratum.F1, 6)


def test_rank_at_twist_zero_of_generic_line():
    rng = np.random.default_rng(53)
    center = random_center(9, 2, rng, height=9)
    assert rank_at_twist_zero(center, BundleKind.NORMAL) == 6
    graded = normal_map(center)
    assert section_kernel_dim(graded, 0) == graded.domain_rank - 6


@pytest.mark.parametrize(
    "kind, n, k, secancy, expected",
    [
        (BundleKind.NORMAL, 9, 3, 4, "17,11,11,11,11"),
        (BundleKind.NORMAL, 7, 2, 3, "13,9,9,9"),
        (BundleKind.NORMAL, 8, 2, 4, "12,12,10,10,10"),
        (BundleKind.NORMAL, 8, 2, 5, "12,11,11,10,10"),
        (BundleKind.NORMAL, 7, 2, None, "10,10,10,10"),
        (BundleKind.NORMAL, 6, 1, None, "9,9,8,8"),
        (BundleKind.TANGENT, 6, 1, None, "8,7,7,7,7"),
        (BundleKind.TANGENT, 7, 2, 3, "10,8,8,8,8"),
        (BundleKind.TANGENT, 9, 3, 6, "11,11,11,10,10,10"),
    ],
)
def test_expected_splittings(kind, n, k, secancy, expected):
    assert str(expected_splitting(kind, n, k, secancy)) == expected


def test_expected_splitting_out_of_range():
    with pytest.raises(ParameterOutOfRange):
        expected_splitting(BundleKind.NORMAL, 12, 3, 8)
    with pytest.raises(ParameterOutOfRange):
        expected_splitting(BundleKind.NORMAL, 10, 3, 6)
    with pytest.raises(ParameterOutOfRange):
        expected_splitting(BundleKind.TANGENT, 10, 3, 5)
    with pytest.raises(ParameterOutOfRange):
        expected_splitting(BundleKind.NORMAL, 6, 4)


def center_in_secant_span(rng, n, k, s):
    """A center inside an s-secant P^(s-1) and in no smaller secant space."""
    while True:
        combo = random_combo(rng, k, s, height=9)
        if meets_curve(combo) or rank(QMatrix.from_rows(combo)) < k:
            continue
        center = secant_center(sample_params_from(rng, s, height=12), n, k, combo)
        if secancy_profile(center).min_degree == s:
            return center


@pytest.mark.parametrize("n, k", [(9, 2), (12, 3)])
def test_closed_forms_match_secant_centers(n, k):
    rng = np.random.default_rng(71 + n)
    for s in range(k + 1, 3 * k + 2):
        try:
            expected = expected_splitting(BundleKind.NORMAL, n, k, s)
        except ParameterOutOfRange:
            assert k + 2 <= s < 3 * k
            continue
        assert normal_splitting(center_in_secant_span(rng, n, k, s)) == expected


RANDOM_SHAPES = [(6, 1), (7, 2), (8, 2), (8, 3)]


def sample_center(rng, index):
    """Generic centers on even draws, centers in (k+1)-secant spans on odd ones."""
    n, k = RANDOM_SHAPES[index % len(RANDOM_SHAPES)]
    if index % 2 == 0:
        return random_center(n, k, rng, height=9)
    return center_in_secant_span(rng, n, k, k + 1)


def test_splitting_is_basis_independent_on_random_centers():
    rng = np.random.default_rng(79)
    for index in range(20):
        center = sample_center(rng, index)
        n, k = center.n, center.k
        change = random_combo(rng, k, k, height=3)
        while rank(QMatrix.from_rows(change)) < k:
            change = random_combo(rng, k, k, height=3)
        generators = []
        for row in change:
            f = BinaryForm.zero(n)
            for weight, g in zip(row, center.generators):
                f = f + g.scale(weight)
            generators.append(f)
        rebased = ProjectionCenter(n, k, tuple(generators))
        assert normal_splitting(rebased) == normal_splitting(center)
        assert tangent_splitting(rebased) == tangent_splitting(center)


def test_splitting_is_reparameterization_invariant_on_random_centers():
    rng = np.random.default_rng(83)
    for index in range(20):
        center = sample_center(rng, index)
        a, b, c, d = (int(v) for v in rng.integers(-3, 4, size=4))
        while a * d - b * c == 0:
            a, b, c, d = (int(v) for v in rng.integers(-3, 4, size=4))
        moved = ProjectionCenter(center.n, center.k, tuple(substitute(f, a, b, c, d) for f in center.generators))
        assert normal_splitting(moved) == normal_splitting(center)
        assert tangent_splitting(moved) == tangent_splitting(center)
