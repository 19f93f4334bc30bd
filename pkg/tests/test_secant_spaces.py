import numpy as np
import pytest

from apolarity.exactlin.qmatrix import QMatrix, rank
from apolarity.exceptions import ParameterOutOfRange, RankDeficientCombo, RepeatedParams
from apolarity.forms.binary_form import linear_power
from apolarity.secants.enum_types import CodimFamily
from apolarity.secants.secant_spaces import (
    derive_seed,
    expected_codim,
    meets_curve,
    random_center,
    random_combo,
    sample_params,
    sample_params_from,
    secancy_profile,
    secant_center,
    tangent_point,
)


def test_derive_seed_is_splitmix64():
    assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
    assert derive_seed(7, 3) == derive_seed(4, 0)
    assert len({derive_seed(1, i) for i in range(100)}) == 100


def test_sample_params_is_reproducible():
    first = sample_params(6, seed=12, height=10)
    assert first == sample_params(6, seed=12, height=10)
    assert len(set(first)) == 6
    assert all(max(abs(s), abs(t)) <= 10 for s, t in first)


def test_sample_params_bounds():
    with pytest.raises(ParameterOutOfRange):
        sample_params(0, seed=1)
    # (1:0), (0:1), (1:1) and (1:-1) are the only points of height 1
    assert sorted(sample_params(4, seed=3, height=1)) == [(0, 1), (1, -1), (1, 0), (1, 1)]
    with pytest.raises(ParameterOutOfRange):
        sample_params(5, seed=3, height=1)


def test_sample_params_read_the_environment(monkeypatch):
    monkeypatch.setenv("APOLAR_HEIGHT", "2")
    params = sample_params_from(np.random.default_rng(0), 5)
    assert all(max(abs(s), abs(t)) <= 2 for s, t in params)


def test_secant_center_errors():
    with pytest.raises(RepeatedParams):
        secant_center([(1, 0), (2, 0), (1, 1)], 7, 2, [[1, 0, 1], [0, 1, 1]])
    with pytest.raises(RankDeficientCombo):
        secant_center([(1, 0), (0, 1), (1, 1)], 7, 2, [[1, 1, 1], [2, 2, 2]])
    with pytest.raises(RankDeficientCombo):
        secant_center([(1, 0), (0, 1), (1, 1)], 7, 2, [[1, 1, 1]])
    with pytest.raises(ParameterOutOfRange):
        secant_center([(1, i) for i in range(8)], 7, 2, [[1] * 8, list(range(8))])


def test_three_secant_line_profile(rank3_center):
    rebuilt = secant_center([(1, 0), (0, 1), (1, 1)], 7, 2, [[1, 1, 1], [1, 2, 3]])
    assert rebuilt == rank3_center
    profile = secancy_profile(rank3_center)
    assert (profile.min_degree, profile.dimension) == (3, 1)
    assert profile.witness_squarefree and profile.witness_splits
    assert profile.secant_points() == [(0, 1), (1, 0), (1, 1)]


def test_secant_line_itself_has_degree_two_witness():
    center = secant_center([(1, 0), (0, 1)], 7, 2, [[1, 1], [1, 2]])
    profile = secancy_profile(center)
    assert profile.min_degree == 2
    assert profile.witness.coeffs == (0, 1, 0)


def test_generic_line_profile():
    center = random_center(9, 2, np.random.default_rng(61), height=9)
    profile = secancy_profile(center)
    assert (profile.min_degree, profile.dimension) == (7, 2)


def _spans_a_proper_secant_line(combo):
    # every column nonzero keeps L out of the smaller secant spans
    columns_nonzero = all(any(row[j] for row in combo) for j in range(len(combo[0])))
    return columns_nonzero and rank(QMatrix.from_rows(combo)) == 2 and not meets_curve(combo)


def test_secant_points_are_recovered():
    rng = np.random.default_rng(67)
    for s in (3, 4, 5):
        params = sample_params_from(rng, s, height=12)
        combo = random_combo(rng, 2, s, height=5)
        while not _spans_a_proper_secant_line(combo):
            combo = random_combo(rng, 2, s, height=5)
        profile = secancy_profile(secant_center(params, 9, 2, combo))
        assert profile.min_degree == s
        assert set(profile.secant_points()) == set(params)


def test_meets_curve():
    assert meets_curve([[1, 0, 0], [0, 1, 1]])
    assert meets_curve([[1, 1, 0], [1, -1, 0]])
    assert not meets_curve([[1, 1, 0], [0, 1, 1]])


def test_tangent_point():
    assert tangent_point((1, 0), 6, (0, 1)).to_plain() == (0, 1, 0, 0, 0, 0, 0)
    assert tangent_point((2, -1), 5, (2, -1)) == linear_power((2, -1), 5)


@pytest.mark.parametrize(
    "family, n, k, r, expected",
    [
        (CodimFamily.NORMAL, 7, 2, 3, 7),
        (CodimFamily.NORMAL, 9, 3, 0, -2),
        (CodimFamily.TANGENT, 7, 2, 3, 4),
        (CodimFamily.TANGENT, 9, 1, 1, -6),
        (CodimFamily.RAMELLA, 9, 2, 0, 6),
        (CodimFamily.RAMELLA, 8, 1, 0, 0),
    ],
)
def test_expected_codim(family, n, k, r, expected):
    assert expected_codim(family, n, k, r) == expected


def test_codim_specializations():
    for n in range(7, 15):
        assert expected_codim(CodimFamily.NORMAL, n, 2, n - 4) == 2 * n - 7
        assert expected_codim(CodimFamily.NORMAL, n, 2, n - 5) == 2 * n - 10
        for k in range(1, n - 2):
            assert expected_codim(CodimFamily.NORMAL, n, k, n - k - 2) == k * n - k * k - k - 1
