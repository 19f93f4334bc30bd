from fractions import Fraction

import numpy as np
import pytest

from apolarity.exactlin.qmatrix import rank
from apolarity.exceptions import DegreeMismatch, FormatError, ZeroPoint
from apolarity.forms.binary_form import (
    BinaryForm,
    DualOperator,
    catalecticant,
    contract,
    format_form,
    format_operator,
    linear_power,
    multiply_forms,
    operator_from_roots,
    parse_form,
    root_operator,
    substitute,
    substitute_operator,
    veronese,
)


def test_veronese_coefficients():
    assert veronese(1, 2, 3).coeffs == (1, 2, 4, 8)
    assert linear_power((1, 0), 4) == BinaryForm.from_coeffs([1, 0, 0, 0, 0])
    with pytest.raises(ZeroPoint):
        veronese(0, 0, 3)


def test_plain_and_binomial_bases():
    assert veronese(1, 1, 2).to_plain() == (1, 2, 1)
    xy = multiply_forms(linear_power((1, 0), 1), linear_power((0, 1), 1))
    assert xy.coeffs == (0, Fraction(1, 2), 0)
    assert BinaryForm.from_plain(xy.to_plain()) == xy


def test_root_operator_annihilates_its_power():
    for point in [(1, 2), (0, 1), (1, 0), (3, -5)]:
        assert contract(root_operator(point), linear_power(point, 6)).is_zero()
    assert root_operator((1, 0)).coeffs == (0, 1)


def test_contraction_on_pure_powers():
    phi = DualOperator.from_coeffs([1, 1])
    assert contract(phi, veronese(1, 2, 3)) == veronese(1, 2, 2).scale(phi(1, 2))
    phi2 = DualOperator.from_coeffs([2, -1, 3])
    assert contract(phi2, veronese(2, 1, 5)) == veronese(2, 1, 3).scale(phi2(2, 1))


def test_contraction_degree_check():
    with pytest.raises(DegreeMismatch):
        contract(DualOperator.from_coeffs([1, 0, 0, 0]), veronese(1, 1, 2))


def test_catalecticant_shape_and_entries():
    f = BinaryForm.from_coeffs([1, 2, 3, 4, 5])
    h = catalecticant(f, 1)
    assert (h.rows, h.cols) == (4, 2)
    assert h.row(2) == (3, 4)
    with pytest.raises(DegreeMismatch):
        catalecticant(f, 5)


def test_operator_from_roots():
    assert operator_from_roots([((1, 0), 2)]).coeffs == (0, 0, 1)
    phi = operator_from_roots([((1, 0), 1), ((0, 1), 1), ((1, 1), 1)])
    for point in [(1, 0), (0, 1), (1, 1)]:
        assert phi(*point) == 0


def test_substitute_moves_the_curve():
    moved = substitute(veronese(1, 2, 5), 2, 1, 1, 3)
    assert moved == veronese(4, 7, 5)


def test_substitution_preserves_apolarity():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b, c, d = (int(v) for v in rng.integers(-4, 5, size=4))
        if a * d - b * c == 0:
            continue
        point = (int(rng.integers(-5, 6)), int(rng.integers(1, 6)))
        phi = substitute_operator(root_operator(point), a, b, c, d)
        f = substitute(linear_power(point, 5), a, b, c, d)
        assert contract(phi, f).is_zero()


def test_parse_and_format_forms():
    f = parse_form("1, 0, -1/2, 3")
    assert f.coeffs == (1, 0, Fraction(-1, 2), 3)
    assert format_form(f) == "1,0,-1/2,3"
    for text in ["1.5,2", "a,b", "", "1,,2", "1e3,1"]:
        with pytest.raises(FormatError):
            parse_form(text)


def test_format_operator():
    assert format_operator(DualOperator.from_coeffs([1, 0, -3])) == "s^2 - 3*t^2"
    assert format_operator(DualOperator.from_coeffs([0, 1, 0])) == "s*t"
    assert format_operator(DualOperator.from_coeffs([0, 0])) == "0"


def test_normalized_representatives():
    assert BinaryForm.from_coeffs(["-1/2", 1]).normalized().coeffs == (1, -2)
    assert DualOperator.from_coeffs([0, -6, 4]).normalized().coeffs == (0, 3, -2)


def random_form(rng, n, height=9):
    coeffs = [int(v) for v in rng.integers(-height, height + 1, size=n + 1)]
    if not any(coeffs):
        coeffs[-1] = 1
    return BinaryForm.from_coeffs(coeffs)


def random_operator(rng, e, height=9):
    return DualOperator.from_coeffs([int(v) for v in rng.integers(-height, height + 1, size=e + 1)])


def test_contraction_by_a_product_is_iterated_contraction():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(2, 11))
        e1 = int(rng.integers(0, n + 1))
        e2 = int(rng.integers(0, n - e1 + 1))
        phi, psi, f = random_operator(rng, e1), random_operator(rng, e2), random_form(rng, n)
        assert contract(phi * psi, f) == contract(phi, contract(psi, f))


def test_catalecticant_rank_survives_shears():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 10))
        f = random_form(rng, n)
        c = int(rng.integers(-5, 6))
        moved = substitute(f, 1, c, 0, 1)
        for e in range(n + 1):
            assert rank(catalecticant(moved, e)) == rank(catalecticant(f, e))


def test_middle_catalecticant_rank_is_bounded():
    rng = np.random.default_rng(13)
    for _ in range(20):
        n = int(rng.integers(1, 13))
        assert rank(catalecticant(random_form(rng, n), n // 2)) <= n // 2 + 1
