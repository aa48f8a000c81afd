from fractions import Fraction

import pytest

from adlvkit.affine import ExtAffineElement, make_basic, omega_from_class
from adlvkit.isocrystal import (
    adlv_dim,
    adlv_nonempty,
    defect,
    kottwitz,
    kottwitz_of_coweight,
    newton,
    sigma_average,
    ul_best,
    ul_best_bruteforce,
)
from adlvkit.rootdata import parse_datum_spec

GL2 = parse_datum_spec("GL_2")


def gl_power(n: int, m: int):
    d = parse_datum_spec(f"GL_{n}")
    w = omega_from_class(d, (1,) + (0,) * (n - 1))
    x = ExtAffineElement.translation_by((0,) * n)
    for _ in range(m):
        x = x * w
    return d, make_basic(d, x)


def test_kottwitz_point_of_gl2_generator():
    _, b = gl_power(2, 1)
    assert kottwitz(GL2, b) == kottwitz_of_coweight(GL2, (1, 0))
    assert kottwitz(GL2, b) != kottwitz_of_coweight(GL2, (0, 0))
    assert kottwitz_of_coweight(GL2, (1, -1)) == kottwitz_of_coweight(GL2, (0, 0))


def test_newton_points():
    _, b = gl_power(2, 1)
    assert newton(GL2, b) == (Fraction(1, 2), Fraction(1, 2))
    assert newton(GL2, ExtAffineElement.translation_by((0, 2))) == (2, 0)


def test_sigma_average_on_a_swapped_product():
    d = parse_datum_spec("GL_2:d=2")
    half = Fraction(1, 2)
    assert sigma_average(d, (1, 0, 0, 0)) == (half, 0, half, 0)


@pytest.mark.parametrize("n, m, expected", [(2, 0, 0), (2, 1, 1), (3, 1, 2), (3, 2, 2), (4, 1, 3), (4, 3, 3), (4, 2, 2)])
def test_defect_of_gl_powers(n, m, expected):
    d, b = gl_power(n, m)
    assert defect(d, b) == expected


def test_best_approximation_examples():
    _, b = gl_power(2, 1)
    assert ul_best(GL2, b).rep == (0, 1)
    d3, b3 = gl_power(3, 1)
    assert ul_best(d3, b3).rep == (0, 0, 1)
    assert ul_best(GL2, make_basic(GL2, ExtAffineElement.translation_by((0, 0)))).rep == (0, 0)


@pytest.mark.parametrize("spec", ["A2", "C2", "B3", "D4", "A3:sigma=2"])
def test_best_approximation_matches_brute_force(spec):
    from adlvkit.suite import minuscule_classes

    d = parse_datum_spec(spec)
    for cls in minuscule_classes(d):
        b = make_basic(d, omega_from_class(d, cls))
        assert ul_best(d, b).rep == ul_best_bruteforce(d, b)


def test_nonemptiness_and_dimension():
    _, b = gl_power(2, 1)
    one = make_basic(GL2, ExtAffineElement.translation_by((0, 0)))
    assert adlv_nonempty(GL2, (1, 0), b)
    assert not adlv_nonempty(GL2, (1, 0), one)
    assert adlv_nonempty(GL2, (0, 0), one)
    assert adlv_dim(GL2, (1, 0), b) == 0
    assert adlv_dim(GL2, (0, 0), one) == 0
    d3, b3 = gl_power(3, 1)
    assert adlv_dim(d3, (2, 0, -1), b3) == 2
