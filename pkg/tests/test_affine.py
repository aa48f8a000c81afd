import pytest

from adlvkit.affine import (
    ExtAffineElement,
    aff_length,
    aff_length_by_inversions,
    epsilon_of,
    fixed_by_twist,
    format_element,
    lambda_gamma,
    make_basic,
    natural_dagger,
    omega_from_class,
    omega_generators,
    orbit_data,
    parse_element,
    tilde_root,
)
from adlvkit.rootdata import DatumError, parse_datum_spec

GL2 = parse_datum_spec("GL_2")
GL3 = parse_datum_spec("GL_3")


def test_tilde_root_sign_rule():
    assert tilde_root(GL2.root((-1, 1))).k == 0
    assert tilde_root(GL2.root((1, -1))).k == 1


def test_lengths():
    ident = ExtAffineElement.translation_by((0, 0))
    assert aff_length(GL2, ident) == 0
    assert aff_length(GL2, ExtAffineElement.translation_by((1, 0))) == 1
    w1 = omega_from_class(GL2, (1, 0))
    assert aff_length(GL2, w1) == 0


@pytest.mark.parametrize("spec", ["A2", "C2", "GL_3", "B3"])
def test_length_formulas_agree(spec):
    d = parse_datum_spec(spec)
    for lam in [(1,) + (0,) * (d.rank - 1), (2, -1) + (0,) * (d.rank - 2)]:
        for word in ([], [0], [0, 1], [1, 0, 1]):
            x = ExtAffineElement(lam, d.from_word(word))
            assert aff_length(d, x) == aff_length_by_inversions(d, x)


def test_omega_of_gl2_squares_to_central_translation():
    w1 = omega_generators(GL2).generators[0]
    assert w1 * w1 == ExtAffineElement.translation_by((1, 1))


def test_omega_orders():
    assert omega_generators(parse_datum_spec("A2")).orders == (3,)
    assert omega_generators(parse_datum_spec("A3:sc")).generators == ()
    assert omega_generators(parse_datum_spec("D4")).orders == (2, 2)


def test_lambda_gamma_values():
    a = GL2.root((1, -1))
    assert lambda_gamma((0, 0), a) == -1
    assert lambda_gamma((0, 0), -a) == 0


def test_epsilon_of_zero_is_longest():
    for spec in ("GL_3", "C2", "D4"):
        d = parse_datum_spec(spec)
        assert epsilon_of(d, (0,) * d.rank) == d.longest_element()


def test_epsilon_of_gl3_example():
    eps = epsilon_of(GL3, (1, 0, 0))
    assert eps((1, 0, 0)) == (1, 0, 0)
    assert eps((0, 1, 0)) == (0, 0, 1)
    assert eps((0, 0, 1)) == (0, 1, 0)


def test_dagger_and_natural_on_gl2():
    b = make_basic(GL2, omega_from_class(GL2, (1, 0)))
    assert natural_dagger(b, (0, 0)) == ((1, 0), (1, 0))


def test_fixed_by_twist():
    b = make_basic(GL2, omega_from_class(GL2, (1, 0)))
    assert fixed_by_twist(ExtAffineElement.translation_by((1, 1)), b)
    assert not fixed_by_twist(ExtAffineElement.translation_by((1, 0)), b)
    assert fixed_by_twist(b.element, b)


def test_make_basic_rejects_positive_length():
    with pytest.raises(DatumError):
        make_basic(GL2, ExtAffineElement.translation_by((1, 0)))


def test_orbit_of_unramified_b_is_a_singleton():
    d = parse_datum_spec("A2")
    b = make_basic(d, ExtAffineElement.translation_by((0, 0)))
    for alpha in d.pi_set():
        od = orbit_data(b, alpha)
        assert od.finite and len(od.roots) == 1
        assert aff_length(d, od.longest) >= 1


def test_superbasic_a1_orbit_is_infinite():
    d = parse_datum_spec("A1")
    b = make_basic(d, omega_from_class(d, (1,)))
    od = orbit_data(b, d.root((-1,)))
    assert {r.coords for r in od.roots} == {(-1,), (1,)}
    assert not od.finite and od.longest is None


def test_gl4_orbit_under_rotation_by_two():
    d = parse_datum_spec("GL_4")
    b = make_basic(d, omega_from_class(d, (1, 1, 0, 0)))
    od = orbit_data(b, d.root((-1, 1, 0, 0)))
    assert [r.coords for r in od.roots] == [(-1, 1, 0, 0), (0, 0, -1, 1)]
    assert od.finite and all(a.k == 0 for a in od.affine)
    assert od.longest.translation == (0, 0, 0, 0)
    assert od.longest((1, 2, 3, 4)) == (2, 1, 4, 3)


def test_element_text_round_trip():
    d = parse_datum_spec("C3")
    x = ExtAffineElement((1, -2, 0), d.from_word([2, 1, 0]))
    assert parse_element(format_element(x, d), d) == x
    with pytest.raises(ValueError):
        parse_element("t^(1,2)*s1", d)
