import pytest

from adlvkit.crystal import (
    character,
    crystal_generate,
    endpoint,
    restrict_levi,
    root_op_e,
    root_op_f,
    straight_path,
    tensor_decompose,
    to_json,
    weight_mult_class,
    weights,
)
from adlvkit.oracles import freudenthal, weyl_dimension
from adlvkit.rootdata import DatumError, parse_datum_spec

GL2 = parse_datum_spec("GL_2")
GL3 = parse_datum_spec("GL_3")


def test_lowering_a_straight_path():
    p = straight_path((1, 0))
    q = root_op_f(GL2, 0, p)
    assert q == straight_path((0, 1))
    assert root_op_f(GL2, 0, q) is None
    assert root_op_e(GL2, 0, q) == p


def test_standard_crystal_of_gl3():
    c = crystal_generate(GL3, (1, 0, 0))
    assert sorted(weights(c)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(c.edges) == 2


def test_adjoint_a2_crystal():
    d = parse_datum_spec("A2")
    c = crystal_generate(d, (1, 1))
    assert len(c) == 8
    assert character(c)[(0, 0)] == 2


def test_trivial_crystal():
    assert len(crystal_generate(GL3, (0, 0, 0))) == 1


def test_non_dominant_highest_weight_rejected():
    with pytest.raises(DatumError):
        crystal_generate(GL3, (0, 1, 0))


def test_weight_class_counts():
    assert weight_mult_class(crystal_generate(GL2, (1, 0)), (0, 1)) == 1
    prod = parse_datum_spec("GL_3:d=2")
    c = crystal_generate(prod, (1, 0, 0, 1, 0, 0))
    assert weight_mult_class(c, (0, 0, 0, 0, 1, 1)) == 2


def test_tensor_products():
    assert tensor_decompose(GL2, [(1, 0), (1, 0)]) == {(2, 0): 1, (1, 1): 1}
    assert tensor_decompose(GL3, [(1, 0, 0)] * 3) == {(3, 0, 0): 1, (2, 1, 0): 2, (1, 1, 1): 1}
    assert tensor_decompose(GL3, [(2, 1, 0), (0, 0, 0)]) == {(2, 1, 0): 1}


def test_tensor_dimensions_add_up():
    d = parse_datum_spec("C2")
    mus = [(0, 1), (1, 0), (0, 1)]
    dec = tensor_decompose(d, mus)
    total = 1
    for mu in mus:
        total *= weyl_dimension(d, mu)
    assert sum(k * weyl_dimension(d, nu) for nu, k in dec.items()) == total


def test_restriction_to_levis():
    c = crystal_generate(GL3, (1, 0, 0))
    assert restrict_levi(c, [0]) == {(1, 0, 0): 1, (0, 0, 1): 1}
    assert restrict_levi(c, [0, 1]) == {(1, 0, 0): 1}
    c2 = crystal_generate(GL3, (2, 1, 0))
    assert restrict_levi(c2, []) == dict(character(c2))


@pytest.mark.parametrize("spec, mu", [("B2", (1, 1)), ("C3", (1, 0, 1)), ("D4", (1, 0, 0, 1)), ("GL_4", (2, 1, 1, 0))])
def test_against_reference_formulas(spec, mu):
    d = parse_datum_spec(spec)
    c = crystal_generate(d, mu)
    assert len(c) == weyl_dimension(d, mu)
    assert dict(character(c)) == freudenthal(d, mu)


def test_json_dump_is_consistent():
    import json

    c = crystal_generate(GL3, (1, 0, 0))
    data = json.loads(to_json(c))
    assert data["schema"] == 1 and len(data["nodes"]) == 3
    assert [n["weight"] for n in data["nodes"]] == [list(endpoint(p)) for p in c.elements]
