import json

import pytest

from adlvkit.affine import ExtAffineElement, make_basic, omega_from_class
from adlvkit.appendixb import (
    basic_representatives,
    candidates_exhaustive,
    candidates_pruned,
    certification_json,
    class_node,
    expected_J,
    minimal_levi_J,
    verify_uniqueness,
)
from adlvkit.rootdata import parse_datum_spec


def fundamental_class(datum, node):
    return omega_from_class(datum, tuple(int(k == node - 1) for k in range(datum.rank)))


@pytest.mark.parametrize("spec, node, J", [
    ("A3", 2, (1, 3)),
    ("E6", 1, (1, 3, 5, 6)),
    ("E7", 7, (2, 5, 7)),
    ("C3", 3, (1, 3)),
    ("B4", 1, (4,)),
    ("D4", 1, (3, 4)),
    ("D5", 5, (1, 3, 4, 5)),
    ("D6", 6, (1, 3, 6)),
    ("A5", 2, (1, 2, 4, 5)),
])
def test_minimal_levi_sets(spec, node, J):
    d = parse_datum_spec(spec)
    w = minimal_levi_J(d, fundamental_class(d, node))
    assert w.J == J
    assert w.sigma_stable and w.superbasic
    assert d.is_dominant(w.vbar) and w.z(w.v) == w.vbar


def test_superbasic_class_uses_every_simple_reflection():
    d = parse_datum_spec("A4")
    w = minimal_levi_J(d, fundamental_class(d, 2))
    assert w.J == (1, 2, 3, 4)


def test_unramified_class_is_vacuous():
    d = parse_datum_spec("D4")
    rep = verify_uniqueness(d, ExtAffineElement.translation_by((0,) * 4))
    assert rep.J == () and rep.candidates == 0 and rep.all_fixed


def test_c_type_candidates_are_all_fixed():
    d = parse_datum_spec("C4")
    rep = verify_uniqueness(d, fundamental_class(d, 4))
    assert rep.J == (1, 3)
    assert rep.all_fixed and rep.sigma_fixed == rep.candidates


@pytest.mark.parametrize("spec", ["A3", "A4:sigma=2", "A5:sigma=2", "C3", "D4", "D4:sigma=2", "D5:sigma=2"])
def test_pruned_and_exhaustive_agree(spec):
    d = parse_datum_spec(spec)
    for b in basic_representatives(d):
        J0 = tuple(j - 1 for j in minimal_levi_J(d, b).J)
        if not J0:
            continue
        pruned = candidates_pruned(d, J0)
        full = candidates_exhaustive(d, J0)
        assert set(pruned) == set(full)
        assert all(pruned[k][1] == full[k][1] for k in pruned)


def test_basic_representatives_cover_the_fundamental_group():
    assert len(basic_representatives(parse_datum_spec("A3"))) == 4
    assert len(basic_representatives(parse_datum_spec("D4"))) == 4
    assert len(basic_representatives(parse_datum_spec("E7"))) == 2
    assert len(basic_representatives(parse_datum_spec("C3"))) == 2


def test_expected_sets_table():
    assert expected_J("A", 5, 1, 3) == (1, 3, 5)
    assert expected_J("A", 7, 2, 1) == (4,)
    assert expected_J("C", 2, 1, 2) == (1,)
    assert expected_J("D", 4, 1, 4) == (1, 3)
    assert expected_J("D", 6, 1, 6) == (1, 3, 6)
    assert expected_J("D", 5, 1, 5) == (1, 3, 4, 5)
    assert expected_J("D", 6, 2, 6) == (1, 3, 5, 6)
    assert expected_J("D", 5, 2, 5) == (1, 3)
    assert expected_J("E", 6, 2, 1) is None


def test_class_node_prefers_minuscule_nodes():
    d = parse_datum_spec("E7")
    nodes = sorted(class_node(d, b) for b in basic_representatives(d))
    assert nodes == [0, 7]


def test_certification_record():
    data = json.loads(certification_json(parse_datum_spec("A3:sigma=2")))
    assert data["schema"] == 1 and data["verdict"] == "OK"
    assert {tuple(r["J"]) for r in data["results"]} == {(), (2,)}
    assert all({"b", "J", "candidates", "verdict"} <= set(r) for r in data["results"])
