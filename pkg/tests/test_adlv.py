import numpy as np
import pytest

from adlvkit.adlv import (
    RowIndex,
    classify_lambda,
    count_top_classes,
    criterion_mask,
    default_window,
    enumerate_window,
    equivalence_moves,
    generic_vector,
    get_setting,
    gl_superbasic_setting,
    in_levi_chamber,
    is_top_by_criterion,
    lambda_flat,
    small_and_type,
    stratum_dim,
    superbasic_table,
)
from adlvkit.affine import ExtAffineElement, make_basic, omega_from_class
from adlvkit.crystal import crystal_generate, weight_mult_class
from adlvkit.isocrystal import ul_best
from adlvkit.rootdata import DatumError, parse_datum_spec

GL2 = parse_datum_spec("GL_2")
W1 = omega_from_class(GL2, (1, 0))


def test_gl2_zero_coweight_report():
    rep = classify_lambda(GL2, (1, 0), W1, (0, 0))
    assert rep.natural == (1, 0)
    assert rep.R == () and rep.dim == 0 and rep.top
    assert rep.small and rep.flat == (0, 1)


def test_coweight_outside_the_strata_is_rejected():
    with pytest.raises(DatumError):
        classify_lambda(GL2, (1, 0), W1, (5, -3))


def test_natural_part_of_a_shifted_coweight():
    s = get_setting(GL2, W1, (1, 0))
    assert s.natural((1, 0)) == (0, 1)
    assert stratum_dim(GL2, (1, 0), W1, (1, 0)) == 0


def test_levi_criterion_on_gl2():
    s = get_setting(GL2, W1, (1, 0))
    assert is_top_by_criterion(s, (0, 0))


def test_flat_equals_the_best_approximation_when_top():
    s = get_setting(GL2, W1, (1, 0))
    assert lambda_flat(s, (0, 0)) == ul_best(GL2, s.b).rep


def test_generic_vector_for_superbasic_gl3_is_central():
    d = parse_datum_spec("GL_3")
    b = make_basic(d, omega_from_class(d, (1, 0, 0)))
    gen = generic_vector(d, b)
    assert len(set(gen.v)) == 1
    assert gen.levi_indices == (0, 1)


def test_generic_vector_for_unramified_b_is_regular():
    d = parse_datum_spec("C2")
    gen = generic_vector(d, make_basic(d, ExtAffineElement.translation_by((0, 0))))
    assert all(r.pair(gen.v) != 0 for r in d.roots)
    assert gen.levi_indices == ()


def test_generic_vector_for_c2_superbasic():
    d = parse_datum_spec("C2")
    b = make_basic(d, omega_from_class(d, (0, 1)))
    gen = generic_vector(d, b)
    assert b.linear(gen.v) == gen.v
    assert d.is_dominant(gen.v_dominant)


@pytest.mark.parametrize("spec, b_cls, mu", [("GL_3", (1, 0, 0), (1, 0, 0)), ("C2", (0, 1), (0, 1)),
                                             ("A3", (0, 1, 0), (0, 1, 0)), ("D4", (0, 0, 0, 0), (0, 0, 0, 0))])
def test_levi_criterion_matches_the_dimension_everywhere(spec, b_cls, mu):
    d = parse_datum_spec(spec)
    s = get_setting(d, omega_from_class(d, b_cls), mu)
    wd = enumerate_window(s, default_window(s))
    assert np.array_equal(criterion_mask(s, wd), wd.top)
    for lam in wd.lams[wd.top][:20]:
        assert is_top_by_criterion(s, tuple(int(x) for x in lam))


def test_moves_stay_top():
    d = parse_datum_spec("A2")
    s = get_setting(d, omega_from_class(d, (1, 0)), (1, 0))
    wd = enumerate_window(s, 4)
    for lam in wd.lams[wd.top][:15]:
        lam = tuple(int(x) for x in lam)
        for mv in equivalence_moves(s, lam):
            assert len(s.r_set(mv.target)) == s.dim


def test_moves_refuse_non_top_input():
    d = parse_datum_spec("GL_3")
    s = get_setting(d, ExtAffineElement.translation_by((0, 0, 0)), (0, 0, 0))
    wd = enumerate_window(s, 3)
    if (~wd.top).any():
        lam = tuple(int(x) for x in wd.lams[~wd.top][0])
        with pytest.raises(DatumError):
            equivalence_moves(s, lam)


def test_orbit_fixed_move_returns_the_same_point():
    d = parse_datum_spec("GL_2")
    s = get_setting(d, ExtAffineElement.translation_by((0, 0)), (0, 0))
    lam = (0, 0)
    kinds = {mv.kind: mv.target for mv in equivalence_moves(s, lam)}
    assert kinds.get("orbit-fixed", lam) == lam


def test_small_and_type_on_gl2():
    s = get_setting(GL2, W1, (1, 0))
    small, pi = small_and_type(s, (0, 0))
    assert small and pi == ()
    assert in_levi_chamber(s, (0, 0))


@pytest.mark.parametrize("spec, b_cls, mu, expected", [
    ("GL_2", (1, 0), (1, 0), 1),
    ("GL_3", (1, 0, 0), (1, 0, 0), 1),
    ("C2", (0, 1), (0, 1), 1),
    ("A2", (0, 0), (0, 0), 1),
])
def test_small_counts(spec, b_cls, mu, expected):
    d = parse_datum_spec(spec)
    r = count_top_classes(d, mu, omega_from_class(d, b_cls))
    assert r.count == expected and r.stabilized
    assert r.max_stratum_dim == r.expected_dim


def test_product_count_with_two_classes():
    s = gl_superbasic_setting(3, 2, 2, [(1, 0, 0), (1, 0, 0)])
    r = count_top_classes(s.datum, s.mu, s.b)
    assert r.count == 2
    assert weight_mult_class(crystal_generate(s.datum, s.mu), ul_best(s.datum, s.b).rep) == 2


def test_window_override_from_environment(monkeypatch):
    s = get_setting(GL2, W1, (1, 0))
    monkeypatch.setenv("ADLVKIT_WINDOW", "7")
    assert default_window(s) == 7


def test_superbasic_table_for_gl2():
    s = gl_superbasic_setting(2, 1, 1, [(1, 0)])
    t = superbasic_table(s, 2, 1, 1, (0, 0))
    assert t.a == ((2, 1),)
    assert t.flat == ((0, 1),)
    assert t.w == ((2, 1),) and t.coxeter and t.is_top and t.dim_value == 0


def test_superbasic_table_for_gl3_matches_direct_dimension():
    s = gl_superbasic_setting(3, 1, 1, [(1, 0, 0)])
    t = superbasic_table(s, 3, 1, 1, (0, 0, 0))
    assert t.dim_value == len(s.r_set((0, 0, 0)))
    assert t.is_top == (t.coxeter and t.flat_sum_ok)


def test_row_index_lookup():
    rows = np.array([[3, 1], [0, 0], [-2, 5]], dtype=np.int64)
    idx = RowIndex(rows)
    found = idx.lookup(np.array([[0, 0], [-2, 5], [9, 9]], dtype=np.int64))
    assert found.tolist() == [1, 2, -1]


def test_non_minuscule_mu_rejected():
    with pytest.raises(DatumError):
        get_setting(parse_datum_spec("GL_3"), omega_from_class(parse_datum_spec("GL_3"), (1, 0, 0)), (2, 0, -1))
