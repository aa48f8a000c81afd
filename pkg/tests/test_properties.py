"""Randomised identities over several data, driven by hypothesis."""

from functools import lru_cache

from hypothesis import given, strategies as st

from adlvkit.affine import (
    ExtAffineElement,
    aff_length,
    epsilon_of,
    lambda_gamma,
    make_basic,
    natural,
    omega_from_class,
    omega_generators,
)
from adlvkit.crystal import crystal_generate, root_op_e, root_op_f, tensor_decompose
from adlvkit.lattice import Lattice, mat_mul, smith_normal_form
from adlvkit.oracles import weyl_dimension
from adlvkit.rootdata import parse_datum_spec
from adlvkit.suite import adjoint_cases, setting_of

SPECS = ["GL_2", "GL_3", "GL_4", "A2", "A3", "B2", "C2", "C3", "B3", "D4", "A3:sigma=2", "D4:sigma=2", "GL_2:d=2"]


@lru_cache(maxsize=None)
def datum(spec):
    return parse_datum_spec(spec)


@lru_cache(maxsize=None)
def settings():
    out = []
    for spec in ("A2", "C2", "A3", "A3:sigma=2", "D4:sigma=2"):
        out += [setting_of(c) for c in adjoint_cases(spec)]
    from adlvkit.adlv import gl_superbasic_setting
    out.append(gl_superbasic_setting(3, 2, 2, [(1, 0, 0), (1, 0, 0)]))
    out.append(gl_superbasic_setting(4, 1, 2, [(1, 1, 0, 0)]))
    return out


def coweights(rank, spread=6):
    return st.lists(st.integers(-spread, spread), min_size=rank, max_size=rank).map(tuple)


@st.composite
def datum_and_coweight(draw, specs=SPECS):
    d = datum(draw(st.sampled_from(specs)))
    return d, draw(coweights(d.rank))


@st.composite
def setting_and_coweight(draw):
    s = draw(st.sampled_from(settings()))
    return s, draw(coweights(s.datum.rank))


@given(datum_and_coweight(), st.data())
def test_reflections_are_involutions(dl, data):
    d, lam = dl
    r = data.draw(st.sampled_from(d.roots))
    assert d.reflect(d.reflect(lam, r), r) == lam


@given(datum_and_coweight())
def test_dominant_rep_is_dominant_and_conjugate(dl):
    d, lam = dl
    vbar, w = d.dominant_rep(lam)
    assert d.is_dominant(vbar) and w(lam) == vbar


@given(datum_and_coweight(), st.data())
def test_opposite_roots_sum_to_minus_one(dl, data):
    d, lam = dl
    r = data.draw(st.sampled_from(d.roots))
    assert lambda_gamma(lam, r) + lambda_gamma(lam, -r) == -1


@given(datum_and_coweight())
def test_epsilon_chamber(dl):
    d, lam = dl
    eps = epsilon_of(d, lam)
    image = {eps.act_root_coords(r.coords) for r in d.positive_roots}
    assert image == {r.coords for r in d.roots if lambda_gamma(lam, r) >= 0}


@given(datum_and_coweight(["GL_3", "A2", "C2", "D4", "GL_2:d=2", "B3"]), st.data())
def test_epsilon_equivariance_under_length_zero_elements(dl, data):
    d, lam = dl
    gens = omega_generators(d).generators
    w = data.draw(st.sampled_from(gens))
    assert epsilon_of(d, w(lam)) == w.finite * epsilon_of(d, lam)


@given(setting_and_coweight(), st.data())
def test_pairing_with_natural_part(sl, data):
    s, lam = sl
    alpha = data.draw(st.sampled_from(s.datum.roots))
    prev = s.datum.root(s.b.linear.inverse().act_root_coords(alpha.coords))
    assert alpha.pair(natural(s.b, lam)) == lambda_gamma(lam, prev) - lambda_gamma(lam, alpha)


@given(setting_and_coweight(), st.data())
def test_natural_part_is_equivariant(sl, data):
    s, lam = sl
    pool = list(s.omega_moves) + [od.longest for od in s.pi_orbits if od.finite]
    if not pool:
        return
    x = data.draw(st.sampled_from(pool))
    assert s.b.fixes(x)
    assert natural(s.b, x(lam)) == x.finite(natural(s.b, lam))


@given(setting_and_coweight())
def test_sign_preservation_on_finite_orbits(sl):
    s, lam = sl
    for od in s.pi_orbits:
        if not od.finite:
            continue
        vals = [lambda_gamma(lam, b) for b in od.roots]
        if not (all(v >= 1 for v in vals) or all(v <= -1 for v in vals)):
            continue
        image = od.longest(lam)
        for g in s.datum.roots:
            if lambda_gamma(lam, g) >= 0:
                g2 = s.datum.root(od.longest.finite.act_root_coords(g.coords))
                assert lambda_gamma(image, g2) >= 0


@given(datum_and_coweight(["GL_3", "A2", "C2", "B2"], ), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_affine_length_is_subadditive(dl, word):
    d, lam = dl
    x = ExtAffineElement(lam, d.from_word([i % d.semisimple_rank for i in word]))
    y = ExtAffineElement(tuple(-v for v in lam), d.from_word(word[:2]))
    assert aff_length(d, x * y) <= aff_length(d, x) + aff_length(d, y)


@lru_cache(maxsize=None)
def crystal(spec, mu):
    return crystal_generate(datum(spec), mu)


CRYSTALS = [("A2", (1, 1)), ("C2", (1, 1)), ("B2", (0, 2)), ("GL_3", (2, 1, 0)), ("D4", (0, 1, 0, 0))]


@given(st.sampled_from(CRYSTALS), st.data())
def test_raising_undoes_lowering(choice, data):
    c = crystal(*choice)
    p = c.elements[data.draw(st.integers(0, len(c) - 1))]
    i = data.draw(st.integers(0, c.datum.semisimple_rank - 1))
    q = root_op_f(c.datum, i, p)
    if q is not None:
        assert root_op_e(c.datum, i, q) == p
    r = root_op_e(c.datum, i, p)
    if r is not None:
        assert root_op_f(c.datum, i, r) == p


@given(st.sampled_from(["A2", "B2", "C2", "A3"]), st.data())
def test_crystal_size_is_the_weyl_dimension(spec, data):
    d = datum(spec)
    mu = tuple(data.draw(st.integers(0, 2)) for _ in range(d.rank))
    assert len(crystal(spec, mu)) == weyl_dimension(d, mu)


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=2, max_size=3))
def test_tensor_dimension_count(pairs):
    d = datum("B2")
    dec = tensor_decompose(d, pairs)
    total = 1
    for mu in pairs:
        total *= weyl_dimension(d, mu)
    assert sum(k * weyl_dimension(d, nu) for nu, k in dec.items()) == total


small_matrices = st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=2, max_size=3)


@given(small_matrices)
def test_smith_form_is_a_valid_factorisation(rows):
    d, u, v = smith_normal_form(rows)
    assert mat_mul(mat_mul(u, rows), v) == d
    diag = [d[i][i] for i in range(min(len(rows), 3))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(3) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)


@given(small_matrices, coweights(3, 20))
def test_lattice_reduction_is_a_coset_invariant(rows, vec):
    lat = Lattice(rows, 3)
    red = lat.reduce(vec)
    assert lat.reduce(red) == red
    assert lat.contains(tuple(a - b for a, b in zip(vec, red)))
    shifted = tuple(v + 2 * r for v, r in zip(vec, rows[0]))
    assert lat.reduce(shifted) == red


@given(st.sampled_from(["A2", "C2", "D4", "A3"]), st.data())
def test_length_zero_elements_preserve_the_base_alcove(spec, data):
    d = datum(spec)
    cls = data.draw(coweights(d.rank, 3))
    w = omega_from_class(d, cls)
    assert aff_length(d, w) == 0
    make_basic(d, w)


@given(st.sampled_from(["A2", "C2", "B2"]), st.data())
def test_tensor_multiplicities_do_not_depend_on_factor_order(spec, data):
    d = datum(spec)
    mus = [tuple(data.draw(st.integers(0, 1)) for _ in range(d.rank)) for _ in range(2)]
    assert tensor_decompose(d, mus) == tensor_decompose(d, mus[::-1])
