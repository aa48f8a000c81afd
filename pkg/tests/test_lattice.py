from fractions import Fraction

from adlvkit.lattice import (
    Lattice,
    integer_inverse,
    integer_kernel,
    integer_solve,
    kernel_rational,
    mat_mul,
    rank,
    smith_normal_form,
    solve_rational,
)


def test_smith_form_of_a2_coroots():
    d, u, v = smith_normal_form([[2, -1], [-1, 2]])
    assert [d[0][0], d[1][1]] == [1, 3]
    assert mat_mul(mat_mul(u, [[2, -1], [-1, 2]]), v) == d


def test_lattice_reduce_and_membership():
    lat = Lattice([(1, -1, 0), (0, 1, -1)], 3)
    assert lat.contains((2, -1, -1))
    assert not lat.contains((1, 0, 0))
    assert lat.reduce((5, 2, -3)) == lat.reduce((0, 0, 4))
    assert lat.coordinates((1, 0, -1)) is not None


def test_kernels():
    ker = integer_kernel([[1, 1, 1]], 3)
    assert len(ker) == 2 and all(sum(k) == 0 for k in ker)
    assert kernel_rational([[1, 2], [2, 4]], 2) and rank([[1, 2], [2, 4]]) == 1


def test_solvers_and_inverse():
    assert solve_rational([[2, 0], [0, 4]], [1, 1]) == (Fraction(1, 2), Fraction(1, 4))
    assert integer_solve([[2, 0], [0, 4]], [1, 1]) is None
    assert integer_solve([[1, 1], [0, 1]], [3, 1]) == (2, 1)
    assert integer_inverse([[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
