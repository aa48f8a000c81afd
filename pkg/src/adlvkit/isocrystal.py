"""Invariants of sigma-conjugacy classes: Kottwitz point, Newton point, defect.

Also the best integral approximation of the Newton point used to read off
the expected number of orbits of irreducible components, and the global
non-emptiness and dimension statements for affine Deligne-Lusztig varieties
attached to basic classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .affine import (
    BasicElement,
    ExtAffineElement,
    coinvariant_lattice,
    kottwitz_lattice,
)
from .lattice import dot, kernel_rational
from .rootdata import DatumError, RootDatum


def kottwitz(datum: RootDatum, x: ExtAffineElement | BasicElement) -> tuple[int, ...]:
    """Canonical representative of the image of ``x`` in ``Y / (Z coroots + (1 - sigma) Y)``."""
    if isinstance(x, BasicElement):
        x = x.element
    return kottwitz_lattice(datum).reduce(x.translation)


def kottwitz_of_coweight(datum: RootDatum, mu: Sequence[int]) -> tuple[int, ...]:
    return kottwitz_lattice(datum).reduce(mu)


def twisted_power_translation(datum: RootDatum, x: ExtAffineElement) -> tuple[int, tuple]:
    """Return ``(n, T)`` with ``(x sigma)^n = t^T`` and ``n`` the order of ``p(x) sigma``."""
    twist = ExtAffineElement(x.translation, x.finite * datum.sigma)
    n = twist.finite.order()
    power = twist
    for _ in range(n - 1):
        power = power * twist
    if not power.finite.is_identity():
        raise DatumError("twisted power is not a translation")
    return n, power.translation


def newton(datum: RootDatum, x: ExtAffineElement | BasicElement) -> tuple[Fraction, ...]:
    """Dominant Newton point."""
    if isinstance(x, BasicElement):
        x = x.element
    n, total = twisted_power_translation(datum, x)
    nu = tuple(Fraction(c, n) for c in total)
    return datum.dominant_rep(nu)[0]


def sigma_average(datum: RootDatum, lam: Sequence) -> tuple[Fraction, ...]:
    """Average of ``lam`` over the sigma-orbit, made dominant."""
    return datum.dominant_rep(raw_sigma_average(datum, lam))[0]


def raw_sigma_average(datum: RootDatum, lam: Sequence) -> tuple[Fraction, ...]:
    m = datum.sigma_order()
    total = [Fraction(0)] * datum.rank
    cur = tuple(lam)
    for _ in range(m):
        total = [a + b for a, b in zip(total, cur)]
        cur = datum.sigma(cur)
    return tuple(t / m for t in total)


def _fixed_dim(mat) -> int:
    n = len(mat)
    rows = [[mat[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    return len(kernel_rational(rows, n))


def defect(datum: RootDatum, b: BasicElement) -> int:
    """``dim Y^sigma - dim Y^{p(b) sigma}`` over the reals."""
    return _fixed_dim(datum.sigma.ymat) - _fixed_dim(b.linear.ymat)


def is_basic(datum: RootDatum, b: BasicElement) -> bool:
    nu = newton(datum, b)
    return all(r.pair(nu) == 0 for r in datum.simple)


@dataclass(frozen=True)
class BestApprox:
    """The largest class in ``Y_sigma`` below the Newton point with the right Kottwitz point."""

    rep: tuple[int, ...]          # canonical representative in Y
    average: tuple[Fraction, ...]  # sigma-average of rep (not made dominant)
    orbit_sums: tuple[int, ...]   # coefficient sums over sigma-orbits of simple coroots
    window: int


def _sigma_orbits(datum: RootDatum) -> list[list[int]]:
    perm = datum.sigma_perm
    seen, orbits = set(), []
    for i in range(datum.semisimple_rank):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = perm[j]
        orbits.append(orb)
    return orbits


def default_window(datum: RootDatum, nu: Sequence) -> int:
    two_rho = [2 * x for x in datum.rho]
    return math.ceil(dot(two_rho, nu)) + datum.semisimple_rank


def ul_best(datum: RootDatum, b: BasicElement, window: int | None = None) -> BestApprox:
    """Maximal ``ul`` in ``Y_sigma`` with ``kappa(ul) = kappa(b)`` and average below ``nu(b)``.

    Classes with the given Kottwitz point are ``lam0 + sum n_j coroot_j``;
    only the sums of ``n_j`` over sigma-orbits matter for the average. Each
    orbit sum is scanned over a window and the maximum is checked to dominate
    every admissible class found.
    """
    lam0 = kottwitz(datum, b)
    nu = newton(datum, b)
    if window is None:
        window = default_window(datum, nu)
    gap = [a - c for a, c in zip(nu, raw_sigma_average(datum, lam0))]
    coeffs = datum.coroot_coefficients(gap)
    if coeffs is None:
        raise DatumError("Newton point and Kottwitz point are incompatible")
    orbits = _sigma_orbits(datum)
    best = []
    for orb in orbits:
        q = coeffs[orb[0]]
        if any(coeffs[j] != q for j in orb):
            raise DatumError("average gap is not sigma-invariant")
        bound = len(orb) * q
        centre = math.floor(bound)
        admissible = [n for n in range(centre - window, centre + window + 1) if n <= bound]
        top = max(admissible)
        if any(n > top for n in admissible):
            raise DatumError("no unique maximum")
        best.append(top)
    rep = list(lam0)
    for orb, n in zip(orbits, best):
        rep = [a + n * c for a, c in zip(rep, datum.simple_cocoords[orb[0]])]
    rep = coinvariant_lattice(datum).reduce(rep)
    return BestApprox(tuple(rep), raw_sigma_average(datum, rep), tuple(best), window)


def ul_best_bruteforce(datum: RootDatum, b: BasicElement, radius: int = 3) -> tuple[int, ...]:
    """Slow reference: scan all coroot combinations in a box and take the maximum."""
    import itertools

    lam0 = kottwitz(datum, b)
    nu = newton(datum, b)
    lat = coinvariant_lattice(datum)
    admissible = {}
    for ns in itertools.product(range(-radius, radius + 1), repeat=datum.semisimple_rank):
        lam = list(lam0)
        for n, c in zip(ns, datum.simple_cocoords):
            lam = [a + n * x for a, x in zip(lam, c)]
        avg = raw_sigma_average(datum, lam)
        if datum.leq_dominance(avg, nu):
            admissible[lat.reduce(lam)] = avg
    maxima = [c for c, a in admissible.items()
              if not any(o != a and datum.leq_dominance(a, o) for o in admissible.values())]
    if len(maxima) != 1:
        raise DatumError(f"expected a unique maximum, found {len(maxima)}")
    return maxima[0]


def adlv_nonempty(datum: RootDatum, mu: Sequence[int], b: BasicElement) -> bool:
    if kottwitz_of_coweight(datum, mu) != kottwitz(datum, b):
        return False
    return datum.leq_dominance(newton(datum, b), sigma_average(datum, mu))


def adlv_dim(datum: RootDatum, mu: Sequence[int], b: BasicElement) -> Fraction:
    """``<rho, mu - nu(b)> - defect(b) / 2`` for dominant ``mu``."""
    if not adlv_nonempty(datum, mu, b):
        raise DatumError("the variety is empty")
    nu = newton(datum, b)
    diff = [a - c for a, c in zip(mu, nu)]
    return dot(datum.rho, diff) - Fraction(defect(datum, b), 2)


def same_sigma_class(datum: RootDatum, lam: Sequence[int], other: Sequence[int]) -> bool:
    lat = coinvariant_lattice(datum)
    return lat.reduce(lam) == lat.reduce(other)

