"""Reference formulas for dual-group representations, independent of path crystals.

Weights and roots of the dual group are coweights and coroots here, so the
dimension formula runs over positive roots and Freudenthal's recursion over
positive coroots.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .lattice import dot
from .rootdata import RootDatum


def _rho_check(datum: RootDatum) -> tuple[Fraction, ...]:
    return tuple(Fraction(x, 2) for x in datum.two_rho_check)


def weyl_dimension(datum: RootDatum, mu: Sequence[int]) -> int:
    rho = _rho_check(datum)
    shifted = [a + b for a, b in zip(mu, rho)]
    num = Fraction(1)
    for r in datum.positive_roots:
        num *= Fraction(r.pair(shifted)) / r.pair(rho)
    if num.denominator != 1:
        raise ArithmeticError("non-integral dimension")
    return int(num)


def _form(datum: RootDatum, x: Sequence, y: Sequence) -> Fraction:
    """A Weyl-invariant form on coweights: sum over all roots of the product of pairings."""
    return sum(Fraction(r.pair(x)) * r.pair(y) for r in datum.roots)


def dominant_weights(datum: RootDatum, mu: Sequence[int]) -> list[tuple]:
    """Dominant weights of the representation with highest weight ``mu``, by depth."""
    mu = tuple(mu)
    seen = {mu}
    order = [mu]
    frontier = [mu]
    while frontier:
        nxt = []
        for lam in frontier:
            for c in datum.simple_cocoords:
                cand = tuple(a - b for a, b in zip(lam, c))
                if cand in seen:
                    continue
                dom = datum.dominant_rep(cand)[0]
                if datum.leq_dominance(dom, mu):
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
        order.extend(x for x in nxt)
    return [lam for lam in order if datum.is_dominant(lam)]


def freudenthal(datum: RootDatum, mu: Sequence[int]) -> dict[tuple, int]:
    """Multiplicities of all weights via Freudenthal's recursion."""
    mu = tuple(mu)
    rho = _rho_check(datum)
    doms = dominant_weights(datum, mu)
    mult: dict[tuple, int] = {}

    def m(lam: tuple) -> int:
        dom = datum.dominant_rep(lam)[0]
        return mult.get(dom, 0)

    top = _form(datum, [a + b for a, b in zip(mu, rho)], [a + b for a, b in zip(mu, rho)])
    for lam in doms:
        if lam == mu:
            mult[lam] = 1
            continue
        shifted = [a + b for a, b in zip(lam, rho)]
        denom = top - _form(datum, shifted, shifted)
        total = Fraction(0)
        for r in datum.positive_roots:
            k = 1
            while True:
                cand = tuple(a + k * c for a, c in zip(lam, r.coroot))
                dom = datum.dominant_rep(cand)[0]
                if not datum.leq_dominance(dom, mu):
                    break
                total += m(cand) * _form(datum, cand, r.coroot)
                k += 1
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError("non-integral multiplicity")
        mult[lam] = int(value)
    full: dict[tuple, int] = {}
    for lam, k in mult.items():
        if k:
            for w in datum.weyl_orbit(lam):
                full[w] = k
    return full
