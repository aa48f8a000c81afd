"""Affine roots, the extended affine Weyl group and length-zero elements.

An element ``t^lam w`` acts on ``Y`` by ``v -> lam + w(v)``. The finite part
may also be a twisted map such as ``p(b) o sigma``; composition and the action
on affine roots only use the linear algebra, so both cases share one class.

An affine root ``(alpha, k)`` is the function ``v -> -<alpha, v> + k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .lattice import Lattice, dot, integer_inverse, smith_normal_form, solve_rational, transpose
from .rootdata import DatumError, Root, RootDatum, WeylElement


@dataclass(frozen=True)
class AffineRoot:
    root: Root
    k: int

    def __call__(self, v: Sequence) -> Fraction | int:
        return -self.root.pair(v) + self.k

    def is_positive(self, datum: RootDatum) -> bool:
        """Positive means positive on the base alcove."""
        return self(datum.alcove_point) > 0


def tilde_root(root: Root) -> AffineRoot:
    """The affine root over ``root`` that is simple-adjacent to the base alcove."""
    return AffineRoot(root, 0 if not root.positive else 1)


@dataclass(frozen=True)
class ExtAffineElement:
    translation: tuple
    finite: WeylElement

    @staticmethod
    def translation_by(lam: Sequence, rank: int | None = None) -> "ExtAffineElement":
        return ExtAffineElement(tuple(lam), WeylElement.identity(len(lam) if rank is None else rank))

    @staticmethod
    def from_weyl(w: WeylElement) -> "ExtAffineElement":
        return ExtAffineElement((0,) * len(w.ymat), w)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(self.translation, self.finite(v)))

    def __mul__(self, other: "ExtAffineElement") -> "ExtAffineElement":
        # (t^l w)(t^m u) = t^{l + w m} w u
        return ExtAffineElement(self(other.translation), self.finite * other.finite)

    def inverse(self) -> "ExtAffineElement":
        winv = self.finite.inverse()
        return ExtAffineElement(tuple(-x for x in winv(self.translation)), winv)

    def act_affine_root(self, a: AffineRoot, datum: RootDatum) -> AffineRoot:
        """``(x . a)(v) = a(x^{-1} v)``."""
        image = self.finite.act_root_coords(a.root.coords)
        return AffineRoot(datum.root(image), a.k + dot(image, self.translation))

    def is_identity(self) -> bool:
        return not any(self.translation) and self.finite.is_identity()

    def __str__(self) -> str:
        return format_element(self)


def format_element(x: ExtAffineElement, datum: RootDatum | None = None) -> str:
    """Text form ``t^(c1,...,cn)*w`` where ``w`` is a reduced word like ``s1s2``."""
    coords = ",".join(str(c) for c in x.translation)
    if datum is not None and datum.in_weyl_group(x.finite):
        word = datum.reduced_word(x.finite)
        finite = "".join(f"s{i + 1}" for i in word) or "1"
    else:
        finite = "[" + ";".join(",".join(str(v) for v in row) for row in x.finite.ymat) + "]"
    return f"t^({coords})*{finite}"


def parse_element(text: str, datum: RootDatum) -> ExtAffineElement:
    """Inverse of :func:`format_element` for elements of the extended affine Weyl group."""
    text = text.strip().replace(" ", "")
    if "*" in text:
        trans_part, word_part = text.split("*", 1)
    elif text.startswith("t^"):
        trans_part, word_part = text, "1"
    else:
        trans_part, word_part = "t^(" + ",".join("0" * datum.rank) + ")", text
    if not (trans_part.startswith("t^(") and trans_part.endswith(")")):
        raise ValueError(f"cannot parse element {text!r}")
    inner = trans_part[3:-1]
    lam = tuple(int(c) for c in inner.split(",")) if inner else ()
    if len(lam) != datum.rank:
        raise ValueError(f"translation {lam} does not have {datum.rank} coordinates")
    if word_part in ("1", "e", ""):
        word: list[int] = []
    else:
        pieces = word_part.split("s")
        if pieces[0] != "":
            raise ValueError(f"cannot parse Weyl word {word_part!r}")
        word = [int(p) - 1 for p in pieces[1:]]
        if any(i < 0 or i >= datum.semisimple_rank for i in word):
            raise ValueError(f"Weyl word {word_part!r} uses an unknown simple reflection")
    return ExtAffineElement(lam, datum.from_word(word))


def affine_reflection(a: AffineRoot) -> ExtAffineElement:
    """Reflection in the zero set of ``a``: ``t^{k alpha^vee} s_alpha``."""
    n = len(a.root.coords)
    alpha, coroot = a.root.coords, a.root.coroot
    y = tuple(tuple(int(i == j) - coroot[i] * alpha[j] for j in range(n)) for i in range(n))
    x = tuple(tuple(int(i == j) - alpha[i] * coroot[j] for j in range(n)) for i in range(n))
    return ExtAffineElement(tuple(a.k * c for c in coroot), WeylElement(y, x))


def aff_length(datum: RootDatum, x: ExtAffineElement) -> int:
    """Number of affine root hyperplanes separating the base alcove from its image."""
    image = x(datum.alcove_point)
    return sum(abs(math.floor(r.pair(image))) for r in datum.positive_roots)


def aff_length_by_inversions(datum: RootDatum, x: ExtAffineElement) -> int:
    """Count negative affine roots whose preimage under ``x`` is positive."""
    p = datum.alcove_point
    image = x(p)
    xinv = x.inverse()
    count = 0
    for r in datum.roots:
        bound = abs(math.floor(r.pair(image))) + 2
        for k in range(-bound, bound + 1):
            a = AffineRoot(r, k)
            if a(p) < 0 and xinv.act_affine_root(a, datum)(p) > 0:
                count += 1
    return count


def sigma_act(datum: RootDatum, x: ExtAffineElement) -> ExtAffineElement:
    """``sigma(t^lam w) = t^{sigma lam} sigma w sigma^{-1}``."""
    s = datum.sigma
    return ExtAffineElement(s(x.translation), x.finite.conjugate_by(s))


# length-zero elements --------------------------------------------------------


def minuscule_rep(datum: RootDatum, lam: Sequence[int]) -> tuple:
    """The dominant representative of ``lam + Z coroots`` that is minuscule or zero on each factor."""
    cur, _ = datum.dominant_rep(lam)
    while True:
        for theta in datum.highest_roots:
            if theta.pair(cur) > 1:
                cur = tuple(a - b for a, b in zip(cur, theta.coroot))
                cur, _ = datum.dominant_rep(cur)
                break
        else:
            return cur


def omega_from_class(datum: RootDatum, lam: Sequence[int]) -> ExtAffineElement:
    """The length-zero element whose translation class modulo coroots is that of ``lam``."""
    rep = minuscule_rep(datum, lam)
    stab = [i for i, a in enumerate(datum.simple_coords) if dot(a, rep) == 0]
    finite = datum.longest_element(stab) * datum.longest_element()
    omega = ExtAffineElement(rep, finite)
    if aff_length(datum, omega) != 0:
        raise DatumError("constructed element does not have length zero")
    return omega


@dataclass(frozen=True)
class OmegaGroup:
    """Structure of ``Y / Z coroots`` with generators of the length-zero group."""

    generators: tuple[ExtAffineElement, ...]
    orders: tuple[int, ...]  # 0 for infinite order

    @property
    def is_finite(self) -> bool:
        return all(self.orders)


def omega_generators(datum: RootDatum) -> OmegaGroup:
    """Generators of the length-zero group from the Smith form of the coroot lattice."""
    r, s = datum.rank, datum.semisimple_rank
    if s == 0:
        gens = [tuple(int(i == j) for i in range(r)) for j in range(r)]
        return OmegaGroup(tuple(ExtAffineElement.translation_by(g) for g in gens), (0,) * r)
    cols = transpose(datum.simple_cocoords)  # r x s
    d, u, _ = smith_normal_form(cols)
    uinv = integer_inverse(u)
    gens, orders = [], []
    for i in range(r):
        order = d[i][i] if i < s else 0
        if order == 1:
            continue
        vec = tuple(uinv[k][i] for k in range(r))
        gens.append(_preferred_generator(datum, vec, order))
        orders.append(order)
    return OmegaGroup(tuple(omega_from_class(datum, g) for g in gens), tuple(orders))


def _preferred_generator(datum: RootDatum, vec: tuple, order: int) -> tuple:
    """Pick a tidy generator of the cyclic group spanned by ``vec``."""
    multiples = [1, -1] if order == 0 else [k for k in range(1, order) if math.gcd(k, order) == 1]
    candidates = []
    for k in multiples:
        rep = minuscule_rep(datum, tuple(k * x for x in vec))
        candidates.append((rep, tuple(k * x for x in vec)))
    if order == 0:
        candidates = [c for c in candidates if next((x for x in c[0] if x), 0) > 0] or candidates
    return max(candidates)[1]


@dataclass(frozen=True)
class BasicElement:
    """A length-zero element ``b`` together with the twisted map ``b o sigma``."""

    datum: RootDatum
    element: ExtAffineElement

    @cached_property
    def twist(self) -> ExtAffineElement:
        return ExtAffineElement(self.element.translation, self.element.finite * self.datum.sigma)

    @property
    def linear(self) -> WeylElement:
        """``p(b) o sigma``."""
        return self.twist.finite

    def twist_element(self, x: ExtAffineElement) -> ExtAffineElement:
        """``b sigma(x) b^{-1}``."""
        return self.twist * x * self.twist.inverse()

    def fixes(self, x: ExtAffineElement) -> bool:
        return self.twist_element(x) == x


def make_basic(datum: RootDatum, element: ExtAffineElement) -> BasicElement:
    if aff_length(datum, element) != 0:
        raise DatumError("b must have length zero")
    return BasicElement(datum, element)


def fixed_by_twist(x: ExtAffineElement, b: BasicElement) -> bool:
    return b.fixes(x)


# lambda calculus -------------------------------------------------------------


def lambda_gamma(lam: Sequence, gamma: Root) -> int:
    """``<gamma, lam>`` for negative ``gamma`` and ``<gamma, lam> - 1`` for positive ``gamma``."""
    return gamma.pair(lam) - (1 if gamma.positive else 0)


def epsilon_of(datum: RootDatum, lam: Sequence) -> WeylElement:
    """The Weyl element sending the positive roots to ``{gamma : lambda_gamma >= 0}``.

    Implemented as the chamber of ``lam - e * two_rho_check`` for infinitesimal
    ``e``; ties in the first pairing are broken by the second.
    """
    cur = tuple(lam)
    shift = tuple(-x for x in datum.two_rho_check)
    word = []
    while True:
        for i, a in enumerate(datum.simple_coords):
            p, q = dot(a, cur), dot(a, shift)
            if p < 0 or (p == 0 and q < 0):
                root = datum.simple[i]
                cur = datum.reflect(cur, root)
                shift = datum.reflect(shift, root)
                word.append(i)
                break
        else:
            break
    # word w satisfies w(x) dominant, epsilon = w^{-1}
    return datum.from_word(word)


def dagger(b: BasicElement, lam: Sequence) -> tuple:
    """``b sigma (lam)`` under the affine action."""
    return b.twist(lam)


def natural(b: BasicElement, lam: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(dagger(b, lam), lam))


def natural_dagger(b: BasicElement, lam: Sequence) -> tuple[tuple, tuple]:
    d = dagger(b, lam)
    return d, tuple(x - y for x, y in zip(d, lam))


# orbits of affine roots ---------------------------------------------------------


@dataclass(frozen=True)
class OrbitData:
    alpha: Root
    roots: tuple[Root, ...]              # alpha^0, alpha^1, ... under p(b) sigma
    affine: tuple[AffineRoot, ...]       # orbit of tilde(alpha) under b sigma
    finite: bool
    longest: ExtAffineElement | None
    case: str | None                      # "paired" or "orthogonal"


def root_orbit(b: BasicElement, alpha: Root) -> list[Root]:
    out = [alpha]
    while True:
        nxt = b.datum.root(b.linear.act_root_coords(out[-1].coords))
        if nxt == alpha:
            return out
        out.append(nxt)


def _common_point(affine: Iterable[AffineRoot], rank: int) -> bool:
    affine = list(affine)
    rows = [list(a.root.coords) for a in affine]
    rhs = [a.k for a in affine]
    return solve_rational(rows, rhs) is not None


def _generated_group(gens: list[ExtAffineElement], limit: int = 100000) -> list[ExtAffineElement]:
    rank = len(gens[0].translation)
    ident = ExtAffineElement((0,) * rank, WeylElement.identity(rank))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise DatumError("reflection subgroup is unexpectedly large")
        frontier = nxt
    return list(seen)


def orbit_data(b: BasicElement, alpha: Root) -> OrbitData:
    """Orbit of ``alpha`` and of its affine lift; longest element when the generated group is finite."""
    datum = b.datum
    roots = root_orbit(b, alpha)
    affine = [tilde_root(alpha)]
    while True:
        nxt = b.twist.act_affine_root(affine[-1], datum)
        if nxt == affine[0]:
            break
        affine.append(nxt)
    if [a.root for a in affine] != roots or any(a != tilde_root(a.root) for a in affine):
        raise DatumError("b sigma does not permute the lifted affine roots")
    finite = _common_point(affine, datum.rank)
    longest, case = None, None
    if finite:
        group = _generated_group([affine_reflection(a) for a in affine])
        lengths = {x: aff_length(datum, x) for x in group}
        top = max(lengths.values())
        maximal = [x for x, l in lengths.items() if l == top]
        if len(maximal) != 1:
            raise DatumError("finite reflection subgroup without a unique longest element")
        longest = maximal[0]
        size = len(roots)
        if size % 2 == 0 and roots[size // 2].pair(alpha.coroot) == -1:
            case = "paired"
            summed = tuple(x + y for x, y in zip(alpha.coords, roots[size // 2].coords))
            factors = root_orbit(b, datum.root(summed))
        else:
            case = "orthogonal"
            factors = roots
        product = ExtAffineElement((0,) * datum.rank, WeylElement.identity(datum.rank))
        for r in factors:
            product = product * affine_reflection(tilde_root(r))
        if product != longest:
            raise DatumError("orbit product differs from the longest element of the finite subgroup")
    return OrbitData(alpha, tuple(roots), tuple(affine), finite, longest, case)


# coinvariants -----------------------------------------------------------------


def coinvariant_lattice(datum: RootDatum) -> Lattice:
    """The lattice ``(1 - sigma) Y``."""
    gens = []
    for j in range(datum.rank):
        e = tuple(int(i == j) for i in range(datum.rank))
        gens.append(tuple(a - b for a, b in zip(e, datum.sigma(e))))
    return Lattice(gens, datum.rank)


def kottwitz_lattice(datum: RootDatum) -> Lattice:
    """The lattice ``Z coroots + (1 - sigma) Y``."""
    return Lattice(list(datum.simple_cocoords) + coinvariant_lattice(datum).basis, datum.rank)


def sigma_class(datum: RootDatum, lam: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``lam`` in ``Y_sigma``."""
    return coinvariant_lattice(datum).reduce(lam)


def omega_twist_fixed(datum: RootDatum, b: BasicElement, sub: RootDatum | None = None) -> list[ExtAffineElement]:
    """Generators of the length-zero elements of ``sub`` fixed by ``b sigma``.

    ``sub`` is a closed subsystem with its inherited positivity (``datum``
    itself by default). These are the classes in ``Y / Z coroots(sub)`` fixed
    by ``p(b) sigma``; each class gives one length-zero element.
    """
    from .lattice import integer_kernel

    sub = datum if sub is None else sub
    r = datum.rank
    lin = b.linear
    coroots = [c for c in sub.simple_cocoords]
    # lam with (lin - 1) lam in span(coroots): kernel of [lin - 1 | -C]
    rows = []
    for i in range(r):
        row = [lin.ymat[i][j] - int(i == j) for j in range(r)]
        row += [-c[i] for c in coroots]
        rows.append(row)
    kernel = integer_kernel(rows, r + len(coroots))
    lams = Lattice([k[:r] for k in kernel], r).basis
    out = []
    for lam in lams:
        omega = omega_from_class(sub, lam)
        if not b.fixes(omega):
            raise DatumError("length-zero element of a fixed class is not fixed by the twist")
        out.append(omega)
    return out
