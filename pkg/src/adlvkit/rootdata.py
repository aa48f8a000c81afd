"""Root data, finite Weyl groups and dominance.

Coordinates: a coweight is a tuple in the cocharacter lattice ``Y``; a root
is stored by its coordinates in the dual lattice ``X``, and the pairing is
the dot product. Three isogeny flavours are built in:

* ``gl``: ``Y = Z^n`` with the standard roots of ``GL_n``;
* ``adjoint``: ``Y`` has the basis of fundamental coweights, so simple roots
  are unit vectors;
* ``sc``: ``Y`` has the basis of simple coroots.

>>> d = build_root_datum("A", 2, "adjoint")
>>> len(d.roots), d.weyl_order()
(6, 6)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .lattice import dot, identity, solve_rational, transpose


class DatumError(ValueError):
    """Raised for unsupported or malformed root data."""


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    coroot: tuple[int, ...]
    positive: bool

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), tuple(-c for c in self.coroot), not self.positive)

    def pair(self, coweight: Sequence) -> Fraction | int:
        return dot(self.coords, coweight)


@dataclass(frozen=True)
class WeylElement:
    """An integral automorphism of ``Y`` together with its contragredient on ``X``.

    Used both for finite Weyl group elements and for diagram automorphisms.
    """

    ymat: tuple[tuple[int, ...], ...]
    xmat: tuple[tuple[int, ...], ...] = field(compare=False)

    @staticmethod
    def identity(n: int) -> "WeylElement":
        m = tuple(tuple(r) for r in identity(n))
        return WeylElement(m, m)

    @staticmethod
    def from_ymat(ymat: Sequence[Sequence[int]]) -> "WeylElement":
        from .lattice import integer_inverse

        y = tuple(tuple(int(x) for x in r) for r in ymat)
        x = tuple(tuple(r) for r in transpose(integer_inverse(y)))
        return WeylElement(y, x)

    def __call__(self, v: Sequence) -> tuple:
        return tuple(dot(row, v) for row in self.ymat)

    def act_root_coords(self, x: Sequence) -> tuple:
        return tuple(dot(row, x) for row in self.xmat)

    def act_root(self, root: Root, datum: "RootDatum") -> Root:
        return datum.root(self.act_root_coords(root.coords))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        y = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*other.ymat)) for row in self.ymat)
        x = tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*other.xmat)) for row in self.xmat)
        return WeylElement(y, x)

    def inverse(self) -> "WeylElement":
        return WeylElement(tuple(zip(*self.xmat)), tuple(zip(*self.ymat)))

    def is_identity(self) -> bool:
        return all(self.ymat[i][j] == int(i == j) for i in range(len(self.ymat)) for j in range(len(self.ymat)))

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power, k = power * self, k + 1
        return k

    def conjugate_by(self, g: "WeylElement") -> "WeylElement":
        """Return ``g self g^-1``."""
        return g * self * g.inverse()

    def ynp(self) -> np.ndarray:
        return np.array(self.ymat, dtype=np.int64)

    def xnp(self) -> np.ndarray:
        return np.array(self.xmat, dtype=np.int64)


def _reflection_element(alpha: Sequence[int], coroot: Sequence[int]) -> WeylElement:
    n = len(alpha)
    y = tuple(tuple(int(i == j) - coroot[i] * alpha[j] for j in range(n)) for i in range(n))
    x = tuple(tuple(int(i == j) - alpha[i] * coroot[j] for j in range(n)) for i in range(n))
    return WeylElement(y, x)


class RootDatum:
    """A based root datum on ``Y = Z^rank`` with an optional diagram automorphism.

    ``simple_roots`` and ``simple_coroots`` fix the base; the full root system
    is generated by reflections. ``sigma`` acts on ``Y`` and must permute the
    simple coroots unless ``check_sigma`` is false.
    """

    def __init__(
        self,
        rank: int,
        simple_roots: Sequence[Sequence[int]],
        simple_coroots: Sequence[Sequence[int]],
        sigma: WeylElement | None = None,
        name: str = "",
        family: str = "",
        isogeny: str = "",
        copies: int = 1,
        base: "RootDatum | None" = None,
        check_sigma: bool = True,
    ):
        self.rank = rank
        self.name = name
        self.family = family
        self.isogeny = isogeny
        self.copies = copies
        self.base = base
        self.simple_coords = [tuple(int(x) for x in a) for a in simple_roots]
        self.simple_cocoords = [tuple(int(x) for x in a) for a in simple_coroots]
        self.cartan = [[dot(a, c) for c in self.simple_cocoords] for a in self.simple_coords]
        for i, row in enumerate(self.cartan):
            if row[i] != 2:
                raise DatumError("simple root paired with its coroot is not 2")
        self.sigma = sigma if sigma is not None else WeylElement.identity(rank)
        self._generate_roots()
        if check_sigma and self.simple_coords:
            self.sigma_perm = self._sigma_permutation()
        else:
            self.sigma_perm = None

    # construction ---------------------------------------------------------

    def _generate_roots(self) -> None:
        s = len(self.simple_coords)
        table: dict[tuple, tuple[tuple, tuple]] = {}
        queue = []
        for i in range(s):
            coeff = tuple(int(k == i) for k in range(s))
            table[self.simple_coords[i]] = (self.simple_cocoords[i], coeff)
            queue.append(self.simple_coords[i])
        while queue:
            root = queue.pop()
            coroot, coeff = table[root]
            for j in range(s):
                a, c = self.simple_coords[j], self.simple_cocoords[j]
                k = dot(root, c)
                m = dot(a, coroot)
                new_root = tuple(x - k * y for x, y in zip(root, a))
                if new_root in table:
                    continue
                new_coroot = tuple(x - m * y for x, y in zip(coroot, c))
                new_coeff = tuple(x - (k if idx == j else 0) for idx, x in enumerate(coeff))
                table[new_root] = (new_coroot, new_coeff)
                queue.append(new_root)
        entries = []
        for coords, (coroot, coeff) in table.items():
            if all(x >= 0 for x in coeff):
                positive = True
            elif all(x <= 0 for x in coeff):
                positive = False
            else:
                raise DatumError("generated a root with mixed-sign coefficients")
            entries.append((not positive, sum(abs(x) for x in coeff), coeff, coords, coroot, positive))
        entries.sort(key=lambda e: (e[0], e[1], tuple(-x for x in e[2]) if e[5] else e[2]))
        self.roots: list[Root] = [Root(e[3], e[4], e[5]) for e in entries]
        self.coefficients: list[tuple[int, ...]] = [e[2] for e in entries]
        self._index = {r.coords: i for i, r in enumerate(self.roots)}
        self.positive_roots = [r for r in self.roots if r.positive]
        self.simple = [self.roots[self._index[a]] for a in self.simple_coords]

    def _sigma_permutation(self) -> tuple[int, ...]:
        perm = []
        for a in self.simple_cocoords:
            image = self.sigma(a)
            if image not in self.simple_cocoords:
                raise DatumError("sigma does not permute the simple coroots")
            perm.append(self.simple_cocoords.index(image))
        for a, i in zip(self.simple_coords, perm):
            if self.sigma.act_root_coords(a) != self.simple_coords[i]:
                raise DatumError("sigma does not permute the simple roots")
        return tuple(perm)

    # lookup ---------------------------------------------------------------

    def root(self, coords: Sequence[int]) -> Root:
        try:
            return self.roots[self._index[tuple(coords)]]
        except KeyError:
            raise DatumError(f"{tuple(coords)} is not a root") from None

    def root_index(self, root: Root | Sequence[int]) -> int:
        coords = root.coords if isinstance(root, Root) else tuple(root)
        return self._index[coords]

    def is_root(self, coords: Sequence[int]) -> bool:
        return tuple(coords) in self._index

    def height(self, root: Root) -> int:
        return sum(self.coefficients[self.root_index(root)])

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    @cached_property
    def root_matrix(self) -> np.ndarray:
        return np.array([r.coords for r in self.roots], dtype=np.int64).reshape(len(self.roots), self.rank)

    @cached_property
    def coroot_matrix(self) -> np.ndarray:
        return np.array([r.coroot for r in self.roots], dtype=np.int64).reshape(len(self.roots), self.rank)

    @cached_property
    def positive_mask(self) -> np.ndarray:
        return np.array([r.positive for r in self.roots], dtype=bool)

    @cached_property
    def negation_index(self) -> np.ndarray:
        return np.array([self.root_index(-r) for r in self.roots], dtype=np.int64)

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        """Half the sum of positive roots, in ``X`` coordinates."""
        total = [0] * self.rank
        for r in self.positive_roots:
            total = [a + b for a, b in zip(total, r.coords)]
        return tuple(Fraction(x, 2) for x in total)

    @cached_property
    def two_rho_check(self) -> tuple[int, ...]:
        """Sum of positive coroots; pairs to 2 with every simple root."""
        total = [0] * self.rank
        for r in self.positive_roots:
            total = [a + b for a, b in zip(total, r.coroot)]
        return tuple(total)

    @cached_property
    def components(self) -> list[list[int]]:
        s = self.semisimple_rank
        seen: set[int] = set()
        comps = []
        for start in range(s):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(s):
                    if j not in seen and self.cartan[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def component_of(self, root: Root) -> int:
        coeff = self.coefficients[self.root_index(root)]
        for k, comp in enumerate(self.components):
            if any(coeff[i] for i in comp):
                return k
        raise DatumError("root without support")

    @cached_property
    def highest_roots(self) -> list[Root]:
        out = []
        for comp in self.components:
            best = max(
                (i for i, r in enumerate(self.roots) if r.positive and any(self.coefficients[i][j] for j in comp)),
                key=lambda i: sum(self.coefficients[i]),
            )
            out.append(self.roots[best])
        return out

    @cached_property
    def coxeter_numbers(self) -> list[int]:
        return [self.height(theta) + 1 for theta in self.highest_roots]

    @cached_property
    def alcove_point(self) -> tuple[Fraction, ...]:
        """A point of the base alcove, in the span of the coroots."""
        if not self.simple:
            return tuple(Fraction(0) for _ in range(self.rank))
        targets = [Fraction(0)] * self.semisimple_rank
        for comp, h in zip(self.components, self.coxeter_numbers):
            for i in comp:
                targets[i] = Fraction(1, h + 1)
        # p = sum x_k coroot_k with <alpha_i, p> = targets_i
        x = solve_rational(self.cartan, targets)
        p = [Fraction(0)] * self.rank
        for xk, c in zip(x, self.simple_cocoords):
            p = [a + xk * b for a, b in zip(p, c)]
        return tuple(p)

    # Weyl group -----------------------------------------------------------

    def simple_reflection(self, i: int) -> WeylElement:
        return _reflection_element(self.simple_coords[i], self.simple_cocoords[i])

    def reflection(self, root: Root) -> WeylElement:
        return _reflection_element(root.coords, root.coroot)

    def from_word(self, word: Iterable[int]) -> WeylElement:
        w = WeylElement.identity(self.rank)
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    def reduced_word(self, w: WeylElement) -> tuple[int, ...]:
        """A reduced word ``(i_1, ..., i_k)`` with ``w = s_{i_1} ... s_{i_k}``."""
        word = []
        cur = w
        while True:
            for i, a in enumerate(self.simple_coords):
                if not self.root(cur.act_root_coords(a)).positive:
                    word.append(i)
                    cur = cur * self.simple_reflection(i)
                    break
            else:
                break
        return tuple(reversed(word))

    def length(self, w: WeylElement) -> int:
        return sum(1 for r in self.positive_roots if not self.root(w.act_root_coords(r.coords)).positive)

    def in_weyl_group(self, g: WeylElement) -> bool:
        w = self.from_word(self.reduced_word(g))
        return w == g

    def longest_element(self, subset: Iterable[int] | None = None) -> WeylElement:
        """Longest element of the parabolic subgroup generated by ``subset``."""
        subset = list(range(self.semisimple_rank)) if subset is None else list(subset)
        w = WeylElement.identity(self.rank)
        while True:
            for i in subset:
                if self.root(w.act_root_coords(self.simple_coords[i])).positive:
                    w = w * self.simple_reflection(i)
                    break
            else:
                return w

    def weyl_order(self) -> int:
        return sum(len(level[0]) for level in self.weyl_levels())

    def weyl_levels(self, track_y: Sequence[Sequence[int]] = (), track_x: Sequence[Sequence[int]] = ()):
        """Breadth-first enumeration of ``W`` by length, vectorised.

        Yields ``(keys, ys, xs)`` per length, where ``keys`` are the images of
        the regular vector ``two_rho_check`` and ``ys`` / ``xs`` the images of
        the tracked vectors. Memory stays proportional to two adjacent levels.
        """
        rho = np.array(self.two_rho_check, dtype=np.int64)
        keys = rho[None, :]
        ys = np.array(track_y, dtype=np.int64).reshape(1, len(track_y), self.rank)
        xs = np.array(track_x, dtype=np.int64).reshape(1, len(track_x), self.rank)
        roots = np.array(self.simple_coords, dtype=np.int64).reshape(-1, self.rank)
        coroots = np.array(self.simple_cocoords, dtype=np.int64).reshape(-1, self.rank)
        while len(keys):
            yield keys, ys, xs
            new_keys, new_ys, new_xs = [], [], []
            for i in range(len(roots)):
                a, c = roots[i], coroots[i]
                pair = keys @ a
                sel = pair > 0
                if not sel.any():
                    continue
                k = keys[sel] - pair[sel][:, None] * c[None, :]
                yv = ys[sel]
                yv = yv - (yv @ a)[..., None] * c
                xv = xs[sel]
                xv = xv - (xv @ c)[..., None] * a
                new_keys.append(k)
                new_ys.append(yv)
                new_xs.append(xv)
            if not new_keys:
                return
            keys = np.concatenate(new_keys)
            ys = np.concatenate(new_ys)
            xs = np.concatenate(new_xs)
            keys, first = np.unique(keys, axis=0, return_index=True)
            ys, xs = ys[first], xs[first]

    def enumerate_weyl(self) -> Iterator[WeylElement]:
        """All elements of ``W``, ordered by length."""
        basis = identity(self.rank)
        for _, ys, xs in self.weyl_levels(basis, basis):
            for ycols, xcols in zip(ys, xs):
                yield WeylElement(tuple(map(tuple, ycols.T.tolist())), tuple(map(tuple, xcols.T.tolist())))

    # dominance ------------------------------------------------------------

    def reflect(self, v: Sequence, root: Root) -> tuple:
        k = root.pair(v)
        return tuple(x - k * c for x, c in zip(v, root.coroot))

    def dominant_rep(self, v: Sequence) -> tuple[tuple, WeylElement]:
        """Return ``(v_dom, w)`` with ``w(v) = v_dom`` dominant and ``w`` minimal."""
        cur = tuple(v)
        word = []
        while True:
            for i, a in enumerate(self.simple_coords):
                if dot(a, cur) < 0:
                    cur = self.reflect(cur, self.simple[i])
                    word.append(i)
                    break
            else:
                break
        return cur, self.from_word(reversed(word))

    def is_dominant(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.simple_coords)

    def coroot_coefficients(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coefficients of ``v`` in the simple coroots, or None if outside their span."""
        if not self.simple:
            return () if not any(v) else None
        return solve_rational(transpose(self.simple_cocoords), list(v))

    def leq_dominance(self, v: Sequence, w: Sequence) -> bool:
        """True when ``w - v`` is a non-negative real combination of positive coroots."""
        coeffs = self.coroot_coefficients([b - a for a, b in zip(v, w)])
        return coeffs is not None and all(c >= 0 for c in coeffs)

    def is_minuscule(self, mu: Sequence) -> bool:
        return all(abs(r.pair(mu)) <= 1 for r in self.positive_roots)

    def pi_set(self) -> list[Root]:
        """Negative simple roots followed by the highest root of each component."""
        return [-a for a in self.simple] + list(self.highest_roots)

    def weyl_orbit(self, v: Sequence) -> list[tuple]:
        seen = {tuple(v)}
        stack = [tuple(v)]
        while stack:
            cur = stack.pop()
            for a in self.simple:
                nxt = self.reflect(cur, a)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return sorted(seen, reverse=True)

    # sub-systems ----------------------------------------------------------

    def subsystem(self, roots: Iterable[Root]) -> "RootDatum":
        """The root datum on the same lattice spanned by a closed set of roots.

        Positivity is inherited; the base is the set of indecomposable
        positive roots of the subset.
        """
        subset = {r.coords for r in roots}
        positives = [r for r in self.roots if r.positive and r.coords in subset]
        sums = {tuple(a + b for a, b in zip(p.coords, q.coords)) for p in positives for q in positives}
        simple = [r for r in positives if r.coords not in sums]
        sub = RootDatum(
            self.rank,
            [r.coords for r in simple],
            [r.coroot for r in simple],
            sigma=self.sigma,
            name=f"{self.name}[sub]",
            family="sub",
            check_sigma=False,
        )
        if {r.coords for r in sub.roots} != subset:
            raise DatumError("root subset is not a closed subsystem")
        return sub

    def levi(self, subset: Iterable[int]) -> "RootDatum":
        subset = sorted(set(subset))
        sub = RootDatum(
            self.rank,
            [self.simple_coords[i] for i in subset],
            [self.simple_cocoords[i] for i in subset],
            sigma=self.sigma,
            name=f"{self.name}[J={','.join(str(i + 1) for i in subset)}]",
            family="levi",
            check_sigma=False,
        )
        sub.parent_indices = subset
        return sub

    def sigma_power(self, k: int) -> WeylElement:
        out = WeylElement.identity(self.rank)
        for _ in range(k):
            out = self.sigma * out
        return out

    def sigma_order(self) -> int:
        return self.sigma.order()

    def __repr__(self) -> str:
        return f"RootDatum({self.name})"


# named data -----------------------------------------------------------------

_EDGES_E = {6: [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)], 7: [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]}


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """``A[i][j] = <alpha_i, alpha_j^vee>`` in Bourbaki labelling."""
    family = family.upper()
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if family in ("A", "B", "C", "D"):
        minimum = {"A": 1, "B": 2, "C": 2, "D": 4}[family]
        if n < minimum:
            raise DatumError(f"{family}{n} is not supported (rank must be at least {minimum})")
        for i in range(n - 1):
            a[i][i + 1] = a[i + 1][i] = -1
        if family == "B":
            a[n - 2][n - 1] = -2
        elif family == "C":
            a[n - 1][n - 2] = -2
        elif family == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif family == "E":
        if n not in _EDGES_E:
            raise DatumError(f"E{n} is not supported")
        for i, j in _EDGES_E[n]:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    else:
        raise DatumError(f"family {family} is not supported")
    return a


def diagram_automorphism(family: str, rank: int, order: int) -> tuple[int, ...]:
    """The diagram automorphism of the given order, as a 0-based permutation."""
    ident = tuple(range(rank))
    if order == 1:
        return ident
    family = family.upper()
    if order == 2 and family == "A" and rank >= 2:
        return tuple(rank - 1 - i for i in range(rank))
    if order == 2 and family == "D":
        perm = list(ident)
        perm[rank - 2], perm[rank - 1] = rank - 1, rank - 2
        return tuple(perm)
    if order == 2 and family == "E" and rank == 6:
        return (5, 1, 4, 3, 2, 0)
    if order == 3 and family == "D" and rank == 4:
        return (2, 1, 3, 0)
    raise DatumError(f"no diagram automorphism of order {order} on {family}{rank}")


def _check_diagram_perm(cartan: list[list[int]], perm: Sequence[int]) -> None:
    n = len(cartan)
    if sorted(perm) != list(range(n)):
        raise DatumError("sigma is not a permutation of the simple nodes")
    for i in range(n):
        for j in range(n):
            if cartan[perm[i]][perm[j]] != cartan[i][j]:
                raise DatumError("sigma is not a diagram automorphism")


def build_root_datum(
    family: str,
    rank: int,
    isogeny: str = "adjoint",
    sigma: int | Sequence[int] = 1,
    copies: int = 1,
) -> RootDatum:
    """Construct a named root datum.

    ``sigma`` is either the order of a standard diagram automorphism or an
    explicit 0-based permutation of the simple nodes. ``copies > 1`` builds
    the product datum whose automorphism cycles the factors and applies
    ``sigma`` to the first one.
    """
    family = family.upper()
    if family in ("E", "F", "G") and (family != "E" or rank == 8):
        raise DatumError(f"{family}{rank} is not supported")
    isogeny = {"ad": "adjoint", "adj": "adjoint", "simply-connected": "sc"}.get(isogeny, isogeny)
    if isogeny not in ("adjoint", "sc", "gl"):
        raise DatumError(f"unknown isogeny {isogeny!r}")
    if isogeny == "gl" and family != "A":
        raise DatumError("the gl isogeny is only available for type A")
    cartan = cartan_matrix(family, rank)
    perm = diagram_automorphism(family, rank, sigma) if isinstance(sigma, int) else tuple(sigma)
    _check_diagram_perm(cartan, perm)
    if isogeny == "gl":
        n = rank + 1
        dim = n
        simple = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(rank)]
        cosimple = list(simple)
        if perm == tuple(range(rank)):
            ymat = identity(n)
        else:
            ymat = [[-int(i == n - 1 - j) for j in range(n)] for i in range(n)]
    elif isogeny == "adjoint":
        dim = rank
        simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
        cosimple = [tuple(cartan[k][i] for k in range(rank)) for i in range(rank)]
        ymat = [[int(i == perm[j]) for j in range(rank)] for i in range(rank)]
    else:
        dim = rank
        cosimple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
        simple = [tuple(cartan[i][k] for k in range(rank)) for i in range(rank)]
        ymat = [[int(i == perm[j]) for j in range(rank)] for i in range(rank)]
    sig = WeylElement.from_ymat(ymat)
    tag = {"adjoint": "adjoint", "sc": "sc", "gl": "gl"}[isogeny]
    order = sig.order()
    name = f"{family}{rank}:{tag}" + (f":sigma={order}" if order > 1 else "")
    base = RootDatum(dim, simple, cosimple, sig, name=name, family=family, isogeny=isogeny)
    if copies == 1:
        return base
    return product_datum(base, copies)


def product_datum(base: RootDatum, copies: int) -> RootDatum:
    """``copies`` copies of ``base``; the automorphism shifts factors and twists the last slot by sigma."""
    r = base.rank
    dim = r * copies
    simple, cosimple = [], []
    for k in range(copies):
        pad_l, pad_r = (0,) * (r * k), (0,) * (r * (copies - k - 1))
        simple += [pad_l + a + pad_r for a in base.simple_coords]
        cosimple += [pad_l + c + pad_r for c in base.simple_cocoords]
    # (l_1, ..., l_d) -> (l_2, ..., l_d, sigma(l_1))
    ymat = [[0] * dim for _ in range(dim)]
    for k in range(copies - 1):
        for i in range(r):
            ymat[k * r + i][(k + 1) * r + i] = 1
    for i in range(r):
        for j in range(r):
            ymat[(copies - 1) * r + i][j] = base.sigma.ymat[i][j]
    sig = WeylElement.from_ymat(ymat)
    return RootDatum(
        dim,
        simple,
        cosimple,
        sig,
        name=f"{base.name}:d={copies}",
        family=base.family,
        isogeny=base.isogeny,
        copies=copies,
        base=base,
    )


_SPEC_RE = re.compile(r"^(?:(GL)_?(\d+)|([A-Ga-g])(\d+))((?::[^:]+)*)$")


def parse_datum_spec(text: str) -> RootDatum:
    """Parse ``<letter><rank>[:adjoint|sc|gl][:d=<copies>][:sigma=<order-or-perm>]``.

    ``GL_n`` is accepted as shorthand for ``A{n-1}:gl``; permutations are
    comma-separated 1-based images of the simple nodes.

    >>> parse_datum_spec("GL_3:d=2").name
    'A2:gl:d=2'
    """
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise DatumError(f"cannot parse datum {text!r}")
    if m.group(1):
        family, rank, isogeny = "A", int(m.group(2)) - 1, "gl"
    else:
        family, rank, isogeny = m.group(3).upper(), int(m.group(4)), "adjoint"
    copies = 1
    sigma: int | tuple[int, ...] = 1
    for part in filter(None, m.group(5).split(":")):
        if part in ("adjoint", "ad", "sc", "gl"):
            isogeny = part
        elif part.startswith("d="):
            copies = int(part[2:])
            if copies < 1:
                raise DatumError("number of copies must be positive")
        elif part.startswith("sigma="):
            value = part[6:]
            if "," in value:
                sigma = tuple(int(x) - 1 for x in value.split(","))
            else:
                sigma = int(value)
        else:
            raise DatumError(f"unknown datum option {part!r}")
    if rank < 1:
        raise DatumError("rank must be positive")
    return build_root_datum(family, rank, isogeny, sigma, copies)
