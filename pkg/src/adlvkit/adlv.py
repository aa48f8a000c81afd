"""Strata of affine Deligne-Lusztig varieties for basic classes and minuscule coweights.

A coweight ``lam`` indexes a stratum when ``lam^natural = b sigma(lam) - lam``
lies in the Weyl orbit of ``mu``; its dimension is the size of

    R(lam) = {alpha : <alpha, lam^natural> = -1 and lam_alpha >= 1}.

Top-dimensional strata are grouped into classes under the action of the
twisted centraliser; :func:`count_top_classes` counts the classes and the
count is compared with a weight multiplicity of the dual group.

Everything window-sized is vectorised with numpy; single coweights go
through exact Python arithmetic.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .affine import (
    BasicElement,
    ExtAffineElement,
    OrbitData,
    aff_length,
    epsilon_of,
    kottwitz_lattice,
    lambda_gamma,
    make_basic,
    natural_dagger,
    omega_twist_fixed,
    orbit_data,
)
from .isocrystal import adlv_dim, adlv_nonempty, defect, newton
from .lattice import Lattice, _row_echelon_with_transform, dot, integer_kernel, integer_solve, kernel_rational
from .rootdata import DatumError, Root, RootDatum, WeylElement


class InvariantError(AssertionError):
    """A proven identity failed on concrete data."""


# setting ------------------------------------------------------------------------


@dataclass(frozen=True)
class GenericVector:
    v: tuple[int, ...]
    v_dominant: tuple[int, ...]
    z: WeylElement                 # minimal with z(v) = v_dominant
    levi_indices: tuple[int, ...]  # simple indices of the standard Levi M
    levi: RootDatum
    b_levi: ExtAffineElement       # z b sigma(z)^{-1}
    centraliser: RootDatum         # roots vanishing on v, inherited positivity
    vanishing: np.ndarray          # mask over roots: <alpha, v> = 0
    raising: np.ndarray            # mask over roots: <alpha, v> > 0


class Setting:
    """Data shared by every coweight for a fixed datum, basic ``b`` and minuscule ``mu``."""

    def __init__(self, datum: RootDatum, b: BasicElement | ExtAffineElement, mu: Sequence[int]):
        self.datum = datum
        self.b = b if isinstance(b, BasicElement) else make_basic(datum, b)
        mu_dom = datum.dominant_rep(tuple(mu))[0]
        if not datum.is_minuscule(mu_dom):
            raise DatumError(f"{tuple(mu)} is not minuscule")
        if not adlv_nonempty(datum, mu_dom, self.b):
            raise DatumError("the variety is empty for this pair")
        self.mu = mu_dom
        dim = adlv_dim(datum, mu_dom, self.b)
        if dim.denominator != 1:
            raise InvariantError("non-integral expected dimension")
        self.dim = int(dim)
        self.defect = defect(datum, self.b)
        self.nu = newton(datum, self.b)
        self.orbit = datum.weyl_orbit(mu_dom)
        self.orbit_index = {eta: k for k, eta in enumerate(self.orbit)}
        self.roots = datum.root_matrix
        self.pos = datum.positive_mask.astype(np.int64)
        self.lin = self.b.linear.ynp()
        self.lin_x = self.b.linear.xnp()
        self.tau = np.array(self.b.element.translation, dtype=np.int64)
        self.simple = np.array(datum.simple_coords, dtype=np.int64).reshape(-1, datum.rank)

    # -- single coweights -----------------------------------------------------

    def natural(self, lam: Sequence[int]) -> tuple:
        return natural_dagger(self.b, lam)[1]

    def in_stratum_set(self, lam: Sequence[int]) -> bool:
        return self.natural(lam) in self.orbit_index

    def r_set(self, lam: Sequence[int]) -> tuple[Root, ...]:
        nat = self.natural(lam)
        return tuple(r for r in self.datum.roots if r.pair(nat) == -1 and lambda_gamma(lam, r) >= 1)

    def image_root(self, root: Root, power: int = 1) -> Root:
        coords = root.coords
        for _ in range(power):
            coords = self.b.linear.act_root_coords(coords)
        return self.datum.root(coords)

    # -- cached structure -----------------------------------------------------

    @cached_property
    def generic(self) -> GenericVector:
        return generic_vector(self.datum, self.b)

    @cached_property
    def pi_orbits(self) -> list[OrbitData]:
        return [orbit_data(self.b, alpha) for alpha in self.datum.pi_set()]

    @cached_property
    def pi_orbit_indices(self) -> list[np.ndarray]:
        return [np.array([self.datum.root_index(r) for r in od.roots]) for od in self.pi_orbits]

    @cached_property
    def omega_moves(self) -> list[ExtAffineElement]:
        gens = omega_twist_fixed(self.datum, self.b)
        out = []
        for g in gens:
            out.append(g)
            out.append(g.inverse())
        return out

    @cached_property
    def centre_lattice(self) -> Lattice:
        """Central coweights fixed by ``p(b) sigma``; translations by these are moves."""
        rows = [list(a) for a in self.datum.simple_coords]
        rows += [[int(self.lin[i, j]) - int(i == j) for j in range(self.datum.rank)] for i in range(self.datum.rank)]
        return Lattice(integer_kernel(rows, self.datum.rank), self.datum.rank)

    @cached_property
    def levi_group(self) -> tuple[list[ExtAffineElement], Lattice, list[ExtAffineElement]]:
        """Generators of the twist-fixed length-zero group of the centraliser of ``v``.

        Returns the generators, the lattice of its pure translations and a
        list of coset representatives modulo that lattice.
        """
        gen = self.generic
        r = self.datum.rank
        gens = omega_twist_fixed(self.datum, self.b, gen.centraliser)
        rows = [list(a.coords) for a in gen.centraliser.roots]
        rows += [[int(self.lin[i, j]) - int(i == j) for j in range(r)] for i in range(r)]
        translations = Lattice(integer_kernel(rows, r), r)
        ident = ExtAffineElement((0,) * r, WeylElement.identity(r))
        key = lambda x: (x.finite.ymat, translations.reduce(x.translation))
        reps = {key(ident): ident}
        frontier = [ident]
        moves = gens + [g.inverse() for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in moves:
                    y = g * x
                    y = ExtAffineElement(translations.reduce(y.translation), y.finite)
                    k = key(y)
                    if k not in reps:
                        reps[k] = y
                        nxt.append(y)
            frontier = nxt
        for y in reps.values():
            if not self.b.fixes(y):
                raise InvariantError("coset representative is not fixed by the twist")
        return gens, translations, list(reps.values())

    @cached_property
    def levi_dims(self) -> np.ndarray:
        """Expected stratum dimension inside the Levi, indexed by position in the Weyl orbit of mu (-1 when empty)."""
        gen = self.generic
        rho_m = gen.levi.rho
        kappa_m = kottwitz_lattice(gen.levi)
        target = kappa_m.reduce(gen.b_levi.translation)
        out = []
        for eta in self.orbit:
            if kappa_m.reduce(gen.z(eta)) != target:
                out.append(-1)  # the Levi variety is empty; no coweight reaches this orbit point
                continue
            eta_m = gen.levi.dominant_rep(gen.z(eta))[0]
            val = dot(rho_m, [a - c for a, c in zip(eta_m, self.nu)]) - Fraction(self.defect, 2)
            if val.denominator != 1:
                raise InvariantError("non-integral Levi dimension")
            out.append(int(val))
        return np.array(out, dtype=np.int64)

    @cached_property
    def outside_orbits(self) -> list[np.ndarray]:
        """Orbits of ``p(b) sigma`` on roots not vanishing on ``v``."""
        gen = self.generic
        seen: set[int] = set()
        out = []
        for k, r in enumerate(self.datum.roots):
            if gen.vanishing[k] or k in seen:
                continue
            orb = [self.datum.root_index(x) for x in _root_orbit(self, r)]
            seen.update(orb)
            out.append(np.array(orb))
        return out

    @cached_property
    def levi_root_mask(self) -> np.ndarray:
        idx = set(self.generic.levi_indices)
        return np.array([all(c == 0 or i in idx for i, c in enumerate(coeff))
                         for coeff in self.datum.coefficients], dtype=bool)


def _root_orbit(setting: Setting, root: Root) -> list[Root]:
    out = [root]
    while True:
        nxt = setting.image_root(out[-1])
        if nxt == root:
            return out
        out.append(nxt)


_SETTINGS: dict = {}


def get_setting(datum: RootDatum, b: BasicElement | ExtAffineElement, mu: Sequence[int]) -> Setting:
    elem = b.element if isinstance(b, BasicElement) else b
    key = (id(datum), elem, tuple(mu))
    if key not in _SETTINGS:
        _SETTINGS[key] = (datum, Setting(datum, b, mu))
    return _SETTINGS[key][1]


# generic vector -----------------------------------------------------------------------


def generic_vector(datum: RootDatum, b: BasicElement) -> GenericVector:
    """A point of the fixed space of ``p(b) sigma`` avoiding every root hyperplane that does not contain that space."""
    r = datum.rank
    lin = b.linear.ymat
    rows = [[lin[i][j] - int(i == j) for j in range(r)] for i in range(r)]
    basis = kernel_rational(rows, r)
    basis = [_integral(vec) for vec in basis]
    must_vanish = [all(dot(a.coords, f) == 0 for f in basis) for a in datum.roots]
    v = None
    for n in range(2, 200):
        cand = [0] * r
        for k, f in enumerate(basis):
            cand = [x + n ** k * y for x, y in zip(cand, f)]
        if all((dot(a.coords, cand) == 0) == mv for a, mv in zip(datum.roots, must_vanish)):
            v = tuple(cand)
            break
    if v is None:
        raise DatumError("no generic vector found")
    vbar, z = datum.dominant_rep(v)
    levi_indices = tuple(i for i, a in enumerate(datum.simple_coords) if dot(a, vbar) == 0)
    levi = datum.levi(levi_indices)
    z_aff = ExtAffineElement.from_weyl(z)
    sz = ExtAffineElement.from_weyl(z.conjugate_by(datum.sigma))
    b_levi = z_aff * b.element * sz.inverse()
    if aff_length(levi, b_levi) != 0 or not levi.in_weyl_group(b_levi.finite):
        raise InvariantError("conjugated b is not a length-zero element of the Levi")
    vanishing = np.array([dot(a.coords, v) == 0 for a in datum.roots], dtype=bool)
    raising = np.array([dot(a.coords, v) > 0 for a in datum.roots], dtype=bool)
    centraliser = datum.subsystem([a for a, z0 in zip(datum.roots, vanishing) if z0])
    return GenericVector(v, vbar, z, levi_indices, levi, b_levi, centraliser, vanishing, raising)


def _integral(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


# single-coweight API ------------------------------------------------------------------


@dataclass(frozen=True)
class LambdaReport:
    lam: tuple[int, ...]
    natural: tuple[int, ...]
    R: tuple[Root, ...]
    dim: int
    top: bool
    small: bool | None = None
    pi: tuple[Root, ...] | None = None
    flat: tuple[int, ...] | None = None
    class_id: int | None = None


def classify_lambda(datum: RootDatum, mu: Sequence[int], b: BasicElement | ExtAffineElement,
                    lam: Sequence[int]) -> LambdaReport:
    """Stratum data of ``lam``; raises when ``lam`` does not index a stratum."""
    s = get_setting(datum, b, mu)
    lam = tuple(lam)
    nat = s.natural(lam)
    if nat not in s.orbit_index:
        raise DatumError(f"{lam} does not index a stratum: natural part {nat} is not conjugate to {s.mu}")
    r = s.r_set(lam)
    small, pi = small_and_type(s, lam)
    return LambdaReport(lam, nat, r, len(r), len(r) == s.dim, small, pi, lambda_flat(s, lam))


def stratum_dim(datum: RootDatum, mu, b, lam) -> int:
    return classify_lambda(datum, mu, b, lam).dim


def lambda_flat(setting: Setting, lam: Sequence[int]) -> tuple:
    """``epsilon_lam^{-1}(lam^natural)``."""
    eps = epsilon_of(setting.datum, lam)
    return eps.inverse()(setting.natural(lam))


def is_top_by_criterion(setting: Setting, lam: Sequence[int]) -> bool:
    """Top-dimensionality decided through the Levi of the generic vector, checked against the direct count."""
    gen = setting.generic
    datum = setting.datum
    lam = tuple(lam)
    nat = setting.natural(lam)
    zl, zn = gen.z(lam), gen.z(nat)
    levi = gen.levi
    r_levi = sum(1 for a in levi.roots if a.pair(zn) == -1 and lambda_gamma(zl, a) >= 1)
    cond1 = r_levi == setting.levi_dims[setting.orbit_index[nat]]
    cond2 = True
    for orb in setting.outside_orbits:
        vals = [lambda_gamma(lam, datum.roots[k]) for k in orb]
        if not (all(x >= 0 for x in vals) or all(x <= -1 for x in vals)):
            cond2 = False
            break
    verdict = cond1 and cond2
    if verdict != (len(setting.r_set(lam)) == setting.dim):
        raise InvariantError(f"Levi criterion disagrees with the stratum dimension at {lam}")
    return verdict


def small_and_type(setting: Setting, lam: Sequence[int]) -> tuple[bool, tuple[Root, ...]]:
    """Whether ``lam`` is small, and the set of finite-type orbits on which ``lam_beta >= 0``."""
    top = len(setting.r_set(lam)) == setting.dim
    small = True
    pi = []
    for od in setting.pi_orbits:
        vals = [lambda_gamma(lam, beta) for beta in od.roots]
        if not any(x <= 0 for x in vals):
            small = False
        if od.finite:
            if all(x >= 0 for x in vals):
                pi.append(od.alpha)
            elif not all(x <= -1 for x in vals) and top:
                raise InvariantError(f"mixed signs on a finite orbit at top coweight {lam}")
    return small, tuple(pi)


@dataclass(frozen=True)
class Move:
    kind: str  # "omega", "orbit", "orbit-fixed", "levi"
    target: tuple[int, ...]


def _apply(x: ExtAffineElement, lam: Sequence[int]) -> tuple:
    return x(lam)


def equivalence_moves(setting: Setting, lam: Sequence[int]) -> list[Move]:
    """Moves that stay inside one class; each target is checked to be top."""
    lam = tuple(lam)
    if len(setting.r_set(lam)) != setting.dim:
        raise DatumError(f"{lam} is not top")
    out = []
    for w in setting.omega_moves:
        out.append(Move("omega", w(lam)))
    for od in setting.pi_orbits:
        if not od.finite:
            continue
        vals = [lambda_gamma(lam, beta) for beta in od.roots]
        if any(x == 0 for x in vals):
            out.append(Move("orbit-fixed", lam))
        elif all(x >= 1 for x in vals):
            out.append(Move("orbit", od.longest(lam)))
    if in_levi_chamber(setting, lam):
        gens, _, _ = setting.levi_group
        for g in gens + [g.inverse() for g in gens]:
            target = g(lam)
            if in_levi_chamber(setting, target):
                out.append(Move("levi", target))
    for mv in out:
        if not setting.in_stratum_set(mv.target) or len(setting.r_set(mv.target)) != setting.dim:
            raise InvariantError(f"move {mv.kind} from {lam} leaves the top strata")
    return out


def in_levi_chamber(setting: Setting, lam: Sequence[int]) -> bool:
    """``lam_alpha >= 0`` for every root with ``<alpha, v> > 0``."""
    gen = setting.generic
    return all(lambda_gamma(lam, a) >= 0 for a, up in zip(setting.datum.roots, gen.raising) if up)


# window enumeration --------------------------------------------------------------------


def default_window(setting: Setting) -> int:
    env = os.environ.get("ADLVKIT_WINDOW")
    if env:
        return int(env)
    datum = setting.datum
    theta_pair = max((t.pair(setting.mu) for t in datum.highest_roots), default=0)
    h = max(datum.coxeter_numbers, default=1)
    return theta_pair + 2 * h


def _box_points(p0: np.ndarray, h: np.ndarray, pivots: list[int], bound: int) -> np.ndarray:
    """Integer ``c`` with ``p0 + c @ h`` inside ``[-bound, bound]`` in every coordinate (``h`` echelon)."""
    s = len(p0)
    rho = len(pivots)
    coeffs = np.zeros((1, 0), dtype=np.int64)
    vals = p0[None, :].astype(np.int64)
    for j in range(rho):
        col = pivots[j]
        step = int(h[j, col])
        cur = vals[:, col]
        lo = -((bound + cur) // step)  # ceil((-bound - cur) / step)
        hi = (bound - cur) // step
        counts = np.maximum(hi - lo + 1, 0)
        keep = counts > 0
        coeffs, vals, lo, counts = coeffs[keep], vals[keep], lo[keep], counts[keep]
        if not len(coeffs):
            return np.zeros((0, rho), dtype=np.int64)
        rep = np.repeat(np.arange(len(coeffs)), counts)
        offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        c = lo[rep] + offsets
        coeffs = np.concatenate([coeffs[rep], c[:, None]], axis=1)
        vals = vals[rep] + c[:, None] * h[j][None, :]
        nxt = pivots[j + 1] if j + 1 < rho else s
        if nxt > col + 1:
            ok = (np.abs(vals[:, col + 1:nxt]) <= bound).all(axis=1)
            coeffs, vals = coeffs[ok], vals[ok]
    ok = (np.abs(vals) <= bound).all(axis=1)
    return coeffs[ok]


@dataclass
class WindowData:
    window: int
    lams: np.ndarray      # canonical representatives modulo central fixed coweights
    natural: np.ndarray
    orbit_pos: np.ndarray  # index of lam^natural in the Weyl orbit of mu
    lam_gamma: np.ndarray
    rsize: np.ndarray
    top: np.ndarray
    chamber: np.ndarray   # lam_alpha >= 0 whenever <alpha, v> > 0


def reduce_rows(lattice: Lattice, rows: np.ndarray) -> np.ndarray:
    out = rows.copy()
    for vec, p in zip(lattice.basis, lattice.pivots):
        vec = np.array(vec, dtype=np.int64)
        q = np.floor_divide(out[:, p], vec[p])
        out -= q[:, None] * vec[None, :]
    return out


def enumerate_window(setting: Setting, window: int) -> WindowData:
    """All ``lam`` indexing strata with ``max_i |<alpha_i, lam>| <= window``, modulo central fixed coweights."""
    datum = setting.datum
    r = datum.rank
    lin_minus = [[int(setting.lin[i, j]) - int(i == j) for j in range(r)] for i in range(r)]
    kernel = integer_kernel(lin_minus, r)
    kmat = np.array(kernel, dtype=np.int64).reshape(len(kernel), r)  # rows span K
    simple = setting.simple
    if len(kernel):
        images = (kmat @ simple.T).tolist()  # k x s
        h, u, pivots = _row_echelon_with_transform(images) if images and images[0] else ([], [], [])
    else:
        h, u, pivots = [], [], []
    rho = len(pivots)
    h_np = np.array(h, dtype=np.int64)[:rho] if rho else np.zeros((0, simple.shape[0]), dtype=np.int64)
    basis = (np.array(u, dtype=np.int64)[:rho] @ kmat) if rho else np.zeros((0, r), dtype=np.int64)
    centre = setting.centre_lattice
    chunks, pos_chunks = [], []
    for k, eta in enumerate(setting.orbit):
        rhs = [e - t for e, t in zip(eta, setting.tau.tolist())]
        base = integer_solve(lin_minus, rhs)
        if base is None:
            continue
        base_np = np.array(base, dtype=np.int64)
        p0 = simple @ base_np if simple.shape[0] else np.zeros(0, dtype=np.int64)
        if simple.shape[0] == 0:
            coeffs = np.zeros((1, 0), dtype=np.int64)
        else:
            coeffs = _box_points(p0, h_np, pivots, window)
        lams = base_np[None, :] + coeffs @ basis
        chunks.append(reduce_rows(centre, lams))
        pos_chunks.append(np.full(len(lams), k, dtype=np.int64))
    lams = np.concatenate(chunks) if chunks else np.zeros((0, r), dtype=np.int64)
    orbit_pos = np.concatenate(pos_chunks) if pos_chunks else np.zeros(0, dtype=np.int64)
    nat = lams @ setting.lin.T + setting.tau[None, :] - lams
    orbit_arr = np.array(setting.orbit, dtype=np.int64)
    if not (nat == orbit_arr[orbit_pos]).all():
        raise InvariantError("enumerated coweight has the wrong natural part")
    pairs = lams @ setting.roots.T
    lam_g = pairs - setting.pos[None, :]
    nat_pairs = nat @ setting.roots.T
    rsize = ((nat_pairs == -1) & (lam_g >= 1)).sum(axis=1)
    top = rsize == setting.dim
    raising = setting.generic.raising
    chamber = (lam_g[:, raising] >= 0).all(axis=1) if raising.any() else np.ones(len(lams), dtype=bool)
    return WindowData(window, lams, nat, orbit_pos, lam_g, rsize, top, chamber)


def criterion_mask(setting: Setting, wd: WindowData) -> np.ndarray:
    """Vectorised Levi criterion for every coweight in the window."""
    gen = setting.generic
    z = gen.z.ynp()
    mask = setting.levi_root_mask
    roots_m = setting.roots[mask]
    pos_m = setting.pos[mask]
    zl = wd.lams @ z.T
    zn = wd.natural @ z.T
    r_levi = ((zn @ roots_m.T == -1) & (zl @ roots_m.T - pos_m[None, :] >= 1)).sum(axis=1)
    ok = r_levi == setting.levi_dims[wd.orbit_pos]
    for orb in setting.outside_orbits:
        vals = wd.lam_gamma[:, orb]
        ok &= (vals >= 0).all(axis=1) | (vals <= -1).all(axis=1)
    return ok


def small_mask(setting: Setting, lam_g: np.ndarray) -> np.ndarray:
    ok = np.ones(len(lam_g), dtype=bool)
    for idx in setting.pi_orbit_indices:
        ok &= (lam_g[:, idx] <= 0).any(axis=1)
    return ok


def _apply_rows(x: ExtAffineElement, rows: np.ndarray) -> np.ndarray:
    return rows @ x.finite.ynp().T + np.array(x.translation, dtype=np.int64)[None, :]


def class_keys(setting: Setting, rows: np.ndarray) -> np.ndarray:
    """Lexicographically least element of ``{coset(lam)}`` reduced mod pure translations: a class invariant."""
    _, translations, reps = setting.levi_group
    stack = np.stack([reduce_rows(translations, _apply_rows(g, rows)) for g in reps], axis=1)  # k x g x r
    alive = np.ones(stack.shape[:2], dtype=bool)
    for c in range(stack.shape[2]):
        col = np.where(alive, stack[:, :, c], np.iinfo(np.int64).max)
        best = col.min(axis=1)
        alive &= stack[:, :, c] == best[:, None]
    first = alive.argmax(axis=1)
    return stack[np.arange(len(rows)), first]


@dataclass(frozen=True)
class CountResult:
    count: int
    window: int
    stabilized: bool
    counts_by_window: tuple[tuple[int, int], ...]
    representatives: tuple[tuple[int, ...], ...]
    max_stratum_dim: int
    expected_dim: int
    small_representatives: bool
    window_size: int


class RowIndex:
    """Vectorised lookup of integer rows: position in a fixed table, or -1."""

    def __init__(self, rows: np.ndarray):
        self._dtype = np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))
        keys = np.ascontiguousarray(rows).view(self._dtype).ravel()
        self._order = np.argsort(keys, kind="stable")
        self._sorted = keys[self._order]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        if not len(self._sorted) or not len(rows):
            return np.full(len(rows), -1, dtype=np.int64)
        keys = np.ascontiguousarray(rows).view(self._dtype).ravel()
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        found = self._sorted[pos] == keys
        return np.where(found, self._order[pos], -1)


def _orbit_moves(setting: Setting) -> list[tuple[ExtAffineElement, np.ndarray]]:
    """Longest elements of the finite orbit groups with the root indices of their orbits."""
    return [(od.longest, idx) for od, idx in zip(setting.pi_orbits, setting.pi_orbit_indices) if od.finite]


def _union_check(setting: Setting, wd: WindowData, sel: np.ndarray, keys: np.ndarray) -> None:
    """Omega and orbit moves between chamber coweights must respect the class keys."""
    rows = wd.lams[sel]
    if not len(rows):
        return
    index = RowIndex(rows)
    centre = setting.centre_lattice
    lam_g = wd.lam_gamma[sel]
    moves = [(w, np.ones(len(rows), dtype=bool)) for w in setting.omega_moves]
    moves += [(w, (lam_g[:, idx] >= 1).all(axis=1)) for w, idx in _orbit_moves(setting)]
    for mv, active in moves:
        images = reduce_rows(centre, _apply_rows(mv, rows))
        j = index.lookup(images)
        hit = active & (j >= 0)
        if (keys[hit] != keys[j[hit]]).any():
            raise InvariantError("a class move joins two different class keys")


def _small_search(setting: Setting, wd: WindowData, start_rows: np.ndarray) -> bool:
    """Breadth-first search through top coweights of the window for a small one."""
    top_rows = wd.lams[wd.top]
    lam_g = wd.lam_gamma[wd.top]
    chamber = wd.chamber[wd.top]
    index = RowIndex(top_rows)
    small = small_mask(setting, lam_g)
    centre = setting.centre_lattice
    _, _, reps = setting.levi_group
    orbit_moves = _orbit_moves(setting)
    seen = np.zeros(len(top_rows), dtype=bool)
    frontier = index.lookup(start_rows)
    frontier = np.unique(frontier[frontier >= 0])
    seen[frontier] = True
    while len(frontier):
        if small[frontier].any():
            return True
        targets = []
        rows = top_rows[frontier]
        for w in setting.omega_moves:
            targets.append(_apply_rows(w, rows))
        for w, idx in orbit_moves:
            vals = lam_g[frontier][:, idx]
            ok = (vals >= 1).all(axis=1) | (vals <= -1).all(axis=1)
            targets.append(_apply_rows(w, rows[ok]))
        inside = rows[chamber[frontier]]
        for g in reps:
            targets.append(_apply_rows(g, inside))
        cand = np.concatenate(targets) if targets else np.zeros((0, top_rows.shape[1]), dtype=np.int64)
        j = index.lookup(reduce_rows(centre, cand))
        j = np.unique(j[j >= 0])
        frontier = j[~seen[j]]
        seen[frontier] = True
    return False


def count_at_window(setting: Setting, window: int, check_small: bool = True):
    wd = enumerate_window(setting, window)
    crit = criterion_mask(setting, wd)
    if not (crit == wd.top).all():
        bad = wd.lams[np.nonzero(crit != wd.top)[0][0]]
        raise InvariantError(f"Levi criterion disagrees with the stratum dimension at {tuple(bad)}")
    if len(wd.rsize) and wd.rsize.max() > setting.dim:
        raise InvariantError("a stratum exceeds the expected dimension")
    sel = wd.top & wd.chamber
    rows = wd.lams[sel]
    keys = class_keys(setting, rows) if len(rows) else np.zeros((0, setting.datum.rank), dtype=np.int64)
    _union_check(setting, wd, sel, keys)
    uniq, first = (np.unique(keys, axis=0, return_index=True) if len(keys)
                   else (keys, np.zeros(0, dtype=np.int64)))
    reps = [rows[i] for i in first]
    small_ok = True
    if check_small:
        for u in uniq:
            members = rows[(keys == u).all(axis=1)]
            if not _small_search(setting, wd, members):
                small_ok = False
    max_dim = int(wd.rsize.max()) if len(wd.rsize) else -1
    return len(uniq), reps, max_dim, small_ok, len(wd.lams)


def count_top_classes(datum: RootDatum, mu: Sequence[int], b: BasicElement | ExtAffineElement,
                      window: int | None = None, stabilize: bool = True,
                      check_small: bool = True) -> CountResult:
    """Number of classes of top-dimensional strata, enumerated on a window and checked for stability."""
    setting = get_setting(datum, b, mu)
    if window is None:
        window = default_window(setting)
    count, reps, max_dim, small_ok, size = count_at_window(setting, window, check_small)
    history = [(window, count)]
    stable = True
    if stabilize:
        for extra in (1, 2):
            c, _, _, _, _ = count_at_window(setting, window + extra, check_small=False)
            history.append((window + extra, c))
            stable &= c == count
    return CountResult(count, window, stable, tuple(history),
                       tuple(tuple(int(x) for x in r) for r in reps),
                       max_dim, setting.dim, small_ok, size)


# superbasic GL_n tables ---------------------------------------------------------------


@dataclass(frozen=True)
class SuperbasicTable:
    n: int
    d: int
    m: int
    lam: tuple[tuple[int, ...], ...]
    a: tuple[tuple[int, ...], ...]
    eps: tuple[tuple[int, ...], ...]        # epsilon of each factor as a 1-based permutation
    w: tuple[tuple[int, ...], ...]          # permutations, 1-based images
    flat: tuple[tuple[int, ...], ...]
    dim_value: int
    is_top: bool
    coxeter: bool                            # total length n - 1 and w_d ... w_1 an n-cycle
    flat_sum_ok: bool                        # sum of flats equals the m/n staircase
    partial_sums_ok: bool                    # nonnegative partial sums along each support


def gl_superbasic_setting(n: int, d: int, m: int, mus: Sequence[Sequence[int]]) -> Setting:
    from .affine import omega_from_class
    from .rootdata import build_root_datum, product_datum

    base = build_root_datum("A", n - 1, "gl")
    datum = base if d == 1 else product_datum(base, d)
    omega = omega_from_class(base, (1,) + (0,) * (n - 1))
    bm = ExtAffineElement((0,) * n, WeylElement.identity(n))
    for _ in range(m % n if m >= 0 else 0):
        bm = bm * omega
    shift = (m - m % n) // n
    bm = ExtAffineElement(tuple(x + shift for x in bm.translation), bm.finite)
    if d > 1:
        ident = WeylElement.identity(n)
        finite = ident
        trans = []
        blocks = []
        for k in range(d):
            blocks.append(bm.finite if k == d - 1 else ident)
            trans += list(bm.translation) if k == d - 1 else [0] * n
        ymat = [[0] * (n * d) for _ in range(n * d)]
        for k, blk in enumerate(blocks):
            for i in range(n):
                for j in range(n):
                    ymat[k * n + i][k * n + j] = blk.ymat[i][j]
        bm = ExtAffineElement(tuple(trans), WeylElement.from_ymat(ymat))
    mu = tuple(x for mu_t in mus for x in mu_t)
    return get_setting(datum, bm, mu)


def _perm_of(w: WeylElement, n: int, block: int) -> tuple[int, ...]:
    """1-based permutation ``i -> j`` with ``w(e_i) = e_j`` restricted to one factor."""
    off = block * n
    out = []
    for i in range(n):
        col = [w.ymat[off + j][off + i] for j in range(n)]
        out.append(col.index(1) + 1)
    return tuple(out)


def _inversions(perm: Sequence[int]) -> int:
    return sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])


def _is_n_cycle(perm: Sequence[int]) -> bool:
    n = len(perm)
    seen, cur = 0, 1
    for _ in range(n):
        cur = perm[cur - 1]
        seen += 1
        if cur == 1:
            break
    return seen == n and cur == 1


def superbasic_table(setting: Setting, n: int, d: int, m: int, lam: Sequence[int]) -> SuperbasicTable:
    """Tables ``a_{tau,i}``, permutations ``w_tau`` and ``flat`` for a coweight tuple of the product."""
    lam = tuple(lam)
    blocks = [lam[k * n:(k + 1) * n] for k in range(d)]
    eps = epsilon_of(setting.datum, lam)
    eps_perm = [_perm_of(eps, n, k) for k in range(d)]
    a = []
    for k in range(d):
        row = tuple(eps_perm[k][i] + n * blocks[k][eps_perm[k][i] - 1] for i in range(n))
        if any(row[i] <= row[i + 1] for i in range(n - 1)):
            raise InvariantError("a-table row is not strictly decreasing")
        if row != tuple(sorted((i + 1 + n * blocks[k][i] for i in range(n)), reverse=True)):
            raise InvariantError("a-table row is not the sorted sequence")
        a.append(row)
    ws, flats = [], []
    for k in range(d):
        nxt = a[(k + 1) % d]
        shift = m if k == d - 1 else 0
        perm, flat = [], []
        for i in range(n):
            target = a[k][i] - shift
            hits = [j for j in range(n) if (nxt[j] - target) % n == 0]
            if len(hits) != 1:
                raise InvariantError("the a-table recursion has no unique solution")
            j = hits[0]
            perm.append(j + 1)
            flat.append((nxt[j] - target) // n)
        ws.append(tuple(perm))
        flats.append(tuple(flat))
    flat_direct = lambda_flat(setting, lam)
    if tuple(x for f in flats for x in f) != tuple(flat_direct):
        raise InvariantError("flat from the recursion disagrees with the direct formula")
    length = sum(_inversions(w) for w in ws)
    rho = setting.datum.rho
    flat_all = tuple(x for f in flats for x in f)
    bmu = setting.datum.dominant_rep(flat_all)[0]
    dim_value = -length + dot(rho, [p - q for p, q in zip(bmu, flat_all)])
    top = dim_value == setting.dim
    composite = tuple(range(1, n + 1))
    for w in ws:
        composite = tuple(w[c - 1] for c in composite)
    # an n-cycle needs every simple reflection, so total length n - 1 forces each exactly once
    coxeter = length == n - 1 and _is_n_cycle(composite)
    staircase = tuple(((i + 1) * m) // n - (i * m) // n for i in range(n))
    summed = tuple(sum(f[i] for f in flats) for i in range(n))
    if dim_value.denominator != 1:
        raise InvariantError("non-integral dimension from the table")
    return SuperbasicTable(n, d, m, tuple(blocks), tuple(a), tuple(tuple(e) for e in eps_perm),
                           tuple(ws), tuple(flats), int(dim_value), top, coxeter,
                           summed == staircase, _partial_sums_ok(ws, flats))


def _support(perm: Sequence[int]) -> set[int]:
    """Simple indices ``i`` (1-based) with ``perm`` not preserving ``{1, ..., i}``."""
    n = len(perm)
    return {i for i in range(1, n) if max(perm[:i]) != i}


def _partial_sums_ok(ws, flats) -> bool:
    d = len(ws)
    for tau in range(d - 1):
        for i in _support(ws[tau]):
            total = 0
            for k in range(tau + 1, d):
                total += flats[k][i - 1] - flats[k][i]
                if total < 0:
                    return False
    return True
