"""Exact linear algebra over Z and Q for small dense matrices.

Matrices are lists of rows; vectors are tuples. Everything stays in Python
integers or :class:`fractions.Fraction`, so results are exact.

>>> Lattice([(1, -1)], 2).reduce((1, 0))
(0, 1)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def as_fraction_rows(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)]


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, vec)) for row in rows)


def mat_mul(left: Sequence[Sequence], right: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*right))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in left]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    work = as_fraction_rows(rows)
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        lead = work[r][c]
        work[r] = [x / lead for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def kernel_rational(rows: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space {x : A x = 0} over Q."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of A x = b over Q, or None when inconsistent."""
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        sol[p] = row[-1]
    return tuple(sol)


def inverse_rational(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    augmented = [list(row) + ident for row, ident in zip(rows, identity(n))]
    reduced, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def integer_inverse(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix."""
    inv = inverse_rational(rows)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def _row_echelon_with_transform(rows: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Integer row echelon form H = U A with U unimodular.

    Returns (H, U, pivots); zero rows of H sit at the bottom. Entries above a
    pivot are reduced into [0, pivot).
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    h = [list(r) for r in rows]
    u = identity(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if h[i][c] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: abs(h[i][c]))
            h[r], h[best] = h[best], h[r]
            u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-a for a in h[r]]
            u[r] = [-a for a in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                u[i] = [a - q * b for a, b in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return h, u, pivots


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^n : A x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(r) for r in identity(ncols)]
    at = transpose(rows)
    h, u, pivots = _row_echelon_with_transform(at)
    return [tuple(u[i]) for i in range(len(pivots), ncols)]


def integer_solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution of A x = b, or None."""
    ncols = len(rows[0])
    at = transpose(rows)
    h, u, pivots = _row_echelon_with_transform(at)
    residual = list(rhs)
    coeffs = [0] * ncols
    for k, p in enumerate(pivots):
        if residual[p] % h[k][p]:
            return None
        y = residual[p] // h[k][p]
        coeffs[k] = y
        residual = [a - y * b for a, b in zip(residual, h[k])]
    if any(residual):
        return None
    return tuple(sum(coeffs[k] * u[k][j] for k in range(ncols)) for j in range(ncols))


class Lattice:
    """A sublattice of Z^n with canonical coset representatives.

    The basis is kept in Hermite form, so :meth:`reduce` picks the unique
    representative whose pivot coordinates lie in ``[0, pivot)``.
    """

    def __init__(self, generators: Iterable[Sequence[int]], dim: int):
        self.dim = dim
        gens = [list(map(int, g)) for g in generators if any(g)]
        if gens:
            h, _, pivots = _row_echelon_with_transform(gens)
            self.basis = [tuple(h[i]) for i in range(len(pivots))]
            self.pivots = pivots
        else:
            self.basis, self.pivots = [], []

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, vec: Sequence[int]) -> tuple[int, ...]:
        v = list(vec)
        for row, p in zip(self.basis, self.pivots):
            q = v[p] // row[p]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def coordinates(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients of ``vec`` in :attr:`basis`, or None."""
        v = list(vec)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            if v[p] % row[p]:
                return None
            q = v[p] // row[p]
            coeffs.append(q)
            v = [a - q * b for a, b in zip(v, row)]
        return tuple(coeffs) if not any(v) else None


def smith_normal_form(rows: Sequence[Sequence[int]]):
    """Return (D, U, V) with U A V = D diagonal, U and V unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    m, n = len(rows), len(rows[0])
    a = [list(r) for r in rows]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x - k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] -= k * row[src]
        for row in v:
            row[dst] -= k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v
