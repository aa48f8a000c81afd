"""Littelmann path crystals for the dual group.

Paths live in ``Y (x) Q``. The operator for the simple index ``i`` measures
heights with the simple root ``alpha_i`` and reflects with its coroot, so the
resulting crystal is that of the representation of the dual group with
highest weight ``mu``.

A path is stored as a tuple of segments ``(velocity, duration)`` with exact
rational entries; adjacent segments with equal velocity are merged, which
makes the stored form canonical.

>>> from adlvkit.rootdata import parse_datum_spec
>>> c = crystal_generate(parse_datum_spec("GL_3"), (1, 0, 0))
>>> sorted(weights(c))
[(0, 0, 1), (0, 1, 0), (1, 0, 0)]
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import coinvariant_lattice
from .lattice import dot
from .rootdata import DatumError, RootDatum

Segment = tuple[tuple[Fraction, ...], Fraction]
Path = tuple[Segment, ...]


def straight_path(mu: Sequence) -> Path:
    return ((tuple(Fraction(x) for x in mu), Fraction(1)),)


def canonical(segments: Iterable[Segment]) -> Path:
    out: list[Segment] = []
    for vel, dur in segments:
        if dur == 0:
            continue
        if out and out[-1][0] == vel:
            out[-1] = (vel, out[-1][1] + dur)
        else:
            out.append((vel, dur))
    return tuple(out)


def endpoint(path: Path) -> tuple:
    rank = len(path[0][0])
    total = [Fraction(0)] * rank
    for vel, dur in path:
        total = [a + dur * v for a, v in zip(total, vel)]
    return tuple(int(x) if x.denominator == 1 else x for x in total)


def concatenate(paths: Sequence[Path]) -> Path:
    """``pi_1 * pi_2 * ...``: each factor runs for an equal share of the time."""
    d = len(paths)
    segs = []
    for p in paths:
        for vel, dur in p:
            segs.append((tuple(v * d for v in vel), dur / d))
    return canonical(segs)


def _heights(root: Sequence[int], path: Path) -> tuple[list[Fraction], list[Fraction]]:
    """Cumulative heights at breakpoints and the slope of each segment."""
    heights = [Fraction(0)]
    slopes = []
    for vel, dur in path:
        slope = dot(root, vel)
        slopes.append(slope)
        heights.append(heights[-1] + slope * dur)
    return heights, slopes


def _reflect_velocity(vel, root, coroot):
    k = dot(root, vel)
    return tuple(v - k * c for v, c in zip(vel, coroot))


def root_op_f(datum: RootDatum, i: int, path: Path) -> Path | None:
    """Lowering operator; ``None`` when it kills the path."""
    root, coroot = datum.simple_coords[i], datum.simple_cocoords[i]
    heights, slopes = _heights(root, path)
    low = min(heights)
    if heights[-1] - low < 1:
        return None
    start = max(k for k, h in enumerate(heights) if h == low)
    target = low + 1
    out: list[Segment] = list(path[:start])
    for j in range(start, len(path)):
        vel, dur = path[j]
        if heights[j + 1] >= target:
            cut = (target - heights[j]) / slopes[j]
            out.append((_reflect_velocity(vel, root, coroot), cut))
            out.append((vel, dur - cut))
            out.extend(path[j + 1:])
            return canonical(out)
        out.append((_reflect_velocity(vel, root, coroot), dur))
    raise AssertionError("height never reached the target")


def root_op_e(datum: RootDatum, i: int, path: Path) -> Path | None:
    """Raising operator; ``None`` when it kills the path."""
    root, coroot = datum.simple_coords[i], datum.simple_cocoords[i]
    heights, slopes = _heights(root, path)
    low = min(heights)
    if low > -1:
        return None
    stop = min(k for k, h in enumerate(heights) if h == low)
    target = low + 1
    tail: list[Segment] = list(path[stop:])
    for j in range(stop - 1, -1, -1):
        vel, dur = path[j]
        if heights[j] >= target:
            cut = (heights[j] - target) / (-slopes[j])
            head = list(path[:j])
            head.append((vel, cut))
            head.append((_reflect_velocity(vel, root, coroot), dur - cut))
            return canonical(head + tail)
        tail.insert(0, (_reflect_velocity(vel, root, coroot), dur))
    raise AssertionError("height never returned to the target")


@dataclass
class Crystal:
    datum: RootDatum
    highest: tuple
    elements: list[Path]
    edges: list[tuple[int, int, int]]  # (source, simple index, target) for f

    def __len__(self) -> int:
        return len(self.elements)

    def weight(self, k: int) -> tuple:
        return endpoint(self.elements[k])


def crystal_generate(datum: RootDatum, mu: Sequence[int], max_elements: int = 200000) -> Crystal:
    """All paths reachable from the straight path to dominant ``mu``."""
    mu = tuple(mu)
    if not datum.is_dominant(mu):
        raise DatumError(f"{mu} is not dominant")
    start = straight_path(mu)
    index = {start: 0}
    elements = [start]
    edges = []
    queue = deque([start])
    while queue:
        p = queue.popleft()
        src = index[p]
        for i in range(datum.semisimple_rank):
            q = root_op_f(datum, i, p)
            if q is None:
                continue
            if q not in index:
                index[q] = len(elements)
                elements.append(q)
                queue.append(q)
                if len(elements) > max_elements:
                    raise DatumError("crystal exceeds the element cap")
            edges.append((src, i, index[q]))
    return Crystal(datum, mu, elements, edges)


def weights(crystal: Crystal) -> list[tuple]:
    return [endpoint(p) for p in crystal.elements]


def weight_mult(crystal: Crystal, weight: Sequence) -> int:
    weight = tuple(weight)
    return sum(1 for w in weights(crystal) if w == weight)


def weight_mult_class(crystal: Crystal, ul: Sequence[int]) -> int:
    """Number of elements whose weight equals ``ul`` in ``Y_sigma``."""
    lat = coinvariant_lattice(crystal.datum)
    target = lat.reduce(ul)
    return sum(1 for w in weights(crystal) if lat.reduce(w) == target)


def character(crystal: Crystal) -> Counter:
    return Counter(weights(crystal))


def _stays_dominant(datum: RootDatum, path: Path) -> bool:
    for i in range(datum.semisimple_rank):
        heights, _ = _heights(datum.simple_coords[i], path)
        if min(heights) <= -1:
            return False
    return True


def tensor_decompose(datum: RootDatum, mus: Sequence[Sequence[int]]) -> dict[tuple, int]:
    """Multiplicities in the tensor product, the first factor being the first path segment.

    Highest-weight elements of the concatenation crystal are counted; prefixes
    whose height already drops to -1 are discarded since the raising operator
    is then defined on every completion.
    """
    crystals = [crystal_generate(datum, mu) for mu in mus]
    result: Counter = Counter()

    def extend(prefix: list[Path], k: int) -> None:
        if prefix:
            partial = concatenate(prefix)
            if not _stays_dominant(datum, partial):
                return
        if k == len(crystals):
            whole = concatenate(prefix)
            if any(root_op_e(datum, i, whole) is not None for i in range(datum.semisimple_rank)):
                raise AssertionError("dominant concatenation is not highest weight")
            result[endpoint(whole)] += 1
            return
        for p in crystals[k].elements:
            extend(prefix + [p], k + 1)

    extend([], 0)
    return dict(result)


def highest_weight_of(datum: RootDatum, path: Path, indices: Sequence[int] | None = None) -> Path:
    """Raise ``path`` until every operator in ``indices`` kills it."""
    indices = range(datum.semisimple_rank) if indices is None else indices
    while True:
        for i in indices:
            up = root_op_e(datum, i, path)
            if up is not None:
                path = up
                break
        else:
            return path


def restrict_levi(crystal: Crystal, subset: Sequence[int]) -> dict[tuple, int]:
    """Highest weights and multiplicities of the restriction to the Levi with simple indices ``subset``."""
    out: Counter = Counter()
    for p in crystal.elements:
        if all(root_op_e(crystal.datum, j, p) is None for j in subset):
            out[endpoint(p)] += 1
    return dict(out)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_json(crystal: Crystal) -> str:
    nodes = []
    for k, p in enumerate(crystal.elements):
        nodes.append({
            "id": k,
            "weight": list(endpoint(p)) if all(isinstance(x, int) for x in endpoint(p)) else [_fmt(Fraction(x)) for x in endpoint(p)],
            "path": [{"velocity": [_fmt(v) for v in vel], "duration": _fmt(dur)} for vel, dur in p],
        })
    edges = [{"source": s, "label": i + 1, "target": t} for s, i, t in crystal.edges]
    return json.dumps({"schema": 1, "datum": crystal.datum.name, "highest": list(crystal.highest),
                       "nodes": nodes, "edges": edges}, indent=1)
