"""The acceptance battery: seven numbered checks with timings and failure lists.

Each ``criterion_k`` returns a :class:`CriterionResult`. Cases are described
by small picklable tuples so that the counting battery can be spread over
worker processes with ``jobs > 1``.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import appendixb
from .adlv import (
    InvariantError,
    count_top_classes,
    default_window,
    enumerate_window,
    get_setting,
    gl_superbasic_setting,
    superbasic_table,
)
from .affine import (
    BasicElement,
    ExtAffineElement,
    epsilon_of,
    lambda_gamma,
    make_basic,
    minuscule_rep,
    natural,
    omega_from_class,
    omega_generators,
)
from .crystal import (
    character,
    crystal_generate,
    root_op_e,
    root_op_f,
    tensor_decompose,
    weight_mult_class,
)
from .isocrystal import kottwitz, kottwitz_of_coweight, ul_best
from .oracles import freudenthal, weyl_dimension
from .rootdata import RootDatum, build_root_datum, parse_datum_spec

SEED = 20240611
FUZZ_SAMPLES = 10_000


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    checked: int
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number}: {self.title} ({self.checked} checks, {self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return asdict(self)


def _timed(number: int, title: str, body: Callable[[CriterionResult], None]) -> CriterionResult:
    res = CriterionResult(number, title, True, 0.0, 0)
    start = time.perf_counter()
    body(res)
    res.seconds = time.perf_counter() - start
    res.passed = not res.failures
    return res


# case descriptions ---------------------------------------------------------------------


def _unit(rank: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(rank))


def minuscule_classes(datum: RootDatum) -> list[tuple[int, ...]]:
    """Minuscule representatives of ``Y / Z coroots`` reachable from the unit vectors, plus zero."""
    reps = {minuscule_rep(datum, (0,) * datum.rank)}
    reps.update(minuscule_rep(datum, _unit(datum.rank, i)) for i in range(datum.rank))
    return sorted(reps)


def adjoint_cases(spec: str) -> list[tuple]:
    """``("adj", spec, b_class, mu)`` for every basic class and every minuscule ``mu`` of matching Kottwitz point."""
    datum = parse_datum_spec(spec)
    reps = minuscule_classes(datum)
    out = []
    for b_cls in reps:
        b = omega_from_class(datum, b_cls)
        kb = kottwitz(datum, make_basic(datum, b))
        for mu in reps:
            if kottwitz_of_coweight(datum, mu) == kb:
                out.append(("adj", spec, b_cls, mu))
    return out


def gl_columns(n: int) -> list[tuple[int, ...]]:
    return [tuple([1] * k + [0] * (n - k)) for k in range(n + 1)]


def gl_cases(n: int, d: int, ms: Iterable[int] | None = None) -> list[tuple]:
    """``("gl", n, d, m, tuple)`` over all minuscule tuples, ``m`` their total size."""
    out = []
    for tup in itertools.product(gl_columns(n), repeat=d):
        m = sum(map(sum, tup))
        if ms is None or m in ms:
            out.append(("gl", n, d, m, tup))
    return out


def setting_of(case: tuple):
    if case[0] == "adj":
        _, spec, b_cls, mu = case
        datum = parse_datum_spec(spec)
        return get_setting(datum, omega_from_class(datum, b_cls), mu)
    _, n, d, m, tup = case
    return gl_superbasic_setting(n, d, m, tup)


def case_label(case: tuple) -> str:
    if case[0] == "adj":
        return f"{case[1]} b={case[2]} mu={case[3]}"
    _, n, d, m, tup = case
    return f"GL_{n}:d={d} m={m} mu={tup}"


def counting_battery() -> list[tuple]:
    cases = [("gl", 2, 1, 1, ((1, 0),))]
    cases += gl_cases(3, 1, ms=(1, 2))
    cases += gl_cases(4, 1, ms=(1, 3))
    cases += gl_cases(3, 2)
    for spec in ("A2", "A3", "C2", "C3", "D4"):
        cases += adjoint_cases(spec)
    return cases


def run_count_case(case: tuple) -> dict:
    """Count top classes on the default window and compare with the crystal."""
    start = time.perf_counter()
    s = setting_of(case)
    r = count_top_classes(s.datum, s.mu, s.b)
    expected = weight_mult_class(crystal_generate(s.datum, s.mu), ul_best(s.datum, s.b).rep)
    return {
        "case": case_label(case),
        "count": r.count,
        "crystal": expected,
        "stabilized": r.stabilized,
        "window": r.window,
        "window_size": r.window_size,
        "max_stratum_dim": r.max_stratum_dim,
        "expected_dim": r.expected_dim,
        "small_representatives": r.small_representatives,
        "seconds": round(time.perf_counter() - start, 3),
    }


def _map(fn, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


@lru_cache(maxsize=None)
def _count_rows(jobs: int = 1) -> tuple[dict, ...]:
    return tuple(_map(run_count_case, counting_battery(), jobs))


# criteria --------------------------------------------------------------------------------


def criterion_1(jobs: int = 1) -> CriterionResult:
    def body(res: CriterionResult) -> None:
        for row in _count_rows(jobs):
            res.checked += 1
            res.rows.append(row)
            ok = row["count"] == row["crystal"] and row["stabilized"] and row["small_representatives"]
            if not ok:
                res.failures.append(row)

    return _timed(1, "class count equals crystal weight multiplicity", body)


def criterion_2() -> CriterionResult:
    def body(res: CriterionResult) -> None:
        for n in (2, 3, 4):
            for d in (1, 2, 3):
                for case in gl_cases(n, d):
                    _, _, _, m, tup = case
                    if math.gcd(m, n) != 1:
                        continue
                    s = setting_of(case)
                    wd = enumerate_window(s, default_window(s))
                    tops = 0
                    for lam, rs in zip(wd.lams, wd.rsize):
                        lam = tuple(int(x) for x in lam)
                        tab = superbasic_table(s, n, d, m, lam)
                        res.checked += 1
                        bad = []
                        if tab.dim_value != int(rs):
                            bad.append("dimension formula")
                        if tab.is_top:
                            tops += 1
                            if not (tab.coxeter and tab.flat_sum_ok):
                                bad.append("top tuple fails Coxeter or staircase condition")
                            if not tab.partial_sums_ok:
                                bad.append("negative partial sum")
                        elif tab.coxeter and tab.flat_sum_ok:
                            bad.append("non-top tuple passes the top test")
                        if bad:
                            res.failures.append({"case": case_label(case), "lam": lam, "problems": bad})
                    res.rows.append({"case": case_label(case), "window": len(wd.lams), "top": tops})

    return _timed(2, "superbasic dimension formula and top tuple shape", body)


def criterion_3(jobs: int = 1) -> CriterionResult:
    def body(res: CriterionResult) -> None:
        for row in _count_rows(jobs):
            res.checked += 1
            if row["max_stratum_dim"] != row["expected_dim"]:
                res.failures.append(row)

    return _timed(3, "largest stratum has the expected dimension", body)


APPENDIX_TYPES = (
    [f"A{n}" for n in range(1, 8)]
    + [f"A{n}:sigma=2" for n in range(2, 8)]
    + [f"{f}{n}" for f in "BC" for n in range(2, 6)]
    + [f"D{n}" for n in (4, 5, 6)]
    + [f"D{n}:sigma=2" for n in (4, 5, 6)]
    + ["E6", "E6:sigma=2", "E7"]
)
EXHAUSTIVE_CROSS_CHECK = [f"A{n}" for n in range(1, 6)] + [f"A{n}:sigma=2" for n in range(2, 6)] + ["D4", "D4:sigma=2", "E6", "E6:sigma=2"]


def criterion_4(exhaustive_e7: bool = True) -> CriterionResult:
    def body(res: CriterionResult) -> None:
        for spec in APPENDIX_TYPES:
            datum = parse_datum_spec(spec)
            for b in appendixb.basic_representatives(datum):
                bb = make_basic(datum, b)
                w = appendixb.minimal_levi_J(datum, bb)
                node = appendixb.class_node(datum, bb)
                want = appendixb.expected_J(datum.family, datum.semisimple_rank, datum.sigma_order(), node)
                rep = appendixb.verify_uniqueness(datum, bb, "pruned")
                res.checked += 1
                row = {"datum": spec, "node": node, "J": list(w.J), "expected": None if want is None else list(want),
                       "candidates": rep.candidates, "sigma_fixed": rep.sigma_fixed, "pruned_seconds": round(rep.seconds, 3)}
                problems = []
                if want is not None and tuple(want) != w.J:
                    problems.append("J differs from the closed form")
                if not (w.sigma_stable and w.superbasic):
                    problems.append("J not sigma-stable or b not superbasic in the Levi")
                if not rep.all_fixed:
                    problems.append("uniqueness counterexample")
                if spec == "E7" and rep.seconds >= 5:
                    problems.append("pruned E7 too slow")
                if spec in EXHAUSTIVE_CROSS_CHECK or (spec == "E7" and exhaustive_e7):
                    ex = appendixb.verify_uniqueness(datum, bb, "exhaustive")
                    row["exhaustive_seconds"] = round(ex.seconds, 3)
                    if (ex.candidates, ex.sigma_fixed, ex.all_fixed) != (rep.candidates, rep.sigma_fixed, rep.all_fixed):
                        problems.append("exhaustive and pruned enumerations disagree")
                    if spec == "E7" and ex.seconds >= 300:
                        problems.append("exhaustive E7 too slow")
                res.rows.append(row)
                if problems:
                    res.failures.append(dict(row, problems=problems))

    return _timed(4, "minimal Levi sets and uniqueness of the conjugating element", body)


CRYSTAL_TYPES = ("A1", "A2", "A3", "B2", "C2", "D4")


def dominant_up_to(datum: RootDatum, bound: int) -> list[tuple[int, ...]]:
    """Dominant coweights of an adjoint datum with ``<2 rho, mu>`` at most ``bound``."""
    two_rho = [sum(r.coords[i] for r in datum.positive_roots) for i in range(datum.rank)]
    out = []

    def grow(prefix: list[int], used: int) -> None:
        if len(prefix) == datum.rank:
            out.append(tuple(prefix))
            return
        c = two_rho[len(prefix)]
        k = 0
        while used + k * c <= bound:
            grow(prefix + [k], used + k * c)
            k += 1

    grow([], 0)
    return out


def criterion_5(bound: int = 12) -> CriterionResult:
    def body(res: CriterionResult) -> None:
        for spec in CRYSTAL_TYPES:
            datum = parse_datum_spec(spec)
            for mu in dominant_up_to(datum, bound):
                c = crystal_generate(datum, mu)
                res.checked += 1
                dim = weyl_dimension(datum, mu)
                ok_dim = len(c) == dim
                ok_char = dict(character(c)) == freudenthal(datum, mu)
                res.rows.append({"datum": spec, "mu": mu, "size": len(c), "weyl": dim})
                if not (ok_dim and ok_char):
                    res.failures.append({"datum": spec, "mu": mu, "size": len(c), "weyl": dim, "character_ok": ok_char})

    return _timed(5, "path crystals against Weyl and Freudenthal", body)


def _column_split(mu: Sequence[int], d: int) -> tuple[tuple[int, ...], ...]:
    """``d`` minuscule columns summing to ``mu``, larger columns first."""
    if min(mu) < 0 or max(mu) > d:
        raise ValueError(f"{tuple(mu)} does not split into {d} columns")
    return tuple(tuple(int(x >= k) for x in mu) for k in range(1, d + 1))


def criterion_6() -> CriterionResult:
    """Tensor bookkeeping on product data.

    Counts for non-minuscule ``mu`` on the base group are derived from the
    product count of the column split of ``mu`` minus the lower terms of its
    tensor decomposition. The identity for tuples already in column order is
    then automatic; every other ordering is an honest check, and the derived
    counts are compared with the crystal independently.
    """

    def body(res: CriterionResult) -> None:
        for n, d in ((3, 2), (2, 3)):
            base = build_root_datum("A", n - 1, "gl")
            prod: dict = {}
            derived: dict = {}

            def prod_count(m: int, tup: tuple) -> int:
                if (m, tup) not in prod:
                    s = gl_superbasic_setting(n, len(tup), m, tup)
                    prod[(m, tup)] = count_top_classes(s.datum, s.mu, s.b).count
                return prod[(m, tup)]

            def count(m: int, mu: tuple) -> int:
                if (m, mu) not in derived:
                    if max(mu) - min(mu) <= 1:
                        derived[(m, mu)] = prod_count(m, (mu,))
                    else:
                        cols = _column_split(mu, d)
                        dec = tensor_decompose(base, cols)
                        if dec.get(mu) != 1:
                            raise InvariantError(f"{mu} does not occur once in its column product")
                        derived[(m, mu)] = prod_count(m, cols) - sum(
                            k * count(m, beta) for beta, k in dec.items() if beta != mu)
                return derived[(m, mu)]

            for case in gl_cases(n, d):
                _, _, _, m, tup = case
                dec = tensor_decompose(base, tup)
                lhs = sum(k * count(m, mu) for mu, k in dec.items())
                rhs = prod_count(m, tup)
                res.checked += 1
                canonical = all(max(mu) - min(mu) <= 1 for mu in dec) or any(
                    max(mu) - min(mu) > 1 and _column_split(mu, d) == tup for mu in dec)
                row = {"case": case_label(case), "decomposition": {str(k): v for k, v in sorted(dec.items())},
                       "sum": lhs, "product": rhs, "automatic": canonical}
                res.rows.append(row)
                if lhs != rhs:
                    res.failures.append(row)
            for (m, mu), value in sorted(derived.items()):
                b = gl_superbasic_setting(n, 1, m, [tuple(m // n + int(i < m % n) for i in range(n))]).b
                want = weight_mult_class(crystal_generate(base, mu), ul_best(base, b).rep)
                res.checked += 1
                if value != want:
                    res.failures.append({"base": f"GL_{n}", "m": m, "mu": mu, "derived": value, "crystal": want})
        res.notes.append("identities for tuples already in column order hold by construction of the derived counts")

    return _timed(6, "tensor decomposition of product counts", body)


# property fuzzing ------------------------------------------------------------------------

FUZZ_SPECS = ("A2", "A3", "B2", "C2", "C3", "D4", "A3:sigma=2", "D4:sigma=2")


@lru_cache(maxsize=None)
def fuzz_settings() -> tuple:
    """Settings used by the property checks: the counting battery plus twisted data."""
    cases = counting_battery()
    for spec in ("A3:sigma=2", "D4:sigma=2", "A2:sigma=2"):
        cases += adjoint_cases(spec)
    cases += gl_cases(2, 3, ms=(1, 2))
    out = []
    for case in cases:
        try:
            out.append(setting_of(case))
        except Exception:  # noqa: BLE001 - empty varieties are simply skipped
            continue
    return tuple(out)


def _random_lam(rng: np.random.Generator, rank: int, spread: int = 6) -> tuple[int, ...]:
    return tuple(int(x) for x in rng.integers(-spread, spread + 1, size=rank))


def _twist_fixed_generators(setting) -> list[ExtAffineElement]:
    gens = list(setting.omega_moves)
    gens += [od.longest for od in setting.pi_orbits if od.finite]
    lg, _, _ = setting.levi_group
    gens += lg + [g.inverse() for g in lg]
    return gens


def fuzz_eta(rng: np.random.Generator, samples: int) -> list:
    bad = []
    data = [parse_datum_spec(s) for s in FUZZ_SPECS] + [parse_datum_spec("GL_3"), parse_datum_spec("GL_2:d=2")]
    omegas = {id(d): list(omega_generators(d).generators) for d in data}
    for _ in range(samples):
        datum = data[rng.integers(len(data))]
        lam = _random_lam(rng, datum.rank)
        alpha = datum.roots[rng.integers(len(datum.roots))]
        if lambda_gamma(lam, alpha) + lambda_gamma(lam, -alpha) != -1:
            bad.append({"datum": datum.name, "lam": lam, "root": alpha.coords, "part": 1})
        gens = omegas[id(datum)]
        if gens:
            w = gens[rng.integers(len(gens))]
            if rng.integers(2):
                w = w.inverse()
            if epsilon_of(datum, w(lam)) != w.finite * epsilon_of(datum, lam):
                bad.append({"datum": datum.name, "lam": lam, "omega": str(w), "part": 3})
    return bad


def fuzz_lam(rng: np.random.Generator, samples: int) -> list:
    bad = []
    settings = fuzz_settings()
    for _ in range(samples):
        s = settings[rng.integers(len(settings))]
        lam = _random_lam(rng, s.datum.rank)
        alpha = s.datum.roots[rng.integers(len(s.datum.roots))]
        prev = s.datum.root(s.b.linear.inverse().act_root_coords(alpha.coords))
        if alpha.pair(natural(s.b, lam)) != lambda_gamma(lam, prev) - lambda_gamma(lam, alpha):
            bad.append({"datum": s.datum.name, "lam": lam, "root": alpha.coords})
    return bad


def fuzz_natural(rng: np.random.Generator, samples: int) -> list:
    bad = []
    settings = [s for s in fuzz_settings() if _twist_fixed_generators(s)]
    gens = {id(s): _twist_fixed_generators(s) for s in settings}
    for _ in range(samples):
        s = settings[rng.integers(len(settings))]
        pool = gens[id(s)]
        x = pool[rng.integers(len(pool))]
        for _ in range(int(rng.integers(0, 4))):
            x = x * pool[rng.integers(len(pool))]
        lam = _random_lam(rng, s.datum.rank)
        if not s.b.fixes(x):
            bad.append({"datum": s.datum.name, "element": str(x), "problem": "not fixed by the twist"})
        elif natural(s.b, x(lam)) != x.finite(natural(s.b, lam)):
            bad.append({"datum": s.datum.name, "element": str(x), "lam": lam})
    return bad


def fuzz_ge0(rng: np.random.Generator, samples: int) -> list:
    """Samples meeting the sign hypothesis on a finite orbit; the conclusion is checked for every root."""
    bad = []
    pairs = [(s, od) for s in fuzz_settings() for od in s.pi_orbits if od.finite]
    done = 0
    while done < samples:
        s, od = pairs[rng.integers(len(pairs))]
        lam = _random_lam(rng, s.datum.rank, 4)
        vals = [lambda_gamma(lam, beta) for beta in od.roots]
        if not (all(v >= 1 for v in vals) or all(v <= -1 for v in vals)):
            continue
        done += 1
        tw = od.longest
        image = tw(lam)
        for gamma in s.datum.roots:
            if lambda_gamma(lam, gamma) >= 0:
                g2 = s.datum.root(tw.finite.act_root_coords(gamma.coords))
                if lambda_gamma(image, g2) < 0:
                    bad.append({"datum": s.datum.name, "lam": lam, "orbit": od.alpha.coords, "root": gamma.coords})
                    break
    return bad


def trichotomy_on_top(min_samples: int) -> tuple[int, list]:
    """Every top coweight of every window: finite orbits carry one sign."""
    bad, seen = [], 0
    settings = fuzz_settings()
    extra = 0
    while seen < min_samples:
        for s in settings:
            wd = enumerate_window(s, default_window(s) + extra)
            tops = wd.lam_gamma[wd.top]
            seen += len(tops)
            for od, idx in zip(s.pi_orbits, s.pi_orbit_indices):
                if not od.finite:
                    continue
                vals = tops[:, idx]
                mixed = ~((vals >= 0).all(axis=1) | (vals <= -1).all(axis=1))
                for row in wd.lams[wd.top][mixed][:5]:
                    bad.append({"datum": s.datum.name, "lam": tuple(int(x) for x in row), "orbit": od.alpha.coords})
        extra += 2
    return seen, bad


def fuzz_epsilon(rng: np.random.Generator, samples: int) -> list:
    bad = []
    data = [parse_datum_spec(s) for s in FUZZ_SPECS] + [parse_datum_spec("GL_4"), parse_datum_spec("B3")]
    for _ in range(samples):
        datum = data[rng.integers(len(data))]
        lam = _random_lam(rng, datum.rank)
        eps = epsilon_of(datum, lam)
        image = {eps.act_root_coords(r.coords) for r in datum.positive_roots}
        wanted = {r.coords for r in datum.roots if lambda_gamma(lam, r) >= 0}
        if image != wanted:
            bad.append({"datum": datum.name, "lam": lam})
    return bad


@lru_cache(maxsize=None)
def _fuzz_crystals() -> tuple:
    specs = [("A2", (2, 1)), ("A3", (1, 1, 0)), ("B2", (1, 1)), ("C2", (2, 0)), ("B3", (1, 0, 0)),
             ("D4", (0, 1, 0, 0)), ("GL_3", (2, 1, 0))]
    return tuple(crystal_generate(parse_datum_spec(s), mu) for s, mu in specs)


def fuzz_crystal_ops(rng: np.random.Generator, samples: int) -> list:
    bad = []
    crystals = _fuzz_crystals()
    for _ in range(samples):
        c = crystals[rng.integers(len(crystals))]
        p = c.elements[rng.integers(len(c))]
        i = int(rng.integers(c.datum.semisimple_rank))
        down = root_op_f(c.datum, i, p)
        if down is not None and root_op_e(c.datum, i, down) != p:
            bad.append({"datum": c.datum.name, "highest": c.highest, "index": i, "direction": "f then e"})
        up = root_op_e(c.datum, i, p)
        if up is not None and root_op_f(c.datum, i, up) != p:
            bad.append({"datum": c.datum.name, "highest": c.highest, "index": i, "direction": "e then f"})
    return bad


def criterion_7(samples: int = FUZZ_SAMPLES, seed: int = SEED) -> CriterionResult:
    def body(res: CriterionResult) -> None:
        rng = np.random.default_rng(seed)
        checks = [
            ("twisted pairing identities", fuzz_eta),
            ("pairing with the natural part", fuzz_lam),
            ("natural part is equivariant", fuzz_natural),
            ("sign preservation on finite orbits", fuzz_ge0),
            ("epsilon chamber", fuzz_epsilon),
            ("raising undoes lowering", fuzz_crystal_ops),
        ]
        for name, fn in checks:
            bad = fn(rng, samples)
            res.checked += samples
            res.rows.append({"property": name, "samples": samples, "violations": len(bad)})
            res.failures += [dict(b, property=name) for b in bad[:20]]
        seen, bad = trichotomy_on_top(samples)
        res.checked += seen
        res.rows.append({"property": "one sign per finite orbit at top coweights", "samples": seen, "violations": len(bad)})
        res.failures += [dict(b, property="one sign per finite orbit") for b in bad[:20]]

    return _timed(7, "property fuzzing", body)


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
}


def run_suite(selected: Iterable[int] | None = None, jobs: int = 1,
              report: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    out = []
    for k in sorted(selected or CRITERIA):
        fn = CRITERIA[k]
        res = fn(jobs) if k in (1, 3) else fn()
        if report:
            report(res)
        out.append(res)
    return out
