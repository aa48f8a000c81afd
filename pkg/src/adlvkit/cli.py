"""Command line front end.

Exit status: 0 when every checked identity holds, 1 on a violation, 2 when
the input cannot be parsed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Sequence

from . import appendixb, suite
from .adlv import (
    InvariantError,
    count_top_classes,
    criterion_mask,
    default_window,
    enumerate_window,
    get_setting,
    lambda_flat,
    small_and_type,
    superbasic_table,
)
from .affine import ExtAffineElement, format_element, make_basic, omega_from_class, parse_element
from .crystal import crystal_generate, restrict_levi, tensor_decompose, to_json, weight_mult_class, weights
from .isocrystal import ul_best
from .rootdata import DatumError, RootDatum, WeylElement, parse_datum_spec

SCHEMA = 1


class ParseError(ValueError):
    pass


# parsing -----------------------------------------------------------------------------


def parse_vector(text: str, rank: int | None = None) -> tuple[int, ...]:
    text = text.strip().strip("()[]")
    try:
        vec = tuple(int(x) for x in text.split(",")) if text else ()
    except ValueError as exc:
        raise ParseError(f"cannot parse coweight {text!r}") from exc
    if rank is not None and len(vec) != rank:
        raise ParseError(f"coweight {vec} needs {rank} coordinates")
    return vec


_OMEGA_RE = re.compile(r"^w(\d+)(?:\^(-?\d+))?$")


def parse_b(text: str | None, datum: RootDatum) -> ExtAffineElement:
    """``w1``, ``w2^3``, ``w1*w3``, a bare exponent ``k`` for ``w1^k``, or an element ``t^(..)*s..``.

    Missing, ``e`` and ``id`` all mean the identity.
    """
    ident = ExtAffineElement((0,) * datum.rank, WeylElement.identity(datum.rank))
    if text is None or text.strip() in ("", "e", "id"):
        return ident
    text = text.strip().replace(" ", "")
    if text.startswith("t^") or text.startswith("s"):
        try:
            return parse_element(text, datum)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    if re.fullmatch(r"-?\d+", text):
        text = f"w1^{text}"
    out = ident
    for piece in text.split("*"):
        m = _OMEGA_RE.match(piece)
        if not m:
            raise ParseError(f"cannot parse b {text!r}")
        node, power = int(m.group(1)), int(m.group(2) or 1)
        if not 1 <= node <= datum.rank:
            raise ParseError(f"node {node} out of range")
        omega = omega_from_class(datum, tuple(int(k == node - 1) for k in range(datum.rank)))
        step = omega if power >= 0 else omega.inverse()
        for _ in range(abs(power)):
            out = out * step
    return out


def parse_datum(text: str) -> RootDatum:
    try:
        return parse_datum_spec(text)
    except DatumError as exc:
        raise ParseError(str(exc)) from exc


# output ------------------------------------------------------------------------------


def _cell(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ",".join(_cell(v) for v in x) + ")"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def render(payload: dict, columns: Sequence[str], fmt: str) -> str:
    rows = payload["rows"]
    if fmt == "json":
        return json.dumps(payload, indent=1, default=_cell, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c, "")) for c in columns])
        return buf.getvalue()
    cells = [[_cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in cells]
    head = [f"{k}: {_cell(v)}" for k, v in payload.items() if k not in ("rows", "schema", "violations")]
    tail = [f"violation: {json.dumps(v, default=_cell)}" for v in payload.get("violations", [])]
    return "\n".join(head + lines + tail) + "\n"


def emit(payload: dict, columns: Sequence[str], args) -> None:
    text = render(payload, columns, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload(command: str, rows: list, violations: list | None = None, **extra) -> dict:
    out = {"schema": SCHEMA, "command": command}
    out.update(extra)
    out["verdict"] = "OK" if not violations else "VIOLATION"
    out["rows"] = rows
    if violations:
        out["violations"] = violations
    return out


# commands ----------------------------------------------------------------------------


def _mu_list(args, datum: RootDatum) -> list[tuple[int, ...]]:
    if not args.mu:
        raise ParseError("at least one --mu is required")
    return [parse_vector(m, datum.rank) for m in args.mu]


def cmd_classify(args) -> int:
    datum = parse_datum(args.datum)
    b = parse_b(args.b, datum)
    mu = _mu_list(args, datum)[0]
    s = get_setting(datum, b, mu)
    wd = enumerate_window(s, args.window or default_window(s))
    crit = criterion_mask(s, wd)
    rows, bad = [], []
    for k, lam in enumerate(wd.lams):
        lam = tuple(int(x) for x in lam)
        top = bool(wd.top[k])
        small, pi = small_and_type(s, lam) if top else (None, None)
        rows.append({"lam": lam, "natural": tuple(int(x) for x in wd.natural[k]), "dim": int(wd.rsize[k]),
                     "top": top, "small": small if small is not None else "",
                     "pi": tuple(p.coords for p in pi) if pi else "", "flat": lambda_flat(s, lam)})
        if bool(crit[k]) != top:
            bad.append({"lam": lam, "criterion": bool(crit[k]), "top": top})
    rows.sort(key=lambda r: (-r["dim"], r["lam"]))
    emit(_payload("classify", rows, bad, datum=datum.name, b=format_element(s.b.element, datum), mu=s.mu,
                  expected_dim=s.dim, window=wd.window),
         ["lam", "natural", "dim", "top", "small", "pi", "flat"], args)
    return 1 if bad else 0


def _b_choices(args, datum: RootDatum) -> list[ExtAffineElement]:
    if args.all_b:
        return appendixb.basic_representatives(datum)
    return [parse_b(args.b, datum)]


def cmd_count(args) -> int:
    datum = parse_datum(args.datum)
    rows, bad = [], []
    for b in _b_choices(args, datum):
        bb = make_basic(datum, b)
        for mu in _mu_list(args, datum):
            try:
                get_setting(datum, bb, mu)
            except DatumError as exc:
                if args.all_b:
                    continue
                raise ParseError(str(exc)) from exc
            r = count_top_classes(datum, mu, bb, window=args.window)
            dom = datum.dominant_rep(mu)[0]
            expected = weight_mult_class(crystal_generate(datum, dom), ul_best(datum, bb).rep)
            ok = r.count == expected and r.stabilized and r.max_stratum_dim == r.expected_dim
            row = {"b": format_element(b, datum), "mu": dom, "classes": r.count, "crystal": expected,
                   "dim": r.expected_dim, "window": r.window, "stabilized": r.stabilized,
                   "verdict": "OK" if ok else "MISMATCH"}
            rows.append(row)
            if not ok:
                bad.append(row)
    emit(_payload("count", rows, bad, datum=datum.name),
         ["b", "mu", "classes", "crystal", "dim", "window", "stabilized", "verdict"], args)
    return 1 if bad else 0


def cmd_crystal(args) -> int:
    datum = parse_datum(args.datum)
    mu = datum.dominant_rep(_mu_list(args, datum)[0])[0]
    c = crystal_generate(datum, mu)
    if args.format == "json" and args.graph:
        text = to_json(c) + "\n"
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    table: dict = {}
    for w in weights(c):
        table[w] = table.get(w, 0) + 1
    rows = [{"weight": w, "multiplicity": k} for w, k in sorted(table.items(), reverse=True)]
    emit(_payload("crystal", rows, datum=datum.name, highest=mu, size=len(c), edges=len(c.edges)),
         ["weight", "multiplicity"], args)
    return 0


def cmd_tensor(args) -> int:
    datum = parse_datum(args.datum)
    mus = [datum.dominant_rep(m)[0] for m in _mu_list(args, datum)]
    dec = tensor_decompose(datum, mus)
    rows = [{"highest": k, "multiplicity": v} for k, v in sorted(dec.items(), reverse=True)]
    emit(_payload("tensor", rows, datum=datum.name, factors=mus), ["highest", "multiplicity"], args)
    return 0


def cmd_restrict(args) -> int:
    datum = parse_datum(args.datum)
    mu = datum.dominant_rep(_mu_list(args, datum)[0])[0]
    subset = [i - 1 for i in parse_vector(args.levi)] if args.levi else []
    if any(not 0 <= i < datum.semisimple_rank for i in subset):
        raise ParseError("Levi node out of range")
    res = restrict_levi(crystal_generate(datum, mu), subset)
    rows = [{"highest": k, "multiplicity": v} for k, v in sorted(res.items(), reverse=True)]
    emit(_payload("restrict", rows, datum=datum.name, highest=mu, levi=tuple(i + 1 for i in subset)),
         ["highest", "multiplicity"], args)
    return 0


def cmd_superbasic(args) -> int:
    from .adlv import gl_superbasic_setting

    datum = parse_datum(args.datum)
    if datum.family != "A" or datum.isogeny != "gl":
        raise ParseError("superbasic tables need a GL_n datum, e.g. GL_3:d=2")
    n, d = datum.rank // datum.copies, datum.copies
    mu = _mu_list(args, datum)[0] if len(args.mu or []) == 1 and len(args.mu[0].split(",")) == n * d else None
    if mu is not None:
        mus = [mu[k * n:(k + 1) * n] for k in range(d)]
    else:
        mus = [parse_vector(x, n) for x in (args.mu or [])]
        if len(mus) != d:
            raise ParseError(f"give one --mu per factor ({d}) or one of length {n * d}")
    m = sum(map(sum, mus))
    if args.b is not None:
        try:
            m_given = int(args.b)
        except ValueError as exc:
            raise ParseError("--b must be the exponent m for superbasic tables") from exc
        if m_given != m:
            raise ParseError(f"exponent {m_given} does not match the Kottwitz point {m} of the tuple")
    if math.gcd(m, n) != 1:
        raise ParseError(f"b = w1^{m} is superbasic only when gcd(m, n) = 1; here n = {n}")
    s = gl_superbasic_setting(n, d, m, mus)
    wd = enumerate_window(s, args.window or default_window(s))
    rows, bad = [], []
    for k, lam in enumerate(wd.lams):
        lam = tuple(int(x) for x in lam)
        t = superbasic_table(s, n, d, m, lam)
        row = {"lam": t.lam, "w": t.w, "flat": t.flat, "dim": t.dim_value, "R": int(wd.rsize[k]),
               "top": t.is_top, "coxeter": t.coxeter, "staircase": t.flat_sum_ok}
        rows.append(row)
        if t.dim_value != int(wd.rsize[k]) or (t.is_top != (t.coxeter and t.flat_sum_ok)):
            bad.append(row)
    rows.sort(key=lambda r: (-r["dim"], r["lam"]))
    emit(_payload("superbasic", rows, bad, datum=datum.name, m=m, expected_dim=s.dim, window=wd.window),
         ["lam", "w", "flat", "dim", "R", "top", "coxeter", "staircase"], args)
    return 1 if bad else 0


def cmd_appendixb(args) -> int:
    datum = parse_datum(args.datum)
    if args.all_b or args.b is None:
        cert = appendixb.certification(datum, args.mode)
    else:
        b = make_basic(datum, parse_b(args.b, datum))
        w = appendixb.minimal_levi_J(datum, b)
        rep = appendixb.verify_uniqueness(datum, b, args.mode)
        ok = rep.all_fixed and w.sigma_stable and w.superbasic
        cert = {"schema": SCHEMA, "datum": datum.name, "mode": args.mode,
                "results": [{"b": rep.b, "J": list(rep.J), "sigma_stable": w.sigma_stable, "superbasic": w.superbasic,
                             "candidates": rep.candidates, "sigma_fixed": rep.sigma_fixed,
                             "verdict": "OK" if rep.all_fixed else "FAIL", "counterexamples": rep.counterexamples}],
                "verdict": "OK" if ok else "FAIL", "wall_time": round(rep.seconds, 3)}
    rows = cert["results"]
    payload = _payload("appendixb", rows, [r for r in rows if r["verdict"] != "OK"],
                       datum=datum.name, mode=args.mode, wall_time=cert["wall_time"])
    emit(payload, ["b", "J", "sigma_stable", "superbasic", "candidates", "sigma_fixed", "verdict"], args)
    return 0 if cert["verdict"] == "OK" else 1


def cmd_suite(args) -> int:
    selected = [int(x) for x in args.criteria.split(",")] if args.criteria else None
    if selected and any(k not in suite.CRITERIA for k in selected):
        raise ParseError("criteria are numbered 1 to 7")
    quiet = args.format == "json" and not args.output
    report = None if quiet else (lambda r: print(r.line(), file=sys.stderr, flush=True))
    results = suite.run_suite(selected, jobs=args.jobs, report=report)
    rows = [{"criterion": r.number, "title": r.title, "passed": r.passed, "checks": r.checked,
             "seconds": round(r.seconds, 2), "failures": len(r.failures)} for r in results]
    bad = [{"criterion": r.number, "failures": r.failures[:10]} for r in results if not r.passed]
    emit(_payload("suite", rows, bad), ["criterion", "title", "passed", "checks", "seconds", "failures"], args)
    return 1 if bad else 0


COMMANDS = {
    "classify": cmd_classify,
    "count": cmd_count,
    "crystal": cmd_crystal,
    "tensor": cmd_tensor,
    "restrict": cmd_restrict,
    "superbasic": cmd_superbasic,
    "appendixb": cmd_appendixb,
    "suite": cmd_suite,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adlvkit", description="Strata, class counts and crystals for basic loci.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, datum: bool = True):
        if datum:
            sp.add_argument("datum", help="datum spec, e.g. GL_3, A1:gl, C3, D4:sigma=2, GL_3:d=2")
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes where supported")

    def window(sp):
        sp.add_argument("--window", type=_positive, help="box half-width (default: ADLVKIT_WINDOW or a datum bound)")

    sp = sub.add_parser("classify", help="strata of one (b, mu) over a window")
    common(sp); window(sp)
    sp.add_argument("--b"); sp.add_argument("--mu", action="append")
    sp = sub.add_parser("count", help="top class count against the crystal")
    common(sp); window(sp)
    sp.add_argument("--b"); sp.add_argument("--mu", action="append")
    sp.add_argument("--all-b", action="store_true", help="every basic class of finite-order length-zero elements")
    sp = sub.add_parser("crystal", help="weights of the path crystal")
    common(sp)
    sp.add_argument("--mu", action="append")
    sp.add_argument("--graph", action="store_true", help="with --format json, dump nodes and edges")
    sp = sub.add_parser("tensor", help="tensor product decomposition")
    common(sp)
    sp.add_argument("--mu", action="append")
    sp = sub.add_parser("restrict", help="restriction to a standard Levi")
    common(sp)
    sp.add_argument("--mu", action="append")
    sp.add_argument("--levi", help="1-based simple nodes, comma separated")
    sp = sub.add_parser("superbasic", help="superbasic GL_n tuple tables")
    common(sp); window(sp)
    sp.add_argument("--b", help="exponent m of the superbasic element")
    sp.add_argument("--mu", action="append", help="one per factor, or one concatenated")
    sp = sub.add_parser("appendixb", help="minimal Levi and uniqueness certification")
    common(sp)
    sp.add_argument("--b")
    sp.add_argument("--all-b", action="store_true")
    sp.add_argument("--mode", choices=("pruned", "exhaustive"), default="pruned")
    sp = sub.add_parser("suite", help="the acceptance battery")
    common(sp, datum=False)
    sp.add_argument("--criteria", help="comma separated subset of 1..7")
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("window must be at least 1")
    return v


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except (ParseError, DatumError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        print(json.dumps({"schema": SCHEMA, "verdict": "VIOLATION", "error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
