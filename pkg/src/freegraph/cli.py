"""Command-line front end.

Every subcommand writes deterministic CSV or JSON to stdout (or ``--out``)
and exits with status 1 when one of its internal cross-checks fails, 2 on
bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .cumulants import (
    FockCumulants,
    FreePoissonParams,
    free_poisson_moment,
    kappa_base,
    kappa_pi_closed,
    kappa_pi_recursive,
    mixed_cumulants_vanish,
    moment_from_cumulants,
)
from .fock import tstar_t_moment
from .graph import (
    GraphError,
    WeightedGraph,
    all_words,
    as_fraction,
    enumerate_paths,
    graph_from_dict,
    load_graph,
    make_flower,
    make_two_vertex,
    validate,
)
from .noncrossing import (
    NCPairPartition,
    NCPartition,
    catalan,
    enumerate_nc,
    enumerate_nc2,
    narayana_row,
    odd_block_count,
    tl_bijection,
    tl_inverse,
)
from .path_algebra import (
    PathVector,
    format_word,
    parse_word,
    tr_pairpartition,
    vacuum_moment_operator_model,
    weighted_trace,
)
from .spectral import DensityModel, cauchy_Frho, stieltjes_inversion_scan

SCHEMA = "freegraph/1"


class UsageError(Exception):
    pass


def dec(x) -> str:
    return f"{float(x):.15g}"


def resolve_graph(text: str) -> WeightedGraph:
    """A JSON file path, ``flower:N[:PAIRING]`` or ``two-vertex:MU_V,MU_W``.

    ``PAIRING`` uses ``;`` between classes and ``-`` inside a dual pair,
    e.g. ``flower:3:1-2;3``.
    """
    if os.path.exists(text):
        return load_graph(text)
    kind, _, rest = text.partition(":")
    if kind == "flower":
        n_text, _, pairing_text = rest.partition(":")
        pairing = None
        if pairing_text:
            pairing = [tuple(int(i) for i in cls.split("-")) for cls in pairing_text.split(";")]
        return make_flower(int(n_text), pairing)
    if kind == "two-vertex":
        mv, mw = rest.split(",")
        return make_two_vertex(mv, mw)
    raise UsageError(f"cannot resolve graph {text!r}: not a file, flower:... or two-vertex:...")


def emit(args, rows: list[dict], meta: dict | None = None) -> None:
    fmt = getattr(args, "format", "csv")
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": args.command, **(meta or {}), "rows": rows}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        text = buf.getvalue()
    write_text(args, text)


def write_text(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    if os.path.exists(args.graph):
        with open(args.graph, encoding="utf-8") as fh:
            data = json.load(fh)
        try:
            g = graph_from_dict(data)
        except GraphError as exc:
            write_text(args, json.dumps({"schema": SCHEMA, "valid": False, "violations": str(exc).split("; ")}, indent=2) + "\n")
            return 1
    else:
        g = resolve_graph(args.graph)
    rep = validate(g)
    doc = {
        "schema": SCHEMA,
        "valid": rep.ok,
        "violations": list(rep.violations),
        "normalized": rep.normalized,
        "mu_sq_sum": str(rep.mu_sq_sum),
    }
    write_text(args, json.dumps(doc, indent=2) + "\n")
    return 0 if rep.ok else 1


def cmd_paths(args) -> int:
    g = resolve_graph(args.graph)
    rows = [
        {"path": format_word(p.edges) or p.source, "source": p.source, "range": p.range, "length": len(p)}
        for p in enumerate_paths(g, args.n, args.start, args.end)
    ]
    emit(args, rows)
    return 0


def _loops_up_to(g: WeightedGraph, max_len: int):
    for n in range(1, max_len + 1):
        for w in all_words(g, n):
            if g.is_loop(w):
                yield w


def cmd_moment(args) -> int:
    g = resolve_graph(args.graph)
    if args.word:
        words = [parse_word(w, g) for w in args.word]
    elif args.max_len:
        words = list(_loops_up_to(g, args.max_len))
    else:
        raise UsageError("give --word or --max-len")
    rows, ok = [], True
    for w in words:
        pair = tr_pairpartition(w, g)
        op = vacuum_moment_operator_model(w, g)
        cum = weighted_trace(moment_from_cumulants(w, g), g)
        match = pair == op == cum
        ok &= match
        rows.append(
            {
                "word": format_word(w),
                "length": len(w),
                "value": str(pair),
                "decimal": dec(pair),
                "operator_model": str(op),
                "cumulant_sum": str(cum),
                "match": str(match).lower(),
            }
        )
    emit(args, rows)
    return 0 if ok else 1


def cmd_cumulant(args) -> int:
    g = resolve_graph(args.graph)
    fock = FockCumulants(g)
    rows, ok = [], True
    for text in args.word:
        w = parse_word(text, g)
        if args.partition:
            p = NCPartition.parse_blocks(args.partition, len(w))
            closed = kappa_pi_closed(w, p, g)
            rec = kappa_pi_recursive(w, p, g)
            match = closed == rec
            ok &= match
            rows.append(
                {
                    "word": format_word(w),
                    "partition": str(p),
                    "partition_count": 1,
                    "value": closed.to_json(),
                    "match": match,
                }
            )
            continue
        parts = enumerate_nc(len(w))
        contributing = sum(1 for p in parts if kappa_pi_closed(w, p, g))
        moment = moment_from_cumulants(w, g)
        kappa = kappa_base(w, g)
        match = moment == fock.moment(w) and kappa == fock.kappa(w)
        ok &= match
        rows.append(
            {
                "word": format_word(w),
                "partition_count": contributing,
                "value": moment.to_json(),
                "cumulant": kappa.to_json(),
                "match": match,
            }
        )
    doc = {"schema": SCHEMA, "command": "cumulant", "rows": rows}
    write_text(args, json.dumps(doc, indent=2) + "\n")
    return 0 if ok else 1


def cmd_freeness(args) -> int:
    g = resolve_graph(args.graph)
    rep = mixed_cumulants_vanish(g, args.max_len)
    doc = {
        "schema": SCHEMA,
        "command": "freeness",
        "classes": [list(c) for c in rep.classes],
        "max_len": rep.max_len,
        "mixed_checked": rep.mixed_checked,
        "pure_checked": rep.pure_checked,
        "free": rep.free,
        "witnesses": [{"word": format_word(t), "value": v.to_json()} for t, v in rep.witnesses],
        "engine_mismatches": [
            {"word": format_word(t), "closed": a.to_json(), "from_moments": b.to_json()}
            for t, a, b in rep.engine_mismatches
        ],
    }
    write_text(args, json.dumps(doc, indent=2) + "\n")
    return 0 if rep.free else 1


def cmd_narayana(args) -> int:
    n = args.n
    row = narayana_row(n)
    lines = [
        f"n={n}",
        "N(n,k): " + ",".join(map(str, row)),
        f"sum: {sum(row)}",
        f"catalan: {catalan(n)}",
        f"|NC({n})|: {len(enumerate_nc(n))}",
        f"|NC2({2 * n})|: {len(enumerate_nc2(2 * n))}",
    ]
    write_text(args, "\n".join(lines) + "\n")
    ok = sum(row) == catalan(n) == len(enumerate_nc2(2 * n))
    return 0 if ok else 1


def cmd_bijection(args) -> int:
    if args.pairs:
        p = NCPairPartition.parse(args.pairs)
        q = tl_bijection(p)
    elif args.blocks:
        q = NCPartition.parse_blocks(args.blocks)
        p = tl_inverse(q)
    else:
        raise UsageError("give --pairs or --blocks")
    ok = tl_inverse(q) == p and tl_bijection(p) == q and odd_block_count(p) == len(q)
    lines = [
        f"pairs: {p}",
        f"blocks: {q}",
        f"odd_block_count: {odd_block_count(p)}",
        f"block_count: {len(q)}",
        f"consistent: {str(ok).lower()}",
    ]
    write_text(args, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _rho_arg(text: str) -> Fraction:
    rho = as_fraction(text)
    if rho < 1:
        raise UsageError("rho must be >= 1")
    return rho


def cmd_poisson_verify(args) -> int:
    rho = _rho_arg(args.rho)
    g = make_two_vertex(rho, 1)
    w_weight = g.normalized_mu_sq("w")
    params = FreePoissonParams(rho**2, 1 / rho)
    rows, ok = [], True
    for n in range(1, args.max_order + 1):
        fock = tstar_t_moment(rho, n)
        formula = free_poisson_moment(n, params)
        path = tr_pairpartition(("e~", "e") * n, g) / w_weight
        match = fock == formula == path
        ok &= match
        rows.append(
            {
                "n": n,
                "fock": str(fock),
                "narayana": str(formula),
                "path_algebra": str(path),
                "decimal": dec(fock),
                "match": str(match).lower(),
            }
        )
    emit(args, rows, {"rho": str(rho)})
    return 0 if ok else 1


def cmd_fock_moments(args) -> int:
    rho = _rho_arg(args.rho)
    params = FreePoissonParams(rho**2, 1 / rho)
    rows, ok = [], True
    for n in range(1, args.max_order + 1):
        val = tstar_t_moment(rho, n)
        formula = free_poisson_moment(n, params)
        ok &= val == formula
        rows.append(
            {"n": n, "exact": str(val), "decimal": dec(val), "narayana": str(formula), "match": str(val == formula).lower()}
        )
    emit(args, rows, {"rho": str(rho)})
    return 0 if ok else 1


def cmd_density(args) -> int:
    model = DensityModel(float(args.rho))
    a, b = model.support
    ts = np.linspace(a, b, args.grid)
    est = np.imag(cauchy_Frho(ts - model.center + 1j * args.epsilon, model.rho)) / np.pi
    g = model.pdf(ts)
    rows = [
        {"t": dec(t), "g": dec(gv), "inversion_estimate": dec(ev), "diff": dec(abs(gv - ev))}
        for t, gv, ev in zip(ts, g, est)
    ]
    emit(args, rows)
    return 0


def cmd_inversion_scan(args) -> int:
    ts = np.linspace(args.lo, args.hi, args.grid)
    table = stieltjes_inversion_scan(float(args.rho), args.epsilon, ts)
    rows = [
        {"t": dec(r.t), "inversion": dec(r.inversion), "density": dec(r.density), "diff": dec(r.diff)}
        for r in table
    ]
    emit(args, rows)
    worst = max((r.diff for r in table if -1.9 <= r.t <= 1.9), default=0.0)
    return 0 if worst < args.tol else 1


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freegraph", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, fmt=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--out", help="write output here instead of stdout")
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = add("validate", cmd_validate, "check graph invariants", fmt=False)
    p.add_argument("graph")

    p = add("paths", cmd_paths, "enumerate paths of a given length")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="start")
    p.add_argument("--to", dest="end")

    p = add("moment", cmd_moment, "trace of edge words by three evaluators")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", action="append", help="e.g. e,e*,e,e* (repeatable)")
    p.add_argument("--max-len", type=int, help="all closed loops up to this length")

    p = add("cumulant", cmd_cumulant, "vertex-algebra valued moments and cumulants", fmt=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--word", action="append", required=True)
    p.add_argument("--partition", help="blocks like 1-4,2-3 or 1.2.3,4")

    p = add("freeness", cmd_freeness, "vanishing of mixed cumulants", fmt=False)
    p.add_argument("--graph", required=True)
    p.add_argument("--max-len", type=int, default=6)

    p = add("narayana", cmd_narayana, "Narayana row and Catalan counts", fmt=False)
    p.add_argument("--n", type=int, required=True)

    p = add("bijection", cmd_bijection, "Temperley-Lieb bijection NC2(2n) <-> NC(n)", fmt=False)
    p.add_argument("--pairs", help="e.g. 1-8,2-5,3-4,6-7,9-12,10-11")
    p.add_argument("--blocks", help="inverse direction, e.g. 1.3.4,2,5.6")

    for name, fn, help_ in (
        ("poisson-verify", cmd_poisson_verify, "band matrix vs Narayana formula vs path algebra"),
        ("fock-moments", cmd_fock_moments, "exact vacuum moments of t*t"),
    ):
        p = add(name, fn, help_)
        p.add_argument("--rho", required=True, help="exact rational, e.g. 3/2")
        p.add_argument("--max-order", type=int, default=6)

    p = add("density", cmd_density, "density of t*t with an inversion estimate")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--epsilon", type=float, default=1e-6)

    p = add("inversion-scan", cmd_inversion_scan, "Stieltjes inversion vs exact density")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--lo", type=float, default=-1.9)
    p.add_argument("--hi", type=float, default=1.9)
    p.add_argument("--tol", type=float, default=1e-4)
    return ap


def run(args: argparse.Namespace) -> int:
    try:
        return args.func(args)
    except (UsageError, GraphError, ValueError, KeyError) as exc:
        print(f"freegraph {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
