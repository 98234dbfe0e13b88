"""Command line interface: ``cofiltree <command> FILE [options]``.

Every command prints one JSON report (stable key order, grades in the
poset's fixed linear extension). Exit status: 0 success, 1 usage or input
error, 2 a checked property failed or a demanded object does not exist.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import oracle
from .chains import ZZ, Chain, Ring
from .complex import SimplicialMap
from .errors import CofiltreeError, SearchBudgetExceeded, UnknownGrade
from .fileformat import _format_grade, read_filtration
from .persistence import (
    check_tau1_functoriality,
    cofiltration_defects,
    cofiltration_of_spanning_trees,
    precover,
    precover_map_and_check,
    subfiltration_of_spanning_trees,
)
from .spanning import (
    bad_exchange_pairs,
    cycle_basis_rel_tree,
    is_spanning_tree,
    n_spanning_complex,
    order_minimal_spanning_tree,
)

SCHEMA = "cofiltree-report/1"
EXIT_OK, EXIT_USAGE, EXIT_PROPERTY = 0, 1, 2


# -- JSON encoding helpers --------------------------------------------------------
def enc_grade(g):
    return list(g) if isinstance(g, tuple) else g


def enc_simplex(s):
    return [str(v) for v in s]


def enc_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else str(c)
    return c


def enc_chain(c: Chain, X):
    return [[enc_coeff(coeff), enc_simplex(s)] for s, coeff in c.sorted_terms(X.key)]


def _grade_arg(F, text):
    if text is None:
        top = F.poset.maximum()
        if top is None:
            raise UnknownGrade("poset has no maximum; pass --grade")
        return top
    g = tuple(int(x) for x in text.split(",")) if getattr(F.poset, "extents", None) else text
    if g not in F.poset:
        raise UnknownGrade(f"grade {text!r} is not in the poset")
    return g


# -- commands ---------------------------------------------------------------------
def cmd_tree(F, args):
    q = _grade_arg(F, args.grade)
    X = F.at(q)
    T = order_minimal_spanning_tree(X)
    ok = is_spanning_tree(X, T) and not bad_exchange_pairs(X, T)
    return {
        "grade": enc_grade(q),
        "tree": [enc_simplex(e) for e in T.sorted_edges()],
        "complement": [enc_simplex(e) for e in T.complement],
        "ok": ok,
    }, ok


def cmd_cofiltration(F, args):
    cof = cofiltration_of_spanning_trees(F)
    defects = cofiltration_defects(F, cof.trees)
    trees = [
        {
            "grade": enc_grade(q),
            "tree": [enc_simplex(e) for e in cof[q].sorted_edges()],
            "complement": [enc_simplex(e) for e in cof.complement(q)],
        }
        for q in F.grades
    ]
    ok = not defects
    return {
        "trees": trees,
        "complement_monotone": ok,
        "defects": [[k, enc_grade(p), enc_grade(q) if q is not None else None] for k, p, q in defects],
        "ok": ok,
    }, ok


def cmd_subfiltration(F, args):
    found = subfiltration_of_spanning_trees(F, budget=args.budget)
    body = {"exists": found is not None, "result": "found" if found else "none exists"}
    if found:
        body["trees"] = [
            {"grade": enc_grade(q), "tree": [enc_simplex(e) for e in found[q].sorted_edges()]}
            for q in F.grades
        ]
    body["ok"] = found is not None
    return body, found is not None


def cmd_precover(F, args):
    P = precover(F, ring=args.coeff)
    table = precover_map_and_check(P, strict=False)
    X = F.complex
    summands = [
        {
            "edge": enc_simplex(s.edge),
            "cycle": enc_chain(s.cycle, X),
            "generators": [enc_grade(g) for g in s.upper_set.generators],
            "grades": [enc_grade(g) for g in s.upper_set.sorted()],
        }
        for s in P.summands
    ]
    ranks = [dict(grade=enc_grade(r.grade), **r.as_dict()) for r in table]
    ok = all(r.surjective for r in table)
    return {"ring": str(args.coeff), "summands": summands, "ranks": ranks, "surjective": ok, "ok": ok}, ok


def cmd_span_n(F, args):
    q = _grade_arg(F, args.grade)
    X = F.at(q)
    A = n_spanning_complex(X, args.n, args.coeff)
    nullity = oracle.cycle_rank(X, args.n, args.coeff)
    rank_identity = len(A.excluded) == nullity
    ok = not A.flagged and rank_identity
    return {
        "grade": enc_grade(q),
        "n": args.n,
        "ring": str(args.coeff),
        "kept": [enc_simplex(s) for s in A.top_simplices],
        "excluded": [enc_simplex(s) for s in A.excluded],
        "injective": A.injective,
        "boundary_span_equal": A.span_verified,
        "cycle_rank": nullity,
        "rank_identity": rank_identity,
        "flag": None if not A.flagged else "SpanVerificationFailed",
        "ok": ok,
    }, ok


def cmd_homology(F, args):
    rows = []
    for q in F.grades:
        X = F.at(q)
        rows.append({
            "grade": enc_grade(q),
            "homology": [oracle.homology(X, n, args.coeff).as_dict() for n in range(max(X.dim, 0) + 1)],
        })
    return {"ring": str(args.coeff), "table": rows, "ok": True}, True


def cmd_verify(F, args):
    ring = args.coeff
    checks = []

    def check(name, ok, detail=None):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    check("filtration-monotone", F.is_monotone())
    cof = cofiltration_of_spanning_trees(F)
    for q in F.grades:
        X = F.at(q)
        T = cof[q]
        g = _format_grade(q)
        check(f"tree-valid@{g}", is_spanning_tree(X, T))
        bad = bad_exchange_pairs(X, T)
        check(f"tree-order-minimal@{g}", not bad, [[enc_simplex(a), enc_simplex(b)] for a, b in bad] or None)
        basis = cycle_basis_rel_tree(X, T, ring)
        check(
            f"cycle-basis-rank@{g}",
            len(basis) == oracle.cycle_rank(X, 1, ring),
            {"basis": len(basis), "oracle": oracle.cycle_rank(X, 1, ring)},
        )
        check(
            f"leading-simplex-outside-tree@{g}",
            all(max(z.support, key=X.key) not in T.edges for _, z in basis),
        )
        for n in (1, 2):
            if not X.of_dim(n):
                continue
            A = n_spanning_complex(X, n, ring)
            nullity = oracle.cycle_rank(X, n, ring)
            check(
                f"{n}-spanning@{g}",
                not A.flagged and len(A.excluded) == nullity,
                {"injective": A.injective, "boundary_span_equal": A.span_verified,
                 "excluded": len(A.excluded), "cycle_rank": nullity},
            )
            if n == 1:
                check(f"1-spanning-is-tree@{g}", set(A.top_simplices) == set(T.edges))
        inclusion = SimplicialMap(X, F.complex, {v: v for v in X.vertices})
        check(f"tau1-inclusion@{g}", check_tau1_functoriality(inclusion, X, F.complex))
    defects = cofiltration_defects(F, cof.trees)
    check("cofiltration", not defects, [[k, enc_grade(p), enc_grade(q)] for k, p, q in defects] or None)
    P = precover(F, cof, ring)
    table = precover_map_and_check(P, strict=False)
    for r in table:
        check(f"epimorphism@{_format_grade(r.grade)}", r.surjective, r.as_dict())
    ok = all(c["ok"] for c in checks)
    return {"ring": str(ring), "checks": checks, "failed": sum(not c["ok"] for c in checks), "ok": ok}, ok


COMMANDS = {
    "tree": (cmd_tree, "order-minimal spanning tree at one grade"),
    "cofiltration": (cmd_cofiltration, "order-minimal tree at every grade + complement monotonicity"),
    "subfiltration": (cmd_subfiltration, "search for a nested family of spanning trees"),
    "precover": (cmd_precover, "upper set summands and the epimorphism rank table"),
    "span-n": (cmd_span_n, "greedy n-spanning complex with verification"),
    "homology": (cmd_homology, "homology table from Smith normal forms"),
    "verify": (cmd_verify, "run every invariant check on the input"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cofiltree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="filtration file ('-' for stdin)")
        p.add_argument("--coeff", type=_ring_arg, default=ZZ, help="z | q | zp:<p> (default z)")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        if name in ("tree", "span-n"):
            p.add_argument("--grade", help="grade, e.g. 2,2 (default: poset maximum)")
        if name == "span-n":
            p.add_argument("--n", type=int, default=1, help="dimension (default 1)")
        if name == "subfiltration":
            p.add_argument("--budget", type=int, default=100_000, help="max candidate trees tried")
    return parser


def _ring_arg(text) -> Ring:
    try:
        return Ring.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def run(argv=None) -> tuple[int, dict | None]:
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            from .fileformat import parse_filtration

            F = parse_filtration(sys.stdin.read())
        else:
            F = read_filtration(args.file)
        func, _ = COMMANDS[args.command]
        body, ok = func(F, args)
    except SearchBudgetExceeded as exc:
        print(f"cofiltree: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except (CofiltreeError, OSError, ValueError) as exc:
        print(f"cofiltree: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "input": {
            "grades": len(F.poset),
            "vertices": len(F.complex.of_dim(0)),
            "edges": len(F.complex.of_dim(1)),
            "dimension": F.complex.dim,
        },
        **body,
    }
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (EXIT_OK if ok else EXIT_PROPERTY), report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
