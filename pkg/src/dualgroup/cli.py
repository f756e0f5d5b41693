"""Command-line interface: ``dualgroup <command> ...``.

Exit status is 0 when every check passes, 1 when a verification fails
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from itertools import permutations

import numpy as np

from . import catalog, group_model as gm, presentation, theta_action as ta

SCHEMA = 1


def _emit(obj: dict) -> None:
    print(json.dumps({"schema": SCHEMA, **obj}, indent=2, sort_keys=False))


# -- commands -----------------------------------------------------------------------

def cmd_order(args) -> int:
    print(gm.dg_order(args.n))
    return 0


def cmd_kernel(args) -> int:
    basis = gm.kernel_basis(args.n)
    if args.basis:
        for g in basis:
            print(g.text())
    elif args.list:
        for g in gm.kernel_elements(args.n):
            print(g.text())
    else:
        print(2 ** len(basis))
    return 0


def cmd_centre(args) -> int:
    print(gm.centre_order(args.n))
    return 0


def cmd_enumerate(args) -> int:
    elems = gm.bfs_enumerate(args.n, allow_large=args.allow_large)
    print(len(elems))
    return 0 if len(elems) == gm.dg_order(args.n) else 1


def cmd_table(args) -> int:
    if args.which == "action":
        table = catalog.generate_action_table()
        diff = table.diff(catalog.golden_action_table())
    else:
        table = catalog.generate_mult_table()
        diff = table.diff_upper(catalog.golden_mult_table())
    sys.stdout.write(table.to_csv() if args.format == "csv" else table.to_json() + "\n")
    if diff:
        print("\n".join(diff), file=sys.stderr)
        return 1
    return 0


def cmd_graphs(args) -> int:
    sys.stdout.write(catalog.figure_dot(args.figure.upper()))
    return 0


def cmd_verify(args) -> int:
    fn = {
        "relations": verify_relations,
        "kernel-graph": verify_kernel_graph,
        "splitting": verify_splitting,
        "iota": verify_iota,
        "pairing": verify_pairing,
    }[args.check]
    return fn(args)


def verify_relations(args) -> int:
    rep = presentation.verify_relators(args.n)
    square_ok = True
    bad_squares = []
    if args.n >= 3:
        for i, j, k in _triples(args.n):
            x = gm.eval_word(gm.square_word(i, j, k), args.n)
            if x.graph != gm.square_graph(i, j, k, args.n) or not x.perm.is_identity():
                square_ok = False
                bad_squares.append(f"{i}{j}{i}{k}")
    ok = rep.ok and square_ok
    _emit({"check": "relations", "n": args.n, "ok": ok, "relators": rep.checked,
           "failures": rep.failures, "square_graph_failures": bad_squares})
    return 0 if ok else 1


def _triples(n):
    return permutations(range(1, n + 1), 3)


def verify_kernel_graph(args) -> int:
    n = args.n
    basis = gm.kernel_basis(n)
    failures = []
    for i, j, k in _triples(n):
        g = gm.square_graph(i, j, k, n)
        if not gm.is_kernel_graph(g):
            failures.append(g.text())
    checked = 0
    if n <= 4:
        for x in gm.bfs_enumerate(n):
            checked += 1
            if not gm.element_of_dg(x):
                failures.append(str(x))
    ok = not failures and len(basis) == gm.kernel_dimension(n)
    _emit({"check": "kernel-graph", "n": n, "ok": ok, "dimension": len(basis),
           "basis": [g.text() for g in basis], "elements_checked": checked,
           "failures": failures})
    return 0 if ok else 1


def verify_splitting(args) -> int:
    rep = gm.verify_splitting(args.n, search=args.n <= 4)
    _emit({"check": "splitting", **rep.as_dict()})
    ok = rep.status is not gm.SplitStatus.SPLIT_WITNESS_FOUND or all(rep.relations.values())
    return 0 if ok else 1


def iota_words(n: int, max_len: int, rng: np.random.Generator, extra: int = 20) -> list[str]:
    """Square words, their pairwise products and seeded random kernel words,
    all of length at most ``max_len``."""
    words = [w for w in ta.square_kernel_words(n, pairs=max_len >= 16) if len(w) <= max_len]
    for _ in range(extra):
        m = int(rng.integers(1, max(2, max_len // 2 + 1)))
        u = [int(a) for a in rng.integers(1, n + 1, size=m)]
        perm = gm.eval_word(u, n).perm.inverse()
        v = gm.transposition_word(perm, "random", _py_rng(rng))
        w = gm.format_word(u) + gm.format_word(v)
        if 0 < len(w) <= max_len:
            words.append(w)
    return words


def _py_rng(rng: np.random.Generator) -> random.Random:
    return random.Random(int(rng.integers(0, 2 ** 31)))


def verify_iota(args) -> int:
    n = args.n
    rng = np.random.default_rng(args.seed)
    dims = ta.BundleAssignment.random(n, rng, args.dims)
    phi = ta.ParamVector.random(dims, rng, batch=(args.samples,))
    words = iota_words(n, args.max_word_len, rng)
    failures = []
    for w in words:
        x = gm.eval_word(w, n)
        if not x.perm.is_identity():
            failures.append({"word": w, "reason": "not a kernel word"})
            continue
        lhs = ta.theta_word(w, phi)
        rhs = ta.sign_action(x.graph, phi)
        if lhs != rhs:
            bad = [p.text() for p in lhs.comps if not np.array_equal(lhs.comps[p], rhs.comps[p])]
            failures.append({"word": w, "components": bad})
    _emit({"check": "iota", "n": n, "seed": args.seed, "ok": not failures,
           "words": len(words), "samples": args.samples, "failures": failures[:10]})
    return 0 if not failures else 1


def verify_pairing(args) -> int:
    rng = np.random.default_rng(args.seed)
    dims = ta.BundleAssignment.random(args.n, rng, args.dims)
    reports = []
    for _ in range(args.phis):
        phi = ta.ParamVector.random(dims, rng)
        reports.append(ta.verify_pairing(args.k, phi, args.trials, rng))
    bad = [r for r in reports if not r.ok]
    _emit({"check": "pairing", "n": args.n, "k": args.k, "seed": args.seed,
           "ok": not bad, "trials": args.trials * args.phis,
           "counterexample": bad[0].counterexample if bad else None})
    return 0 if not bad else 1


def cmd_coset_enum(args) -> int:
    if args.subsets:
        res = presentation.extra_relator_subsets(args.cap)
        _emit({"subsets": {k: {"status": v.status.value, "cosets": v.cosets} for k, v in res.items()}})
        return 0
    rels = presentation.standard_relators(4, extra=not args.rels_only).relators
    res = presentation.coset_enumerate(rels, 4, args.cap, trace=args.trace)
    if args.trace:
        for kind, a, b in res.trace:
            print(f"{kind} {a} {b}", file=sys.stderr)
    if res.status is presentation.CosetStatus.DIVERGED:
        print(f"DIVERGED {res.cosets}")
        return 0 if args.rels_only else 1
    print(res.cosets)
    if args.rels_only:
        return 1
    return 0 if res.cosets == gm.dg_order(4) else 1


def cmd_theta(args) -> int:
    rng = np.random.default_rng(args.seed)
    dims = ta.BundleAssignment.random(args.n, rng, args.dims)
    phi = ta.ParamVector.random(dims, rng)
    psi = ta.theta_word(args.word, phi, own_labels=args.own_labels)
    _emit({"word": args.word, "n": args.n, "seed": args.seed,
           "input": json.loads(phi.to_json()), "output": json.loads(psi.to_json())})
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dualgroup", description="Duality functor groups DG_n.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="|DG_n|")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("kernel", help="the kernel K_{n+1}")
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true", help="all kernel graphs")
    g.add_argument("--basis", action="store_true", help="a GF(2) basis")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("centre", help="|Z(DG_n)|")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_centre)

    p = sub.add_parser("enumerate", help="count Psi(DG_n) by closure")
    p.add_argument("n", type=int)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table", help="the K_5 sign or multiplication table")
    p.add_argument("which", choices=["action", "mult"])
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("graphs", help="graphs of catalogue elements")
    p.add_argument("--figure", choices=["tuv"], default="tuv")
    p.add_argument("--format", choices=["dot"], default="dot")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("verify", help="run a verification")
    vs = p.add_subparsers(dest="check", required=True)
    for name in ("relations", "kernel-graph", "splitting"):
        q = vs.add_parser(name)
        q.add_argument("n", type=int)
    q = vs.add_parser("iota")
    q.add_argument("n", type=int)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--dims", type=int, default=2, help="maximum bundle dimension")
    q.add_argument("--max-word-len", type=int, default=16)
    q.add_argument("--samples", type=int, default=4, help="parameter vectors per word")
    q = vs.add_parser("pairing")
    q.add_argument("n", type=int)
    q.add_argument("k", type=int)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--dims", type=int, default=2)
    q.add_argument("--phis", type=int, default=1, help="random parameter vectors")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("coset-enum", help="coset enumeration for the n = 4 presentation")
    p.add_argument("--cap", type=int, default=presentation.DEFAULT_CAP)
    p.add_argument("--rels-only", action="store_true", help="omit the two extra relators")
    p.add_argument("--subsets", action="store_true", help="counts for each subset of extra relators")
    p.add_argument("--trace", action="store_true", help="definitions and coincidences on stderr")
    p.set_defaults(func=cmd_coset_enum)

    p = sub.add_parser("theta", help="apply a word to a seeded parameter vector")
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dims", type=int, default=1)
    p.add_argument("--own-labels", action="store_true")
    p.set_defaults(func=cmd_theta)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"dualgroup: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
