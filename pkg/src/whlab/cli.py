"""Command line entry point."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .core import BudgetExceeded, format_word, parse_word
from .factorgraph import enumerate_factors
from .products import (
    centralizer_search,
    report_ok,
    standard_product,
    tau_power,
    twisted_product,
    verify_direct_product,
)
from .rigidity import crawl, standard_apartment, validate_chain
from .subgroups import fold, intersect, rank as core_rank
from .whitehead import (
    Carrier,
    InA,
    cyclic_whitehead_graph,
    graded_antipode,
    has_full_support,
    is_primitive,
    minimize,
    whitehead_graph,
)

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _words(text: str, rank: int | None) -> list:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("expected a comma-separated list of words")
    return [parse_word(p, rank) for p in parts]


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    env = os.environ.get("WHLAB_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise UsageError("WHLAB_BUDGET must be an integer") from None
    else:
        value = args.budget
    if value <= 0:
        raise UsageError("budget must be positive")
    return value


def _rank_for(args, words) -> int:
    top = max((abs(l) for w in words for l in w), default=1)
    if args.rank is not None:
        if args.rank < top:
            raise UsageError(f"word uses x{top} but --rank is {args.rank}")
        return args.rank
    return max(top, 2)


# ---------------------------------------------------------------------------
# subcommands


def cmd_wgraph(args) -> int:
    u = parse_word(args.word, args.rank)
    rank = _rank_for(args, [u])
    g = cyclic_whitehead_graph(u, rank) if args.cyclic else whitehead_graph(u, rank)
    fmt = args.format or "text"
    if fmt == "dot":
        _emit(args, g.to_dot())
    elif fmt == "json":
        _emit(args, _dump(g.to_json()))
    else:
        data = g.to_json()
        _emit(args, "".join(f"{x} -- {y}\n" for x, y in data["edges"]))
    return OK


def cmd_minimize(args) -> int:
    u = parse_word(args.word, args.rank)
    rank = _rank_for(args, [u])
    m, phi = minimize(u, rank)
    if (args.format or "text") == "json":
        _emit(args, _dump({"input": format_word(u), "minimum": format_word(m),
                           "length": len(m), "automorphism": str(phi)}))
    else:
        _emit(args, f"{format_word(m)}\n{phi}\n")
    return OK


def cmd_primitive(args) -> int:
    u = parse_word(args.word, args.rank)
    _emit(args, "true\n" if is_primitive(u, _rank_for(args, [u])) else "false\n")
    return OK


def cmd_support(args) -> int:
    u = parse_word(args.word, args.rank)
    _emit(args, "true\n" if has_full_support(u, _rank_for(args, [u])) else "false\n")
    return OK


def cmd_gal(args) -> int:
    u = parse_word(args.word, args.rank)
    rank = _rank_for(args, [u])
    v = graded_antipode(args.k, u, rank)
    if isinstance(v, InA):
        out = {"verdict": "InA"}
    elif isinstance(v, Carrier):
        out = {"verdict": "Carrier", "automorphism": str(v.phi)}
    else:
        out = {"verdict": "Witness", "p": format_word(v.p), "w": format_word(v.w),
               "normalized_u": format_word(v.normalized_u), "normalized_p": format_word(v.normalized_p),
               "normalizer": str(v.normalizer), "full_support": v.full_support}
    out["u"] = format_word(u)
    out["k"] = args.k
    _emit(args, _dump(out))
    return OK


def cmd_fold(args) -> int:
    gens = _words(args.generators, args.rank)
    g = fold(gens, _rank_for(args, gens))
    if (args.format or "json") == "text":
        _emit(args, f"{g}\nrank {core_rank(g)}\n")
    else:
        data = g.to_json()
        data["rank"] = core_rank(g)
        data["basis"] = [format_word(w) for w in g.basis()]
        data["key"] = g.key.digest
        _emit(args, _dump(data))
    return OK


def cmd_intersect(args) -> int:
    a, b = _words(args.first, args.rank), _words(args.second, args.rank)
    rank = _rank_for(args, a + b)
    h = intersect(fold(a, rank), fold(b, rank))
    basis = [format_word(w) for w in h.basis()]
    if (args.format or "text") == "json":
        _emit(args, _dump({"rank": core_rank(h), "basis": basis}))
    else:
        _emit(args, "<" + ", ".join(basis) + ">\n")
    return OK


def cmd_ffgraph(args) -> int:
    if args.rank is None or args.k is None or args.len is None:
        raise UsageError("ffgraph build needs --rank, --k and --len")
    g = enumerate_factors(args.rank, args.k, args.len, vertex_cap=_budget(args))
    _emit(args, g.to_dot() if args.format == "dot" else g.dumps())
    return OK


def cmd_apartment(args) -> int:
    basis = _words(args.basis, args.rank)
    ap = standard_apartment(basis, _rank_for(args, basis))
    _emit(args, ap.to_dot() if args.format == "dot" else _dump(ap.to_json()))
    return OK


def cmd_crawl(args) -> int:
    src, dst = _words(args.source, args.rank), _words(args.target, args.rank)
    rank = _rank_for(args, src + dst)
    delta, lam = standard_apartment(src, rank), standard_apartment(dst, rank)
    chain = crawl(delta, lam, budget=_budget(args))
    problems = validate_chain(chain, delta, lam)
    out = chain.to_json()
    out["valid"] = not problems
    out["problems"] = problems
    _emit(args, _dump(out))
    return OK if not problems else FAILED


def cmd_products(args) -> int:
    rank = args.rank or 3
    p = twisted_product(rank) if args.twisted else standard_product(rank)
    report = verify_direct_product(p, args.depth)
    if args.centralizer is not None:
        found = centralizer_search(p.all_generators(), args.centralizer, budget=_budget(args))
        if args.twisted:
            powers = [tau_power(phi, args.centralizer) for phi in found]
            ok = all(n is not None for n in powers)
            entry = {"name": f"centralizer depth {args.centralizer} within powers of tau",
                     "status": "pass" if ok else "fail"}
        else:
            ok = len(found) == 1 and found[0].is_identity()
            entry = {"name": f"centralizer depth {args.centralizer} is trivial",
                     "status": "pass" if ok else "fail"}
        if not ok:
            entry["witness"] = [str(phi) for phi in found if not phi.is_identity()][:3]
        report["checks"].append(entry)
    if args.format == "text":
        _emit(args, "".join(f"{c['status']:4s} {c['name']}\n" for c in report["checks"]))
    else:
        _emit(args, _dump(report))
    return OK if report_ok(report) else FAILED


def cmd_verify_all(args) -> int:
    from .verify import run_all

    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(seed=args.seed, only=only)
    if args.format == "text":
        _emit(args, "".join(r.line() + "\n" for r in results))
    else:
        _emit(args, _dump({"seed": args.seed, "results": [r.to_json() for r in results],
                           "passed": all(r.passed for r in results)}))
    return OK if all(r.passed for r in results) else FAILED


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int)
    common.add_argument("--len", type=int)
    common.add_argument("--depth", type=int, default=4)
    common.add_argument("--budget", type=int, default=100_000)
    common.add_argument("--format", choices=["json", "dot", "text"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")

    parser = argparse.ArgumentParser(prog="whlab", description="Whitehead graphs, free factors and apartments.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("wgraph", cmd_wgraph, "Whitehead graph of a word")
    p.add_argument("word")
    p.add_argument("--cyclic", action="store_true")
    add("minimize", cmd_minimize, "minimal length in the orbit").add_argument("word")
    add("primitive", cmd_primitive, "primitivity test").add_argument("word")
    add("support", cmd_support, "full support test for a cyclic word").add_argument("word")
    p = add("gal", cmd_gal, "graded antipode verdict")
    p.add_argument("word")
    p.add_argument("--k", type=int, required=True)
    add("fold", cmd_fold, "Stallings graph of a subgroup").add_argument("generators")
    p = add("intersect", cmd_intersect, "intersection of two subgroups")
    p.add_argument("first")
    p.add_argument("second")
    p = add("ffgraph", cmd_ffgraph, "truncated free factor graph")
    p.add_argument("action", choices=["build"])
    p.add_argument("--k", type=int)
    p = add("apartment", cmd_apartment, "standard apartment of a basis")
    p.add_argument("--basis", required=True)
    p = add("crawl", cmd_crawl, "crawling chain between two apartments")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p = add("products", cmd_products, "direct product checks")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--centralizer", type=int, metavar="DEPTH")
    p = add("verify-all", cmd_verify_all, "run every acceptance check")
    p.add_argument("--only", help="comma-separated criterion numbers")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return BUDGET
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
