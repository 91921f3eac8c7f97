"""Command-line front end.

Exit codes: 0 success / equal, 1 parse or usage error, 2 internal invariant
breach, 3 not equal (``eq``) or a failed suite.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

from .cayley import Graph, label_text, word_text
from .closure import Variety, is_closed
from .oracle import (
    BudgetExceeded, check_axioms, check_corpus, sample_pairs,
)
from .semigroup import Element, decide, evaluate
from .term import ParseError, enumerate_terms, parse, random_term

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INTERNAL = 2
EXIT_NOT_EQUAL = 3


def element_json(e: Element) -> dict:
    return {
        "format": FORMAT_VERSION,
        "variety": e.variety.value,
        "point": word_text(e.point),
        "vertices": [word_text(v) for v in e.graph.sorted_vertices()],
        "edges": [{"src": word_text(x.source), "label": label_text(x.label),
                   "dst": word_text(x.target)} for x in e.graph.sorted_edges()],
    }


def _vertex_name(w) -> str:
    return word_text(w) or "λ"


def element_dot(e: Element) -> str:
    """DOT text: plain edges solid, bar edges dashed, the point double-circled."""
    lines = ["digraph element {"]
    for v in e.graph.sorted_vertices():
        shape = "doublecircle" if v == e.point else "circle"
        lines.append(f'  "{_vertex_name(v)}" [shape={shape}];')
    for x in e.graph.sorted_edges():
        style = "dashed" if x.is_bar else "solid"
        lines.append(f'  "{_vertex_name(x.source)}" -> "{_vertex_name(x.target)}" '
                     f'[label="{label_text(x.label)}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _check_invariants(e: Element) -> None:
    if e.variety is Variety.FFR_P:
        if any(x.is_bar for x in e.graph.edges) or len(Graph.from_edges(e.graph.edges).vertices) != len(e.graph.vertices):
            raise AssertionError("perfect element is not an X-reduct")
    elif e.point not in e.graph.vertices or not is_closed(e.graph, e.variety):
        raise AssertionError("element is not in canonical form")


def _parse_term(text: str, alphabet):
    return parse(text, alphabet)


def _alphabet(arg):
    if arg is None:
        return None
    return [a for a in arg.replace(",", " ").split() if a]


def cmd_eval(args) -> int:
    e = evaluate(_parse_term(args.term, _alphabet(args.alphabet)), args.variety)
    _check_invariants(e)
    print(json.dumps(element_json(e), ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_eq(args) -> int:
    alphabet = _alphabet(args.alphabet)
    u = _parse_term(args.u, alphabet)
    v = _parse_term(args.v, alphabet)
    same = decide(u, v, args.variety)
    print("equal" if same else "not-equal")
    return EXIT_OK if same else EXIT_NOT_EQUAL


def cmd_dot(args) -> int:
    e = evaluate(_parse_term(args.term, _alphabet(args.alphabet)), args.variety)
    _check_invariants(e)
    sys.stdout.write(element_dot(e))
    return EXIT_OK


def cmd_axioms(args) -> int:
    report = check_axioms(args.variety, args.samples, args.max_complexity, args.seed,
                          extra_laws=args.extra_law or ())
    for line in report.lines():
        print(line)
    for ce in report.counterexamples[:10]:
        print(f"counterexample {ce['law']}: {' | '.join(ce['terms'])} (seed {ce['seed']})")
    print(report.to_json())
    return EXIT_OK if report.ok else EXIT_NOT_EQUAL


def cmd_oracle_check(args) -> int:
    alphabet = _alphabet(args.alphabet) or ["x"]
    terms = enumerate_terms(alphabet, args.max_complexity)
    varieties = [args.variety] if args.variety_given else list(Variety)
    summaries = []
    ok = True
    for variety in varieties:
        pairs = None
        if args.pairs:
            pairs = sample_pairs(terms, variety, args.pairs, args.seed)
        report = check_corpus(terms, variety, pairs, strong_fast_path=True)
        print(f"{variety.value}: {report.pairs} pairs, {report.equal} equal, "
              f"{len(report.disagreements)} disagreements")
        for d in report.disagreements[:10]:
            print(f"  disagreement ({d[0]}): {d[1]} vs {d[2]}")
        summaries.append(report.summary())
        ok = ok and report.ok
    print(json.dumps({"format": FORMAT_VERSION, "terms": len(terms), "seed": args.seed,
                      "reports": summaries}, indent=2))
    return EXIT_OK if ok else EXIT_NOT_EQUAL


def time_decide(variety: Variety, size: int, rng: random.Random, repeats: int = 3,
                alphabet=("x", "y")) -> float:
    """Median wall time of ``decide`` on random term pairs of complexity ``size``."""
    times = []
    for _ in range(repeats):
        u = random_term(rng, alphabet, size)
        v = random_term(rng, alphabet, size)
        start = time.perf_counter()
        decide(u, v, variety)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rng = random.Random(args.seed)
    varieties = [args.variety] if args.variety_given else list(Variety)
    print(f"{'variety':8} {'size':>6} {'seconds':>10}")
    for variety in varieties:
        for n in sizes:
            t = time_decide(variety, n, rng, args.repeats)
            print(f"{variety.value:8} {n:>6} {t:>10.4f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frestr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def variety_flag(p):
        p.add_argument("--variety", type=Variety.parse, default=None,
                       help="ffr (default), ffrs or ffrp")

    def alphabet_flag(p):
        p.add_argument("--alphabet", default=None,
                       help="comma-separated generators; others are rejected")

    p = sub.add_parser("eval", help="print the canonical element of a term as JSON")
    p.add_argument("term")
    variety_flag(p)
    alphabet_flag(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("eq", help="decide whether two terms are equal")
    p.add_argument("u")
    p.add_argument("v")
    variety_flag(p)
    alphabet_flag(p)
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("dot", help="print the canonical element of a term as DOT")
    p.add_argument("term")
    variety_flag(p)
    alphabet_flag(p)
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("axioms", help="fuzz the laws of a variety")
    variety_flag(p)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--max-complexity", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extra-law", action="append",
                   choices=["strong", "perfect_product", "perfect_plus", "right_identity"],
                   help="also check a law not expected to hold")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("oracle-check", help="compare decide with the relation search")
    variety_flag(p)
    p.add_argument("--alphabet", default="x")
    p.add_argument("--max-complexity", type=int, default=5)
    p.add_argument("--pairs", type=int, default=0,
                   help="sample this many pairs instead of all of them")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="time decide on random terms")
    variety_flag(p)
    p.add_argument("--sizes", default="250,500,1000,2000")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    args.variety_given = args.variety is not None
    if args.variety is None:
        args.variety = Variety.FFR
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
