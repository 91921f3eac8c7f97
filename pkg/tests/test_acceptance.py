"""Acceptance criteria, one check per criterion.

Each ``criterion_*`` function returns ``(ok, detail)``; the pytest wrappers
print one PASS/FAIL line per criterion and assert on it.  Run the file
directly (``python3 tests/test_acceptance.py``) to get just the summary lines.
"""

from __future__ import annotations

import math
import random
import statistics
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from graphgen import random_accessible_graph  # noqa: E402

from frestr.cayley import Bar, Edge, Plain, union  # noqa: E402
from frestr.closure import Variety, close, x_reduct  # noqa: E402
from frestr.oracle import (  # noqa: E402
    check_axioms, check_corpus, neighbors, raw_value, relations, sample_pairs,
)
from frestr.semigroup import decide, evaluate, lambda_element, mx, plus  # noqa: E402
from frestr.term import enumerate_terms, parse, random_term  # noqa: E402

FFR, FFR_S, FFR_P = Variety.FFR, Variety.FFR_S, Variety.FFR_P
L, X = (), ("x",)

# growth exponents the deciders must not exceed, and the constant-factor slack
# allowed on the runtime ratio between the smallest and largest size
EXPONENT = {FFR: 3, FFR_S: 2, FFR_P: 2}
RATIO_SLACK = 2.0
BENCH_SIZES = (250, 500, 1000, 2000)


def _bar(u, v):
    return Edge(u, Bar(v[len(u):]))


def _best_time(fn, repeats=20):
    fn()  # warm up
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


# -- 1 ------------------------------------------------------------------------------

def criterion_1():
    fixtures = [
        ("x", X, {Edge(L, Plain("x")), _bar(L, X), _bar(L, L)}),
        ("m(x)", X, {_bar(L, X), _bar(L, L)}),
        ("m(x*y)", ("x", "y"), {_bar(L, ("x", "y")), _bar(L, L)}),
    ]
    details = []
    ok = True
    for text, point, edges in fixtures:
        t = parse(text)
        e = evaluate(t, FFR)
        exact = e.graph.edges == edges and e.point == point
        elapsed = _best_time(lambda: evaluate(t, FFR))
        ok = ok and exact and elapsed < 1e-3
        details.append(f"{text}: {len(e.graph.edges)} edges, {'exact' if exact else 'MISMATCH'}, "
                       f"{elapsed * 1e6:.0f}us")
    return ok, "; ".join(details)


# -- 2 ------------------------------------------------------------------------------

def criterion_2(count=10_000, seed=2):
    rng = random.Random(seed)
    violations = 0
    start = time.perf_counter()
    for _ in range(count):
        h = random_accessible_graph(rng, 8)
        g = union(h, random_accessible_graph(rng, 5))  # g ⊇ h, still accessible
        if len(g.vertices) > 12:
            g = h
        for variety in (FFR, FFR_S):
            cg = close(g, variety)
            ch = close(h, variety)
            if not (cg >= g and close(cg, variety) == cg and cg >= ch
                    and ch >= h and close(ch, variety) == ch):
                violations += 1
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 30
    return ok, f"{count} graph pairs x 2 closures, {violations} violations, {elapsed:.1f}s"


# -- 3 ------------------------------------------------------------------------------

def criterion_3(samples=5000, seed=3):
    ok = True
    details = []
    for variety in Variety:
        start = time.perf_counter()
        report = check_axioms(variety, samples, 7, seed)
        elapsed = time.perf_counter() - start
        bad = {k: v for k, v in report.violations.items() if v}
        good = report.ok and not bad and elapsed < 60
        ok = ok and good
        details.append(f"{variety.value}: {samples} triples, {len(report.checked)} laws, "
                       f"{sum(bad.values())} violations, {elapsed:.1f}s")
        if "strong" in report.expected and variety is not FFR:
            ok = ok and report.checked["strong"] >= samples
        if variety is FFR_P:
            for law in ("perfect_product", "perfect_plus", "right_identity"):
                ok = ok and report.checked[law] >= samples
    return ok, "; ".join(details)


# -- 4 ------------------------------------------------------------------------------

def criterion_4(samples=500, seed=4):
    u, v = parse("m(x)*m(y)"), parse("(m(x))^+*m(x*y)")
    checks = {
        "strong witness FFR false": decide(u, v, FFR) is False,
        "strong witness FFR_S true": decide(u, v, FFR_S) is True,
        "perfect witness FFR_P true": decide(parse("m(x*y)"), parse("m(x)*m(y)"), FFR_P) is True,
        "mx(a)^+ != λ in FFR": plus(mx(evaluate(parse("m(x)"), FFR))) != lambda_element(FFR),
    }
    rng = random.Random(seed)
    lam = lambda_element(FFR_P)
    perfect_ok = all(
        plus(mx(evaluate(random_term(rng, ["x", "y"], rng.randint(1, 9)), FFR_P))) == lam
        for _ in range(samples))
    checks[f"mx(a)^+ = λ on {samples} FFR_P samples"] = perfect_ok
    failed = [k for k, good in checks.items() if not good]
    return not failed, "all witnesses as expected" if not failed else "failed: " + ", ".join(failed)


# -- 5 and 6 --------------------------------------------------------------------------

_CORPUS_CACHE: dict = {}


def _corpus_reports():
    if not _CORPUS_CACHE:
        start = time.perf_counter()
        one = enumerate_terms(["x"], 6)
        two = enumerate_terms(["x", "y"], 5)
        reports = {}
        for variety in Variety:
            exhaustive = check_corpus(one, variety, strong_fast_path=True)
            pairs = sample_pairs(two, variety, 2000, seed=5)
            sampled = check_corpus(two, variety, pairs, strong_fast_path=True)
            reports[variety] = (exhaustive, sampled, len(pairs))
        _CORPUS_CACHE["reports"] = reports
        _CORPUS_CACHE["elapsed"] = time.perf_counter() - start
        _CORPUS_CACHE["sizes"] = (len(one), len(two))
    return _CORPUS_CACHE


def criterion_5():
    data = _corpus_reports()
    ok = data["elapsed"] < 600
    details = []
    for variety, (ex, sa, npairs) in data["reports"].items():
        oracle_bad = [d for d in ex.disagreements + sa.disagreements if d[0] == "oracle"]
        ok = ok and not oracle_bad and npairs >= 2000
        details.append(f"{variety.value}: {ex.pairs}+{sa.pairs} pairs, {ex.equal + sa.equal} equal, "
                       f"{len(oracle_bad)} disagreements")
    n1, n2 = data["sizes"]
    return ok, f"corpora {n1}/{n2} terms; " + "; ".join(details) + f"; {data['elapsed']:.0f}s"


def criterion_6():
    ex, sa, _ = _corpus_reports()["reports"][FFR_S]
    fast_bad = [d for d in ex.disagreements + sa.disagreements if d[0] == "fast-path"]
    return not fast_bad, f"{ex.pairs + sa.pairs} FFR_S pairs, {len(fast_bad)} fast-path disagreements"


# -- 7 ------------------------------------------------------------------------------

def criterion_7(count=1000, seed=7):
    rng = random.Random(seed)
    rels = relations(FFR_P, ["x", "y"])
    moves = 0
    broken = 0
    for _ in range(count):
        p = raw_value(random_term(rng, ["x", "y"], rng.randint(1, 12)), FFR_P)
        reduct = x_reduct(p.graph)
        for q in neighbors(p, rels):
            moves += 1
            if x_reduct(q.graph) != reduct or q.point != p.point:
                broken += 1
    return broken == 0 and moves > 0, f"{count} raw values, {moves} moves, {broken} changed the reduct"


# -- 8 ------------------------------------------------------------------------------

def _decide_time(variety, size, rng, pairs=5):
    times = []
    for _ in range(pairs):
        u = random_term(rng, ["x", "y"], size)
        v = random_term(rng, ["x", "y"], size)
        best = math.inf
        for _ in range(3):
            start = time.perf_counter()
            decide(u, v, variety)
            best = min(best, time.perf_counter() - start)
        times.append(best)
    return statistics.median(times), max(times)


def criterion_8(seed=8):
    rng = random.Random(seed)
    ok = True
    details = []
    for variety in Variety:
        medians = {}
        worst = 0.0
        for n in BENCH_SIZES:
            med, mx_t = _decide_time(variety, n, rng)
            medians[n] = med
            if n == BENCH_SIZES[-1]:
                worst = mx_t
        xs = [math.log(n) for n in BENCH_SIZES]
        ys = [math.log(medians[n]) for n in BENCH_SIZES]
        mean_x, mean_y = statistics.fmean(xs), statistics.fmean(ys)
        slope = (sum((a - mean_x) * (b - mean_y) for a, b in zip(xs, ys))
                 / sum((a - mean_x) ** 2 for a in xs))
        k = EXPONENT[variety]
        ratio = medians[BENCH_SIZES[-1]] / medians[BENCH_SIZES[0]]
        limit = RATIO_SLACK * (BENCH_SIZES[-1] / BENCH_SIZES[0]) ** k
        good = worst < 5.0 and ratio <= limit
        ok = ok and good
        details.append(f"{variety.value}: t(2000)={medians[2000] * 1e3:.1f}ms, slope {slope:.2f} "
                       f"(<= {k}), ratio {ratio:.1f} (<= {limit:.0f})")
    return ok, "; ".join(details)


CRITERIA = [
    ("1 figure fixtures", criterion_1),
    ("2 closure-operator laws", criterion_2),
    ("3 axiom suite", criterion_3),
    ("4 separation witnesses", criterion_4),
    ("5 oracle equivalence", criterion_5),
    ("6 strong fast path", criterion_6),
    ("7 perfect-move invariance", criterion_7),
    ("8 complexity smoke test", criterion_8),
]


def _report(name, fn):
    ok, detail = fn()
    print(f"{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    return ok, detail


@pytest.mark.slow
@pytest.mark.parametrize("name,fn", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, fn, capsys):
    ok, detail = _report(name, fn)
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    results = [_report(name, fn)[0] for name, fn in CRITERIA]
    sys.exit(0 if all(results) else 1)
