"""Brute-force checks that do not go through the canonical forms.

Two Gould values are congruent iff a chain of single relation applications
joins them.  At graph level each application adds or removes one bar edge,
so a bounded breadth-first search over such edits semi-decides equality
independently of the closure operators.  The axiom fuzzer evaluates random
terms and checks the defining laws of each variety on the results.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable

from .cayley import Bar, Edge, Graph, PointedGraph, is_accessible, word_text
from .closure import Variety, close
from .semigroup import (
    Element, decide, eval_raw, evaluate, lambda_element, multiply, mx, natural_leq,
    plus, to_extended,
)
from .term import Term, Word, enumerate_terms, parse, random_term, render

__all__ = [
    "RelationSet", "relations", "neighbors", "Equal", "NotEqualWithinBound",
    "PointsDiffer", "SearchVerdict", "bfs_ball", "bfs_equal", "default_bound",
    "raw_value", "check_axioms", "AxiomReport", "CorpusReport", "check_corpus",
    "MAX_BOUND", "STATE_BUDGET", "BudgetExceeded",
]

MAX_BOUND = 64
STATE_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RelationSet:
    """Which single-edge edits count as one relation application.

    ``alphabet`` and ``vertex_pool`` only matter for FFR_P, where a bar edge
    ``(v, x̄, vx)`` may be attached at any vertex: the alphabet says which
    ``x`` to try and the pool, when set, bounds the new endpoints ``vx``.
    """

    variety: Variety
    alphabet: frozenset = frozenset()
    vertex_pool: frozenset | None = None


def relations(variety: Variety, alphabet: Iterable[str] = (),
              vertex_pool: Iterable[Word] | None = None) -> RelationSet:
    pool = frozenset(vertex_pool) if vertex_pool is not None else None
    return RelationSet(variety, frozenset(alphabet), pool)


def raw_value(t: Term, variety: Variety) -> PointedGraph:
    return eval_raw(to_extended(t, variety), variety)


# -- moves ----------------------------------------------------------------

class _Index:
    def __init__(self, g: Graph):
        self.plain = set()
        self.out = defaultdict(set)  # non-loop bar targets
        self.inc = defaultdict(set)  # non-loop bar sources
        self.loops = set()
        for e in g.edges:
            if not e.is_bar:
                self.plain.add((e.source, e.target))
            elif e.source == e.target:
                self.loops.add(e.source)
            else:
                self.out[e.source].add(e.target)
                self.inc[e.target].add(e.source)

    def has_bar(self, a, b) -> bool:
        return a in self.loops if a == b else b in self.out[a]


def _forced(ix: _Index, a: Word, b: Word, strong: bool) -> bool:
    """Would some relation of the set re-create the bar edge (a, b) in ``ix``?"""
    if a == b:
        # loop next to a nonempty outgoing bar edge, or (strong) an incoming one
        return bool(ix.out[a]) or (strong and bool(ix.inc[a]))
    if len(b) == len(a) + 1 and (a, b) in ix.plain:
        return True  # bar twin of a plain edge
    if any(b in ix.out[m] for m in ix.out[a]):
        return True  # composite of two consecutive bar edges
    if strong:
        # (a, b) = (wu, wuv) with (w, wu) and (w, wuv) present
        if any(b in ix.out[w] for w in ix.inc[a]):
            return True
    return False


def _bar_edge(a: Word, b: Word) -> Edge:
    return Edge(a, Bar(b[len(a):]))


def _closure_moves(p: PointedGraph, strong: bool) -> set[PointedGraph]:
    g = p.graph
    ix = _Index(g)
    out: set[PointedGraph] = set()
    candidates = set()
    for v in g.vertices:
        if v not in ix.loops:
            candidates.add((v, v))
    for a, b in ix.plain:
        candidates.add((a, b))
    for w in list(ix.out):
        for m in list(ix.out[w]):
            for t in list(ix.out[m]):
                candidates.add((w, t))
            if strong:
                for t in list(ix.out[w]):
                    if len(t) > len(m) and t[:len(m)] == m:
                        candidates.add((m, t))
    for a, b in candidates:
        if not ix.has_bar(a, b) and _forced(ix, a, b, strong):
            out.add(PointedGraph(Graph(g.vertices, g.edges | {_bar_edge(a, b)}), p.point))
    for e in g.edges:
        if not e.is_bar:
            continue
        rest = g.edges - {e}
        if not rest:
            continue
        smaller = Graph(g.vertices, rest)
        if _forced(_Index(smaller), e.source, e.target, strong) and is_accessible(smaller):
            out.add(PointedGraph(smaller, p.point))
    return out


def _perfect_moves(p: PointedGraph, rels: RelationSet) -> set[PointedGraph]:
    g = p.graph
    out: set[PointedGraph] = set()
    for v in g.vertices:
        for x in rels.alphabet:
            e = Edge(v, Bar((x,)))
            if e in g.edges:
                continue
            if rels.vertex_pool is not None and e.target not in rels.vertex_pool:
                continue
            out.add(PointedGraph(Graph(g.vertices | {e.target}, g.edges | {e}), p.point))
    for e in g.edges:
        if not e.is_bar:
            continue
        rest = g.edges - {e}
        vertices = g.vertices
        t = e.target
        if t != () and t != p.point and not any(t in (f.source, f.target) for f in rest):
            vertices = vertices - {t}
        smaller = Graph(vertices, rest)
        if is_accessible(smaller):
            out.add(PointedGraph(smaller, p.point))
    return out


def neighbors(p: PointedGraph, rels: RelationSet) -> set[PointedGraph]:
    """Pointed graphs one relation application (either direction) away from ``p``."""
    if rels.variety is Variety.FFR_P:
        return _perfect_moves(p, rels)
    return _closure_moves(p, rels.variety is Variety.FFR_S)


# -- search -----------------------------------------------------------------

@dataclass(frozen=True)
class Equal:
    steps: int


@dataclass(frozen=True)
class NotEqualWithinBound:
    bound: int


@dataclass(frozen=True)
class PointsDiffer:
    pass


SearchVerdict = Equal | NotEqualWithinBound | PointsDiffer


def bfs_ball(start: PointedGraph, rels: RelationSet, radius: int,
             budget: int = STATE_BUDGET, goal: Graph | None = None) -> dict[Graph, int]:
    """Distances to every graph within ``radius`` moves of ``start``.

    Stops early once ``goal`` is reached.
    """
    dist = {start.graph: 0}
    frontier = deque([start])
    while frontier:
        p = frontier.popleft()
        d = dist[p.graph]
        if d >= radius:
            continue
        for q in neighbors(p, rels):
            if q.graph in dist:
                continue
            dist[q.graph] = d + 1
            if len(dist) > budget:
                raise BudgetExceeded(f"more than {budget} states within radius {radius}")
            if goal is not None and q.graph == goal:
                return dist
            frontier.append(q)
    return dist


def default_bound(u: PointedGraph, v: PointedGraph, variety: Variety) -> int:
    """Edges of both closures plus slack; edges of both raw graphs for FFR_P."""
    if variety is Variety.FFR_P:
        return len(u.graph.edges) + len(v.graph.edges) + 4
    return len(close(u.graph, variety).edges) + len(close(v.graph, variety).edges) + 4


def bfs_equal(u: PointedGraph, v: PointedGraph, rels: RelationSet,
              bound: int | None = None, cap: int = MAX_BOUND,
              budget: int = STATE_BUDGET) -> SearchVerdict:
    if u.point != v.point:
        return PointsDiffer()
    if bound is None:
        bound = default_bound(u, v, rels.variety)
    if bound > cap:
        raise ValueError(f"bound {bound} exceeds cap {cap}")
    if u.graph == v.graph:
        return Equal(0)
    if rels.variety is Variety.FFR_P:
        alphabet = rels.alphabet or frozenset(
            a for e in u.graph.edges | v.graph.edges for a in e.label.word)
        pool = rels.vertex_pool
        if pool is None:
            pool = u.graph.vertices | v.graph.vertices
        rels = RelationSet(rels.variety, alphabet, pool)
    dist = bfs_ball(u, rels, bound, budget, goal=v.graph)
    if v.graph in dist:
        return Equal(dist[v.graph])
    return NotEqualWithinBound(bound)


# -- corpus comparison ------------------------------------------------------------

@dataclass
class CorpusReport:
    variety: Variety
    pairs: int = 0
    equal: int = 0
    points_differ: int = 0
    disagreements: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def summary(self) -> dict:
        return {"variety": self.variety.value, "pairs": self.pairs, "equal": self.equal,
                "points_differ": self.points_differ,
                "disagreements": [list(d) for d in self.disagreements]}


def _alphabet_of(terms) -> frozenset:
    from .term import generators
    letters = set()
    for t in terms:
        letters |= generators(t)
    return frozenset(letters)


def check_corpus(terms: list[Term], variety: Variety, pairs: Iterable[tuple[int, int]] | None = None,
                 strong_fast_path: bool = False) -> CorpusReport:
    """Compare :func:`decide` against the relation search on term pairs.

    Without ``pairs`` every unordered pair of ``terms`` is checked.  One ball
    per term (radius = largest calibrated bound in its point class) serves
    all its partners; a pair is Equal iff the partner's raw graph lies in the
    ball within the pair's own bound.
    """
    report = CorpusReport(variety)
    alphabet = _alphabet_of(terms)
    raws = [raw_value(t, variety) for t in terms]
    closed_size = []
    for r in raws:
        if variety is Variety.FFR_P:
            closed_size.append(len(r.graph.edges))
        else:
            closed_size.append(len(close(r.graph, variety).edges))

    def bound(i, j):
        return closed_size[i] + closed_size[j] + 4

    by_point = defaultdict(list)
    for i, r in enumerate(raws):
        by_point[r.point].append(i)

    if pairs is None:
        todo = [(i, j) for i in range(len(terms)) for j in range(i + 1, len(terms))]
    else:
        todo = list(pairs)
    partners = defaultdict(list)
    for i, j in todo:
        partners[i].append(j)

    pools = {}
    for point, members in by_point.items():
        pool = set()
        for i in members:
            pool |= raws[i].graph.vertices
        pools[point] = frozenset(pool)

    for i, js in partners.items():
        same = [j for j in js if raws[j].point == raws[i].point]
        ball = None
        if same:
            radius = max(bound(i, j) for j in same)
            if radius > MAX_BOUND:
                raise ValueError(f"bound {radius} exceeds cap {MAX_BOUND}")
            rels = RelationSet(variety, alphabet, pools[raws[i].point]
                               if variety is Variety.FFR_P else None)
            ball = bfs_ball(raws[i], rels, radius)
        for j in js:
            report.pairs += 1
            if raws[i].point != raws[j].point:
                oracle_equal = False
                report.points_differ += 1
            else:
                d = ball.get(raws[j].graph)
                oracle_equal = d is not None and d <= bound(i, j)
            verdict = decide(terms[i], terms[j], variety)
            if strong_fast_path and variety is Variety.FFR_S:
                if decide(terms[i], terms[j], variety, method="reduced") != verdict:
                    report.disagreements.append(("fast-path", render(terms[i]), render(terms[j])))
            if verdict != oracle_equal:
                report.disagreements.append(("oracle", render(terms[i]), render(terms[j])))
            report.equal += verdict
    return report


def sample_pairs(terms: list[Term], variety: Variety, count: int, seed: int) -> list[tuple[int, int]]:
    """Half the pairs share a σ-value, half are uniform; no pair repeats."""
    rng = random.Random(seed)
    from .term import sigma_value
    by_point = defaultdict(list)
    for i, t in enumerate(terms):
        by_point[sigma_value(t)].append(i)
    classes = [m for m in by_point.values() if len(m) > 1]
    seen = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        if classes and len(out) % 2 == 0:
            members = rng.choice(classes)
            i, j = rng.sample(members, 2)
        else:
            i, j = rng.sample(range(len(terms)), 2)
        key = (min(i, j), max(i, j))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


# -- axiom fuzzing ------------------------------------------------------------------

_LAWS_ALL = (
    "associativity", "plus_left_unit", "plus_commute", "plus_of_plus_product",
    "right_plus_twist", "derived_plus_absorb", "lemma_plus_split",
    "f_decompose", "f_max_projection_invariant", "max_above", "left_identity",
    "left_ample",
)
_LAWS_BY_VARIETY = {
    Variety.FFR: _LAWS_ALL,
    Variety.FFR_S: _LAWS_ALL + ("strong",),
    Variety.FFR_P: _LAWS_ALL + ("strong", "perfect_product", "perfect_plus", "right_identity"),
}
OPTIONAL_LAWS = ("strong", "perfect_product", "perfect_plus", "right_identity")


@dataclass
class AxiomReport:
    variety: Variety
    seed: int
    samples: int
    max_complexity: int
    checked: dict = field(default_factory=lambda: defaultdict(int))
    violations: dict = field(default_factory=lambda: defaultdict(int))
    counterexamples: list = field(default_factory=list)
    expected: tuple = ()
    premise_hits: int = 0

    @property
    def ok(self) -> bool:
        return all(self.violations[law] == 0 for law in self.expected)

    def lines(self) -> list[str]:
        out = []
        for law in sorted(self.checked):
            status = "holds" if self.violations[law] == 0 else f"{self.violations[law]} violations"
            tag = "" if law in self.expected else " (not a law here)"
            out.append(f"{self.variety.value} {law}: {self.checked[law]} checked, {status}{tag}")
        out.append(f"{self.variety.value} left_ample premise satisfied {self.premise_hits} times")
        return out

    def summary(self) -> dict:
        return {
            "variety": self.variety.value, "seed": self.seed, "samples": self.samples,
            "max_complexity": self.max_complexity, "ok": self.ok,
            "checked": dict(sorted(self.checked.items())),
            "violations": {k: v for k, v in sorted(self.violations.items()) if v},
            "expected": list(self.expected),
            "counterexamples": self.counterexamples[:50],
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def check_axioms(variety: Variety, sample_size: int, max_complexity: int, seed: int,
                 extra_laws: Iterable[str] = (), alphabet: Iterable[str] = ("x", "y")) -> AxiomReport:
    """Evaluate random term triples and test every law of ``variety`` on them.

    ``extra_laws`` adds laws that are not expected to hold (e.g. ``"strong"``
    in FFR); their violations are reported but do not fail the report.
    """
    laws = tuple(_LAWS_BY_VARIETY[variety])
    extras = tuple(law for law in extra_laws if law not in laws)
    for law in extras:
        if law not in OPTIONAL_LAWS:
            raise ValueError(f"unknown law {law!r}")
    report = AxiomReport(variety, seed, sample_size, max_complexity, expected=laws)
    active = set(laws) | set(extras)
    letters = sorted(set(alphabet))
    rng = random.Random(seed)
    lam = lambda_element(variety)

    def record(law, ok, terms):
        report.checked[law] += 1
        if not ok:
            report.violations[law] += 1
            if len(report.counterexamples) < 200:
                report.counterexamples.append(
                    {"law": law, "terms": [render(t) for t in terms], "seed": seed})

    if "strong" in active:
        # the canonical witness pair m(x)m(y) vs (m(x))⁺m(xy)
        x, y = letters[0], letters[-1] if len(letters) > 1 else letters[0]
        lhs = parse(f"m({x})*m({y})")
        rhs = parse(f"(m({x}))^+*m({x}*{y})")
        record("strong", evaluate(lhs, variety) == evaluate(rhs, variety), (lhs, rhs))

    for _ in range(sample_size):
        ts = [random_term(rng, letters, rng.randint(1, max_complexity)) for _ in range(3)]
        a, b, c = (evaluate(t, variety) for t in ts)
        ab = a * b
        pa, pb, pc = plus(a), plus(b), plus(c)
        record("associativity", ab * c == a * (b * c), ts)
        record("plus_left_unit", pa * a == a, ts[:1])
        record("plus_commute", pa * pb == pb * pa, ts[:2])
        record("plus_of_plus_product", plus(pa * b) == pa * pb, ts[:2])
        record("right_plus_twist", a * pb == plus(ab) * a, ts[:2])
        record("derived_plus_absorb", plus(ab) == plus(a * pb), ts[:2])
        record("lemma_plus_split", plus(a * pc * b) == plus(a * c) * plus(ab), ts)
        ma = mx(a)
        record("f_decompose", a == pa * ma, ts[:1])
        record("f_max_projection_invariant", ma == mx(pb * a), ts[:2])
        record("max_above", natural_leq(a, ma), ts[:1])
        record("left_identity", lam * a == a, ts[:1])
        # left ample: random b, plus a b forced to satisfy the premise
        for other in (b, plus(a * c) * a, pb * a):
            ac, oc = a * c, other * c
            if ac == oc:
                report.premise_hits += 1
                record("left_ample", a * pc == other * pc, ts)
        if "strong" in active:
            mb = mx(b)
            record("strong", ma * mb == plus(ma) * mx(ab), ts[:2])
        if "perfect_product" in active:
            record("perfect_product", ma * mx(b) == mx(ab), ts[:2])
        if "perfect_plus" in active:
            record("perfect_plus", plus(ma) == lam, ts[:1])
        if "right_identity" in active:
            record("right_identity", a * lam == a, ts[:1])
    return report
