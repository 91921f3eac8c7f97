"""Graph transformations T1–T4 and the closure operators built from them.

T1  an outgoing bar edge at ``v`` forces the loop ``(v, λ̄, v)``.
T2  a plain edge ``(v, x, vx)`` forces its bar twin ``(v, x̄, vx)``.
T3  consecutive bar edges ``(w, ū, wu), (wu, v̄, wuv)`` force ``(w, \\overline{uv}, wuv)``.
T4  bar edges ``(w, ū, wu), (w, \\overline{uv}, wuv)`` force ``(wu, v̄, wuv)``.

In T3 both ``u`` and ``v`` are nonempty.  In T4 ``u`` is nonempty but ``v``
may be empty, so every target of a non-loop bar edge gets a λ̄ loop; without
that case the strong law fails whenever σ(t) = λ.  T1–T3 generate the closure
for FFR, T1–T4 the closure for FFR_S.  FFR_P has no closure; its canonical
datum is the X-reduct.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict

from .cayley import Bar, Edge, Graph, Plain, is_accessible

__all__ = [
    "Rule", "Variety", "RULES", "applicable_edges", "close", "is_closed",
    "x_reduct", "ClosureError",
]


class Rule(enum.Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4 = "T4"


class Variety(enum.Enum):
    FFR = "ffr"
    FFR_S = "ffrs"
    FFR_P = "ffrp"

    @classmethod
    def parse(cls, text: str) -> "Variety":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown variety {text!r}; expected ffr, ffrs or ffrp") from None


RULES = {
    Variety.FFR: frozenset({Rule.T1, Rule.T2, Rule.T3}),
    Variety.FFR_S: frozenset({Rule.T1, Rule.T2, Rule.T3, Rule.T4}),
}


class ClosureError(ValueError):
    pass


def _bar(u, v) -> Edge:
    return Edge(u, Bar(v[len(u):]))


def applicable_edges(g: Graph, rules) -> set[Edge]:
    """Every edge that a single application of one of ``rules`` would add."""
    rules = frozenset(rules)
    bar_out = defaultdict(set)
    for e in g.edges:
        if e.is_bar:
            bar_out[e.source].add(e.target)
    found: set[Edge] = set()
    if Rule.T1 in rules:
        for v, targets in bar_out.items():
            if v not in targets:
                found.add(_bar(v, v))
    if Rule.T2 in rules:
        for e in g.edges:
            if not e.is_bar and e.target not in bar_out[e.source]:
                found.add(_bar(e.source, e.target))
    if Rule.T3 in rules:
        for w, mids in bar_out.items():
            for m in mids:
                if m == w:
                    continue
                for t in bar_out.get(m, ()):
                    if t != m and t not in bar_out[w]:
                        found.add(_bar(w, t))
    if Rule.T4 in rules:
        for w, targets in bar_out.items():
            for a in targets:
                if a == w:
                    continue
                for b in targets:
                    if len(b) >= len(a) and b[:len(a)] == a and b not in bar_out.get(a, ()):
                        found.add(_bar(a, b))
    return found


def is_closed(g: Graph, variety: Variety) -> bool:
    if variety not in RULES:
        raise ClosureError(f"{variety.name} has no closure operator")
    return not applicable_edges(g, RULES[variety])


def close(g: Graph, variety: Variety, rng: random.Random | None = None) -> Graph:
    """Least graph containing ``g`` that no rule of ``variety`` can extend.

    Worklist over edges: popping an edge re-checks only the patterns that edge
    can take part in.  With ``rng`` the pops happen in random order, which is
    how order independence of the fixpoint is exercised.
    """
    if variety not in RULES:
        raise ClosureError(f"{variety.name} has no closure operator")
    if not g.edges:
        raise ClosureError("cannot close an edgeless graph")
    if not is_accessible(g):
        raise ClosureError("cannot close an inaccessible graph")
    strong = variety is Variety.FFR_S

    bar_out: dict = defaultdict(set)
    bar_in: dict = defaultdict(set)
    added: set[Edge] = set()
    work: list = []

    def add_bar(u, v):
        if v in bar_out[u]:
            return
        bar_out[u].add(v)
        bar_in[v].add(u)
        e = _bar(u, v)
        if e not in g.edges:
            added.add(e)
        work.append(("bar", u, v))

    for e in g.edges:
        if e.is_bar:
            bar_out[e.source].add(e.target)
            bar_in[e.target].add(e.source)
    for e in g.edges:
        work.append(("bar" if e.is_bar else "plain", e.source, e.target))

    while work:
        if rng is not None:
            i = rng.randrange(len(work))
            work[i], work[-1] = work[-1], work[i]
        kind, a, b = work.pop()
        if kind == "plain":
            add_bar(a, b)  # T2
            continue
        add_bar(a, a)  # T1
        if a == b:
            continue
        # T3 with (a, b) as the first or the second step of the path
        for c in list(bar_out[b]):
            if c != b:
                add_bar(a, c)
        for z in list(bar_in[a]):
            if z != a:
                add_bar(z, b)
        if strong:
            # T4 with (a, b) as the shorter edge (w, wu) or the longer (w, wuv);
            # the empty-v case is the loop at b
            add_bar(b, b)
            n = len(b)
            for c in list(bar_out[a]):
                if len(c) > n and c[:n] == b:
                    add_bar(b, c)
                elif a != c and len(c) < n and b[:len(c)] == c:
                    add_bar(c, b)
    if not added:
        return g
    return Graph(g.vertices, g.edges | added)


def x_reduct(g: Graph) -> Graph:
    """Subgraph spanned by the plain edges; drops every other vertex."""
    return Graph.from_edges(e for e in g.edges if isinstance(e.label, Plain))
