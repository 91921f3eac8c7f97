"""Finite subgraphs of the Cayley graph of X* over the labels X ∪ X̄*.

A plain label is a single generator ``x``; a bar label carries a whole word
``w`` (``Bar(())`` is λ̄).  An edge is determined by its source and label, the
target being ``source + label.word``.  Pointed graphs carry the Gould
expansion operations ``(A,s)(B,t) = (A ∪ sB, st)`` and ``(A,s)⁺ = (A,λ)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .term import Word, is_generator_name

__all__ = [
    "Plain", "Bar", "EdgeLabel", "Edge", "Graph", "PointedGraph",
    "residual", "union", "translate", "is_accessible",
    "gamma_plain", "gamma_bar", "gould_multiply", "gould_plus", "gould_identity",
    "word_text", "label_text", "parse_word", "EMPTY_GRAPH",
]


def residual(u: Word, v: Word) -> Word:
    """The word ``w`` with ``v == u + w``."""
    if v[:len(u)] != u:
        raise ValueError(f"{word_text(u)!r} is not a prefix of {word_text(v)!r}")
    return v[len(u):]


def word_text(w: Word) -> str:
    """Letters concatenated, or dot-separated once any letter is longer than one char."""
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return ".".join(w)


def parse_word(text: str) -> Word:
    if "." in text:
        letters = tuple(text.split("."))
    else:
        letters = tuple(text)
    for a in letters:
        if not is_generator_name(a):
            raise ValueError(f"invalid letter {a!r} in word {text!r}")
    return letters


@dataclass(frozen=True, slots=True)
class Plain:
    x: str

    @property
    def word(self) -> Word:
        return (self.x,)

    def sort_key(self):
        return (0, (self.x,))


@dataclass(frozen=True, slots=True)
class Bar:
    w: Word = ()

    def __post_init__(self):
        if not isinstance(self.w, tuple):
            object.__setattr__(self, "w", tuple(self.w))

    @property
    def word(self) -> Word:
        return self.w

    def sort_key(self):
        return (1, self.w)


EdgeLabel = Plain | Bar


def label_text(label: EdgeLabel) -> str:
    if isinstance(label, Plain):
        return label.x
    return "~" + word_text(label.w)


@dataclass(frozen=True, slots=True)
class Edge:
    source: Word
    label: EdgeLabel
    target: Word = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "target", self.source + self.label.word)

    @property
    def is_bar(self) -> bool:
        return isinstance(self.label, Bar)

    def sort_key(self):
        return (self.source, self.label.sort_key())

    def __repr__(self):
        return f"Edge({word_text(self.source) or 'λ'} -{label_text(self.label)}-> {word_text(self.target) or 'λ'})"


@dataclass(frozen=True)
class Graph:
    vertices: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.vertices, frozenset):
            object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            if e.source not in self.vertices or e.target not in self.vertices:
                raise ValueError(f"{e!r} has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], extra_vertices: Iterable[Word] = ()) -> "Graph":
        edges = frozenset(edges)
        vertices = set(extra_vertices)
        for e in edges:
            vertices.add(e.source)
            vertices.add(e.target)
        return cls(frozenset(vertices), edges)

    def __le__(self, other: "Graph") -> bool:
        return self.vertices <= other.vertices and self.edges <= other.edges

    def __ge__(self, other: "Graph") -> bool:
        return other <= self

    def __or__(self, other: "Graph") -> "Graph":
        return union(self, other)

    def sorted_vertices(self) -> list[Word]:
        return sorted(self.vertices, key=lambda w: (len(w), w))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=Edge.sort_key)

    def key(self) -> tuple:
        """Canonical serialization; equal graphs have equal keys."""
        return (tuple(self.sorted_vertices()),
                tuple((e.source, e.label.sort_key()) for e in self.sorted_edges()))

    def plain_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if not e.is_bar)

    def bar_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if e.is_bar)

    def __repr__(self):
        vs = ", ".join(word_text(v) or "λ" for v in self.sorted_vertices())
        es = ", ".join(repr(e)[5:-1] for e in self.sorted_edges())
        return f"Graph(V={{{vs}}}, E={{{es}}})"


EMPTY_GRAPH = Graph()


@dataclass(frozen=True)
class PointedGraph:
    graph: Graph
    point: Word

    def __post_init__(self):
        if self.point not in self.graph.vertices:
            raise ValueError(f"point {word_text(self.point)!r} is not a vertex")


def union(g: Graph, h: Graph) -> Graph:
    return Graph(g.vertices | h.vertices, g.edges | h.edges)


def translate(s: Word, g: Graph) -> Graph:
    if not s:
        return g
    return Graph(frozenset(s + v for v in g.vertices),
                 frozenset(Edge(s + e.source, e.label) for e in g.edges))


def is_accessible(g: Graph) -> bool:
    if () not in g.vertices:
        return False
    out: dict = {}
    for e in g.edges:
        out.setdefault(e.source, []).append(e.target)
    seen = {()}
    queue = deque([()])
    while queue:
        v = queue.popleft()
        for w in out.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(g.vertices)


def gamma_plain(x: str) -> PointedGraph:
    e = Edge((), Plain(x))
    return PointedGraph(Graph(frozenset({(), e.target}), frozenset({e})), e.target)


def gamma_bar(w: Word) -> PointedGraph:
    e = Edge((), Bar(tuple(w)))
    return PointedGraph(Graph(frozenset({(), e.target}), frozenset({e})), e.target)


def gould_identity() -> PointedGraph:
    """``(Γ_λ, λ)``: the identity of the Gould monoid, absent from the semigroup."""
    return PointedGraph(Graph(frozenset({()})), ())


def gould_multiply(a: PointedGraph, b: PointedGraph) -> PointedGraph:
    return PointedGraph(union(a.graph, translate(a.point, b.graph)), a.point + b.point)


def gould_plus(a: PointedGraph) -> PointedGraph:
    return PointedGraph(a.graph, ())
