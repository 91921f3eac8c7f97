"""Canonical elements of FFR(X), FFR_S(X) and FFR_P(X) and their word problems.

An element is a pair (graph, point).  For FFR and FFR_S the graph is an
accessible subgraph of Cay(X*, X ∪ X̄*) closed under the variety's rules; for
FFR_P it is the X-reduct of a Gould value, a possibly empty and possibly
disconnected graph with plain edges only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import engine
from .cayley import (
    Bar, EMPTY_GRAPH, Graph, Plain, PointedGraph, gamma_bar, gamma_plain,
    gould_identity, gould_multiply, gould_plus, translate, union,
)
from .closure import Variety, close, x_reduct
from .term import Gen, Lambda, Max, Plus, Prod, Term, Word, fold, sigma_value

__all__ = [
    "ExtGen", "ExtLambda", "ExtProd", "ExtPlus", "ExtTerm",
    "Element", "VarietyMismatch",
    "to_extended", "eval_raw", "evaluate", "multiply", "plus", "mx",
    "lambda_element", "natural_leq", "sigma_related", "is_projection", "decide",
]


@dataclass(frozen=True, slots=True)
class ExtGen:
    label: Plain | Bar


@dataclass(frozen=True, slots=True)
class ExtLambda:
    """The monoid identity; only meaningful for FFR_P."""


@dataclass(frozen=True, slots=True)
class ExtProd:
    left: "ExtTerm"
    right: "ExtTerm"


@dataclass(frozen=True, slots=True)
class ExtPlus:
    arg: "ExtTerm"


ExtTerm = Union[ExtGen, ExtLambda, ExtProd, ExtPlus]


class VarietyMismatch(ValueError):
    pass


def _bar_chain(w: Word) -> ExtTerm:
    if not w:
        return ExtLambda()
    out: ExtTerm = ExtGen(Bar((w[0],)))
    for a in w[1:]:
        out = ExtProd(out, ExtGen(Bar((a,))))
    return out


def to_extended(t: Term, variety: Variety) -> ExtTerm:
    """Rewrite ``t`` over X ∪ X̄* (or X ∪ X̄) so that m no longer occurs.

    ``m(v)`` depends on ``v`` only through its σ-value, so the whole subterm
    collapses to one bar generator, or for FFR_P to a product of
    single-letter bars.
    """
    perfect = variety is Variety.FFR_P

    def gen(name):
        return (ExtGen(Plain(name)), (name,))

    def lam():
        return (ExtLambda() if perfect else ExtGen(Bar(())), ())

    def prod(a, b):
        return (ExtProd(a[0], b[0]), a[1] + b[1])

    def plus_(a):
        return (ExtPlus(a[0]), ())

    def mx_(a):
        return (_bar_chain(a[1]) if perfect else ExtGen(Bar(a[1])), a[1])

    return fold(t, gen, lam, prod, plus_, mx_)[0]


def eval_raw(e: ExtTerm, variety: Variety) -> PointedGraph:
    """Value of an extended term in the Gould expansion."""
    perfect = variety is Variety.FFR_P
    out: list[PointedGraph] = []
    stack: list = [(e, False)]
    while stack:
        node, done = stack.pop()
        if isinstance(node, ExtGen):
            if isinstance(node.label, Plain):
                out.append(gamma_plain(node.label.x))
            else:
                out.append(gamma_bar(node.label.w))
        elif isinstance(node, ExtLambda):
            if not perfect:
                raise ValueError("the empty extended term has no value outside FFR_P")
            out.append(gould_identity())
        elif not done:
            stack.append((node, True))
            if isinstance(node, ExtProd):
                stack.append((node.right, False))
                stack.append((node.left, False))
            else:
                stack.append((node.arg, False))
        elif isinstance(node, ExtProd):
            r = out.pop()
            out.append(gould_multiply(out.pop(), r))
        else:
            out.append(gould_plus(out.pop()))
    return out[0]


@dataclass(frozen=True)
class Element:
    variety: Variety
    graph: Graph
    point: Word

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def key(self) -> tuple:
        return (self.variety.value, self.point, self.graph.key())


def _canonicalize(g: Graph, variety: Variety) -> Graph:
    if variety is Variety.FFR_P:
        return x_reduct(g)
    return close(g, variety)


def evaluate(t: Term, variety: Variety) -> Element:
    raw = eval_raw(to_extended(t, variety), variety)
    point = sigma_value(t)
    if raw.point != point:
        raise AssertionError("Gould point disagrees with the σ-value")
    return Element(variety, _canonicalize(raw.graph, variety), point)


def _check(a: Element, b: Element) -> None:
    if a.variety is not b.variety:
        raise VarietyMismatch(f"{a.variety.name} vs {b.variety.name}")


def multiply(a: Element, b: Element) -> Element:
    _check(a, b)
    g = union(a.graph, translate(a.point, b.graph))
    if a.variety is not Variety.FFR_P:
        g = close(g, a.variety)
    return Element(a.variety, g, a.point + b.point)


def plus(a: Element) -> Element:
    return Element(a.variety, a.graph, ())


def mx(a: Element) -> Element:
    if a.variety is Variety.FFR_P:
        return Element(a.variety, EMPTY_GRAPH, a.point)
    return Element(a.variety, close(gamma_bar(a.point).graph, a.variety), a.point)


def lambda_element(variety: Variety) -> Element:
    if variety is Variety.FFR_P:
        return Element(variety, EMPTY_GRAPH, ())
    return Element(variety, gamma_bar(()).graph, ())


def natural_leq(a: Element, b: Element) -> bool:
    _check(a, b)
    return a.point == b.point and a.graph >= b.graph


def sigma_related(a: Element, b: Element) -> bool:
    _check(a, b)
    return a.point == b.point


def is_projection(a: Element) -> bool:
    return a.point == ()


def decide(u: Term, v: Term, variety: Variety, method: str = "full") -> bool:
    """Do ``u`` and ``v`` denote the same element of the free object?

    Both terms are evaluated into one prefix trie and compared by canonical
    form.  ``method="reduced"`` (FFR_S only) compares just vertices, plain
    edges and λ̄ loops, which determine a strongly closed graph.
    """
    trie = engine.Trie()
    ru = engine.evaluate(u, variety, trie)
    rv = engine.evaluate(v, variety, trie)
    if ru.point != rv.point:
        return False
    if method == "reduced":
        if variety is not Variety.FFR_S:
            raise ValueError("the reduced comparison applies to FFR_S only")
        return engine.strong_signature(ru) == engine.strong_signature(rv)
    if method != "full":
        raise ValueError(f"unknown method {method!r}")
    if variety is not Variety.FFR_P and ru.vertices != rv.vertices:
        return False
    return engine.canonical_form(ru, variety) == engine.canonical_form(rv, variety)
