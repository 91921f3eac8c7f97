"""Free F-restriction semigroups: canonical forms and word problems."""

from .cayley import Bar, Edge, Graph, Plain, PointedGraph
from .closure import Rule, Variety, close, x_reduct
from .semigroup import (
    Element, decide, evaluate, lambda_element, multiply, mx, natural_leq, plus,
)
from .term import parse, render

__all__ = [
    "Bar", "Edge", "Graph", "Plain", "PointedGraph", "Rule", "Variety", "close",
    "x_reduct", "Element", "decide", "evaluate", "lambda_element", "multiply",
    "mx", "natural_leq", "plus", "parse", "render",
]
