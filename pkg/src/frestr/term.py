"""Terms in the signature (·, ⁺, m, λ) over an open alphabet of generators.

Surface syntax::

    term    := factor { "*" factor }
    factor  := atom { "^+" }
    atom    := ident | "1" | "m" "(" term ")" | "(" term ")"

``1`` spells the constant λ.  Identifiers are ``[a-z][a-z0-9_]*`` except ``m``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, TypeVar, Union

__all__ = [
    "Gen", "Lambda", "Prod", "Plus", "Max", "Term", "Word",
    "ParseError", "parse", "render", "complexity", "sigma_value",
    "enumerate_terms", "random_term", "fold", "generators",
    "is_generator_name", "MAX_ENUM_COMPLEXITY",
]

Word = tuple  # tuple[str, ...]; the empty tuple is λ

_IDENT = re.compile(r"[a-z][a-z0-9_]*")
RESERVED = frozenset({"m"})

# enumeration grows roughly 5x per complexity step
MAX_ENUM_COMPLEXITY = 8


def is_generator_name(name: str) -> bool:
    return isinstance(name, str) and _IDENT.fullmatch(name) is not None and name not in RESERVED


@dataclass(frozen=True, slots=True)
class Gen:
    name: str

    def __post_init__(self):
        if not is_generator_name(self.name):
            raise ValueError(f"invalid generator name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Lambda:
    pass


@dataclass(frozen=True, slots=True)
class Prod:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Plus:
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Max:
    arg: "Term"


Term = Union[Gen, Lambda, Prod, Plus, Max]

T = TypeVar("T")


def fold(
    t: Term,
    gen: Callable[[str], T],
    lam: Callable[[], T],
    prod: Callable[[T, T], T],
    plus: Callable[[T], T],
    mx: Callable[[T], T],
) -> T:
    """Bottom-up catamorphism over a term, without Python recursion."""
    out: list = []
    stack: list = [(t, False)]
    while stack:
        node, done = stack.pop()
        if isinstance(node, Gen):
            out.append(gen(node.name))
        elif isinstance(node, Lambda):
            out.append(lam())
        elif not done:
            stack.append((node, True))
            if isinstance(node, Prod):
                stack.append((node.right, False))
                stack.append((node.left, False))
            else:
                stack.append((node.arg, False))
        elif isinstance(node, Prod):
            r = out.pop()
            out.append(prod(out.pop(), r))
        elif isinstance(node, Plus):
            out.append(plus(out.pop()))
        else:
            out.append(mx(out.pop()))
    return out[0]


# -- parsing ----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\^\+)|(\*)|(\()|(\))|(1)|([a-z][a-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos)
        start = mt.start(mt.lastindex)
        kind = ("plus", "star", "lpar", "rpar", "one", "ident")[mt.lastindex - 1]
        tokens.append((kind, mt.group(mt.lastindex), start))
        pos = mt.end()
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: frozenset[str] | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def term(self) -> Term:
        t = self.factor()
        while self.peek()[0] == "star":
            self.i += 1
            t = Prod(t, self.factor())
        return t

    def factor(self) -> Term:
        t = self.atom()
        while self.peek()[0] == "plus":
            self.i += 1
            t = Plus(t)
        return t

    def atom(self) -> Term:
        kind, value, pos = self.peek()
        if kind == "one":
            self.i += 1
            return Lambda()
        if kind == "lpar":
            self.i += 1
            t = self.term()
            self.take("rpar")
            return t
        if kind == "ident":
            self.i += 1
            if value == "m":
                self.take("lpar")
                t = self.term()
                self.take("rpar")
                return Max(t)
            if self.alphabet is not None and value not in self.alphabet:
                raise ParseError(f"generator {value!r} not in alphabet", pos)
            return Gen(value)
        what = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str, alphabet: Iterable[str] | None = None) -> Term:
    """Parse ``text``; if ``alphabet`` is given, other identifiers are rejected."""
    p = _Parser(text, frozenset(alphabet) if alphabet is not None else None)
    t = p.term()
    p.take("eof")
    return t


# -- printing ---------------------------------------------------------------

# precedence levels: 0 product, 1 postfix/atom
def render(t: Term) -> str:
    def gen(name):
        return (name, 1)

    def lam():
        return ("1", 1)

    def prod(a, b):
        # '*' is left-associative: only a product on the right needs parens
        right = f"({b[0]})" if b[1] == 0 else b[0]
        return (f"{a[0]}*{right}", 0)

    def plus(a):
        inner = f"({a[0]})" if a[1] == 0 else a[0]
        return (f"{inner}^+", 1)

    def mx(a):
        return (f"m({a[0]})", 1)

    return fold(t, gen, lam, prod, plus, mx)[0]


# -- measures -----------------------------------------------------------------

def complexity(t: Term) -> int:
    return fold(t, lambda _: 1, lambda: 1, lambda a, b: a + b + 1,
                lambda a: a + 1, lambda a: a + 1)


def sigma_value(t: Term) -> Word:
    """Image of ``t`` in the free monoid: ⁺ goes to λ, m is the identity map."""
    return fold(t, lambda name: (name,), lambda: (), lambda a, b: a + b,
                lambda a: (), lambda a: a)


def generators(t: Term) -> frozenset[str]:
    return fold(t, lambda name: frozenset((name,)), frozenset,
                lambda a, b: a | b, lambda a: a, lambda a: a)


# -- enumeration ----------------------------------------------------------------

def _by_complexity(alphabet: list[str], c: int, memo: dict[int, list[Term]]) -> list[Term]:
    if c in memo:
        return memo[c]
    if c == 1:
        terms: list[Term] = [Gen(a) for a in alphabet] + [Lambda()]
    else:
        terms = []
        for sub in _by_complexity(alphabet, c - 1, memo):
            terms.append(Plus(sub))
            terms.append(Max(sub))
        for k in range(1, c - 1):
            for left in _by_complexity(alphabet, k, memo):
                for right in _by_complexity(alphabet, c - 1 - k, memo):
                    terms.append(Prod(left, right))
    terms.sort(key=render)
    memo[c] = terms
    return terms


def enumerate_terms(alphabet: Iterable[str], max_complexity: int,
                    cap: int = MAX_ENUM_COMPLEXITY) -> list[Term]:
    """All terms of complexity at most ``max_complexity``, ordered by complexity then text."""
    letters = sorted(set(alphabet))
    if not letters:
        raise ValueError("alphabet must be nonempty")
    for a in letters:
        if not is_generator_name(a):
            raise ValueError(f"invalid generator name {a!r}")
    if max_complexity < 1:
        raise ValueError("max_complexity must be positive")
    if max_complexity > cap:
        raise ValueError(f"max_complexity {max_complexity} exceeds cap {cap}")
    memo: dict[int, list[Term]] = {}
    out: list[Term] = []
    for c in range(1, max_complexity + 1):
        out.extend(_by_complexity(letters, c, memo))
    return out


def iter_subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Prod):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Plus, Max)):
            stack.append(node.arg)


def random_term(rng: random.Random, alphabet: Iterable[str], size: int,
                lambda_weight: float = 0.1, unary_weight: float = 0.3) -> Term:
    """A random term of complexity exactly ``size``.

    Products split the remaining size uniformly; unary nodes choose ⁺ or m
    with equal odds.  Built bottom-up from an explicit work stack so large
    sizes do not hit the recursion limit.
    """
    letters = sorted(set(alphabet))
    if size < 1:
        raise ValueError("size must be positive")
    # first pass: decide the shape top-down
    plan: list = []
    stack = [size]
    while stack:
        c = stack.pop()
        if c == 1:
            plan.append(("leaf",))
        elif c == 2 or rng.random() < unary_weight:
            plan.append(("plus",) if rng.random() < 0.5 else ("max",))
            stack.append(c - 1)
        else:
            k = rng.randint(1, c - 2)
            plan.append(("prod",))
            stack.append(c - 1 - k)
            stack.append(k)
    # second pass: build from the preorder plan in reverse
    out: list[Term] = []
    for step in reversed(plan):
        if step[0] == "leaf":
            out.append(Lambda() if rng.random() < lambda_weight else Gen(rng.choice(letters)))
        elif step[0] == "plus":
            out.append(Plus(out.pop()))
        elif step[0] == "max":
            out.append(Max(out.pop()))
        else:
            left = out.pop()
            right = out.pop()
            out.append(Prod(left, right))
    return out[0]
