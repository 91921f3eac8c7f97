"""Linear-time evaluation of terms into a shared prefix trie, plus bitset closures.

This is the fast path behind :func:`frestr.semigroup.decide`.  Vertices are
trie node ids, so two terms evaluated into one :class:`Trie` can be compared by
id.  An edge is fully determined by its endpoints and its kind (plain or bar),
because the label is the residual word between them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import Bar, Edge, Graph, Plain
from .closure import Variety
from .term import Gen, Lambda, Max, Plus, Prod, Term, Word

__all__ = ["Trie", "RawGraph", "evaluate", "CanonicalForm", "canonical_form", "strong_signature"]


class Trie:
    """Prefix tree of X*; node 0 is the empty word."""

    def __init__(self):
        self.parent = [-1]
        self.letter = [""]
        self.depth = [0]
        self.children: list[dict[str, int]] = [{}]
        self._words: dict[int, Word] = {0: ()}

    def child(self, node: int, letter: str) -> int:
        kids = self.children[node]
        nxt = kids.get(letter)
        if nxt is None:
            nxt = len(self.parent)
            kids[letter] = nxt
            self.parent.append(node)
            self.letter.append(letter)
            self.depth.append(self.depth[node] + 1)
            self.children.append({})
        return nxt

    def walk(self, node: int, word: Word) -> int:
        for a in word:
            node = self.child(node, a)
        return node

    def word(self, node: int) -> Word:
        w = self._words.get(node)
        if w is None:
            letters = []
            n = node
            while n not in self._words:
                letters.append(self.letter[n])
                n = self.parent[n]
            w = self._words[n] + tuple(reversed(letters))
            self._words[node] = w
        return w

    def path(self, start: int, end: int) -> list[int]:
        """Nodes from ``start`` to ``end`` inclusive; ``start`` must be an ancestor."""
        nodes = [end]
        while nodes[-1] != start:
            p = self.parent[nodes[-1]]
            if p < 0:
                raise ValueError("start is not an ancestor of end")
            nodes.append(p)
        nodes.reverse()
        return nodes


@dataclass
class RawGraph:
    """Value of an extended term in the Gould expansion, over trie ids."""

    trie: Trie
    vertices: set
    plain: set  # (src, dst)
    bar: set  # (src, dst); src == dst for λ̄ loops
    point: int

    def to_graph(self) -> Graph:
        w = self.trie.word
        edges = [Edge(w(a), Plain(self.trie.letter[b])) for a, b in self.plain]
        edges += [Edge(w(a), Bar(w(b)[len(w(a)):])) for a, b in self.bar]
        return Graph(frozenset(w(v) for v in self.vertices), frozenset(edges))


def evaluate(t: Term, variety: Variety, trie: Trie | None = None) -> RawGraph:
    """Raw Gould value of ``t``'s extended term, built in one left-to-right pass.

    A register holds the current vertex; products advance it and ⁺ restores
    it.  ``m(v)`` only needs the endpoint of σ(v), obtained by a silent walk
    that creates trie nodes but no edges.  FFR and FFR_S read ``m(v)`` as one
    bar edge and λ as a λ̄ loop; FFR_P reads ``m(v)`` as a chain of
    single-letter bar edges and λ as the identity.
    """
    trie = trie if trie is not None else Trie()
    perfect = variety is Variety.FFR_P
    vertices = {0}
    plain: set = set()
    bar: set = set()
    pos = 0
    # frames: ("eval", term) | ("silent", term) | ("restore", node) | ("max", node)
    stack: list = [("eval", t)]
    while stack:
        op, x = stack.pop()
        if op == "restore":
            pos = x
        elif op == "max":
            start, end = x, pos
            if perfect:
                nodes = trie.path(start, end)
                for a, b in zip(nodes, nodes[1:]):
                    bar.add((a, b))
                    vertices.add(b)
            else:
                bar.add((start, end))
                vertices.add(end)
        elif isinstance(x, Gen):
            nxt = trie.child(pos, x.name)
            if op == "eval":
                plain.add((pos, nxt))
                vertices.add(nxt)
            pos = nxt
        elif isinstance(x, Lambda):
            if op == "eval" and not perfect:
                bar.add((pos, pos))
        elif isinstance(x, Prod):
            stack.append((op, x.right))
            stack.append((op, x.left))
        elif isinstance(x, Plus):
            stack.append(("restore", pos))
            stack.append((op, x.arg))
        elif isinstance(x, Max):
            if op == "eval":
                stack.append(("max", pos))
            stack.append(("silent", x.arg))
        else:
            raise TypeError(f"not a term: {x!r}")
    return RawGraph(trie, vertices, plain, bar, pos)


@dataclass(frozen=True)
class CanonicalForm:
    """Hashable canonical datum relative to one trie.

    ``bar`` holds, for each vertex in ``order``, the bitmask of bar-edge targets
    (by position in ``order``), with loops recorded separately in ``loops``.
    """

    point: int
    vertices: frozenset
    plain: frozenset
    loops: frozenset
    bar: tuple


def _order(trie: Trie, vertices) -> list[int]:
    return sorted(vertices, key=lambda v: (trie.depth[v], v))


def _reach_masks(raw: RawGraph, order: list[int]) -> list[int]:
    """Bitmask of vertices reachable by a nonempty path of non-loop edges."""
    index = {v: i for i, v in enumerate(order)}
    succ = [0] * len(order)
    for a, b in raw.plain:
        succ[index[a]] |= 1 << index[b]
    for a, b in raw.bar:
        if a != b:
            succ[index[a]] |= 1 << index[b]
    reach = [0] * len(order)
    # non-loop edges strictly lengthen words, so deeper vertices come first
    for i in range(len(order) - 1, -1, -1):
        m = succ[i]
        acc = m
        while m:
            low = m & -m
            acc |= reach[low.bit_length() - 1]
            m ^= low
        reach[i] = acc
    return reach


def _prefix_masks(trie: Trie, order: list[int]) -> list[int]:
    """Bitmask, per vertex, of the other vertices it is a proper prefix of."""
    index = {v: i for i, v in enumerate(order)}
    masks = [0] * len(order)
    for v, j in index.items():
        bit = 1 << j
        p = trie.parent[v]
        while p >= 0:
            i = index.get(p)
            if i is not None:
                masks[i] |= bit
            p = trie.parent[p]
    return masks


def canonical_form(raw: RawGraph, variety: Variety) -> CanonicalForm:
    """Closure (FFR, FFR_S) or X-reduct (FFR_P) of a raw value, as bitsets.

    The FFR closure adds the bar edge ``(a, b)`` exactly when ``b`` is
    reachable from ``a`` by a nonempty path (T2 then T3), and a loop at every
    vertex with an outgoing edge (T1).  The FFR_S closure also joins every
    pair of vertices where one is a proper prefix of the other, and puts a
    loop on every vertex (T4 with an empty right factor).
    """
    if variety is Variety.FFR_P:
        verts = frozenset(v for e in raw.plain for v in e)
        return CanonicalForm(raw.point, verts, frozenset(raw.plain), frozenset(), ())
    order = _order(raw.trie, raw.vertices)
    reach = _reach_masks(raw, order)
    if variety is Variety.FFR_S:
        prefix = _prefix_masks(raw.trie, order)
        reach = [r | p for r, p in zip(reach, prefix)]
    if variety is Variety.FFR_S:
        # every vertex is the origin or a target of a bar edge from it
        loops = set(raw.vertices)
    else:
        loops = {a for a, b in raw.bar if a == b}
        loops.update(order[i] for i, m in enumerate(reach) if m)
    return CanonicalForm(raw.point, frozenset(raw.vertices), frozenset(raw.plain),
                         frozenset(loops), tuple(zip(order, reach)))


def canonical_graph(raw: RawGraph, variety: Variety) -> Graph:
    """Materialize :func:`canonical_form` as a word-labelled :class:`Graph`."""
    cf = canonical_form(raw, variety)
    w = raw.trie.word
    edges = [Edge(w(a), Plain(raw.trie.letter[b])) for a, b in cf.plain]
    edges += [Edge(w(v), Bar(())) for v in cf.loops]
    order = [v for v, _ in cf.bar]
    for v, mask in cf.bar:
        src = w(v)
        while mask:
            low = mask & -mask
            dst = w(order[low.bit_length() - 1])
            edges.append(Edge(src, Bar(dst[len(src):])))
            mask ^= low
    return Graph(frozenset(w(v) for v in cf.vertices), frozenset(edges))


def strong_signature(raw: RawGraph) -> tuple:
    """Point, vertices and plain edges: all an FFR_S closure depends on.

    A strongly closed graph has a bar edge between every pair of
    prefix-comparable vertices and a λ̄ loop at every vertex, so its edges
    labelled by X ∪ {λ̄} and its vertex set determine it.  Nothing is closed.
    """
    return (raw.point, frozenset(raw.vertices), frozenset(raw.plain))
