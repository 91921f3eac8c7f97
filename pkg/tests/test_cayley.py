import random

import pytest

from frestr.cayley import (
    Bar, Edge, Graph, Plain, PointedGraph, gamma_bar, gamma_plain, gould_identity,
    gould_multiply, gould_plus, is_accessible, label_text, parse_word, residual,
    translate, union, word_text,
)

L = ()
X = ("x",)
Y = ("y",)
XY = ("x", "y")


def test_residual():
    assert residual(X, XY) == Y
    assert residual(XY, XY) == ()
    with pytest.raises(ValueError):
        residual(X, Y)


def test_edge_target_is_computed():
    assert Edge(X, Plain("y")).target == XY
    assert Edge(X, Bar(())).target == X
    assert Edge(L, Bar(XY)).target == XY
    assert Edge(X, Bar(())).is_bar and not Edge(X, Plain("y")).is_bar


def test_graph_rejects_dangling_edge():
    with pytest.raises(ValueError):
        Graph(frozenset({L}), frozenset({Edge(L, Plain("x"))}))


def test_pointed_graph_point_must_be_vertex():
    with pytest.raises(ValueError):
        PointedGraph(gamma_plain("x").graph, Y)


def test_union_examples():
    gx = gamma_plain("x").graph
    assert union(gx, gx) == gx
    g = union(gx, gamma_bar(Y).graph)
    assert g.vertices == {L, X, Y}
    assert g.edges == {Edge(L, Plain("x")), Edge(L, Bar(Y))}


def test_translate_examples():
    g = gamma_bar(Y).graph
    assert translate(L, g) == g
    t = translate(X, g)
    assert t.vertices == {X, XY}
    assert t.edges == {Edge(X, Bar(Y))}


def test_accessibility():
    assert is_accessible(gamma_plain("x").graph)
    assert not is_accessible(Graph(frozenset({X})))
    assert not is_accessible(Graph.from_edges([Edge(L, Plain("x"))], [Y]))
    assert is_accessible(gamma_bar(()).graph)


def test_generators():
    gx = gamma_plain("x")
    assert gx.graph.vertices == {L, X} and gx.graph.edges == {Edge(L, Plain("x"))}
    assert gx.point == X
    lam = gamma_bar(())
    assert lam.graph.vertices == {L} and lam.graph.edges == {Edge(L, Bar(()))}
    assert lam.point == L
    b = gamma_bar(XY)
    assert b.graph.edges == {Edge(L, Bar(XY))} and b.point == XY


def test_gould_multiply_example():
    p = gould_multiply(gamma_bar(X), gamma_bar(Y))
    assert p.graph.edges == {Edge(L, Bar(X)), Edge(X, Bar(Y))}
    assert p.point == XY


def test_gould_multiply_by_lambda_bar_adds_loop():
    a = gould_plus(gamma_plain("x"))
    p = gould_multiply(a, gamma_bar(()))
    assert p.graph.edges == a.graph.edges | {Edge(L, Bar(()))}
    assert p.point == L


def test_gould_plus():
    gx = gamma_plain("x")
    assert gould_plus(gx) == PointedGraph(gx.graph, L)
    assert gould_plus(gould_plus(gx)) == gould_plus(gx)
    assert gould_multiply(gould_plus(gx), gx) == gx


def _random_pointed(rng: random.Random) -> PointedGraph:
    letters = ["x", "y"]
    p = gamma_plain(rng.choice(letters)) if rng.random() < 0.5 else gamma_bar(
        tuple(rng.choice(letters) for _ in range(rng.randint(0, 2))))
    for _ in range(rng.randint(0, 4)):
        q = gamma_plain(rng.choice(letters)) if rng.random() < 0.5 else gamma_bar(
            tuple(rng.choice(letters) for _ in range(rng.randint(0, 2))))
        if rng.random() < 0.3:
            q = gould_plus(q)
        p = gould_multiply(p, q)
    if rng.random() < 0.3:
        p = gould_plus(p)
    return p


def test_gould_laws_random():
    rng = random.Random(11)
    m, pl = gould_multiply, gould_plus
    for _ in range(400):
        a, b, c = (_random_pointed(rng) for _ in range(3))
        assert m(m(a, b), c) == m(a, m(b, c))
        assert m(pl(a), a) == a
        assert m(pl(a), pl(b)) == m(pl(b), pl(a))
        assert pl(m(pl(a), b)) == m(pl(a), pl(b))
        assert m(a, pl(b)) == m(pl(m(a, b)), a)
        assert pl(m(a, b)) == pl(m(a, pl(b)))
        assert pl(m(m(a, pl(c)), b)) == m(pl(m(a, c)), pl(m(a, b)))
        assert is_accessible(m(a, b).graph)
        assert union(a.graph, b.graph) == union(b.graph, a.graph)
        s = c.point
        assert translate(s, union(a.graph, b.graph)) == union(translate(s, a.graph), translate(s, b.graph))


def test_gould_identity():
    rng = random.Random(2)
    e = gould_identity()
    for _ in range(50):
        a = _random_pointed(rng)
        assert gould_multiply(e, a) == a == gould_multiply(a, e)


def test_text_encodings():
    assert word_text(XY) == "xy"
    assert word_text(("ab", "c")) == "ab.c"
    assert parse_word("xy") == XY
    assert parse_word("ab.c") == ("ab", "c")
    assert label_text(Plain("x")) == "x"
    assert label_text(Bar(XY)) == "~xy"
    assert label_text(Bar(())) == "~"
