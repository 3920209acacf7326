import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_inverse import fixtures
from graph_inverse.gis import (
    ZERO,
    ZERO_MARK,
    Elem,
    enumerate_elements,
    format_element,
    gis_inverse,
    gis_leq,
    gis_multiply,
    is_idempotent,
    local_rank_at_idempotent,
    local_universal_rank,
    make_element,
    parse_element,
    tau,
    universal_rank,
    word_mul,
)
from graph_inverse.graphs import Graph, GraphError, make_path, parse_path, reachable
from oracles import cycle_rank, free_reduce, product_by_rewriting, random_graphs, word_of

F = fixtures.graph


def E(g, text):
    return parse_element(g, text)


def test_make_element_examples():
    b2 = F("B2")
    a = parse_path(b2, "a")
    assert make_element(b2, a, a) == Elem(a, a)
    v = parse_path(b2, "@v")
    assert make_element(b2, v, v) == E(b2, "@v")
    g = F("G72")
    with pytest.raises(GraphError, match="range mismatch"):
        make_element(g, make_path(g, ["e1"]), parse_path(g, "@v1"))


def test_multiply_examples():
    b2 = F("B2")
    assert gis_multiply(E(b2, "a|b"), E(b2, "b|a")) == E(b2, "a|a")
    assert gis_multiply(E(b2, "@v|a"), E(b2, "b|@v")) is ZERO
    assert gis_multiply(E(b2, "@v|a"), E(b2, "a|@v")) == E(b2, "@v")
    assert gis_multiply(ZERO, E(b2, "@v")) is ZERO


def test_inverse_examples():
    b2 = F("B2")
    assert gis_inverse(E(b2, "a|b")) == E(b2, "b|a")
    assert gis_inverse(E(b2, "@v")) == E(b2, "@v")
    assert gis_inverse(ZERO) is ZERO


def test_leq_examples():
    b2 = F("B2")
    assert gis_leq(E(b2, "a|a"), E(b2, "@v"))
    assert not gis_leq(E(b2, "@v"), E(b2, "a|a"))
    assert gis_leq(ZERO, E(b2, "@v"))


def test_tau_examples():
    b2, c3 = F("B2"), F("C3")
    assert tau(E(b2, "a|b")) == (("a", 1), ("b", -1))
    assert tau(E(b2, "a|a")) == ()
    assert tau(E(c3, "c1.c2|c1.c2")) == ()
    assert tau(ZERO) is ZERO_MARK


def test_rank_examples():
    assert universal_rank(F("B2")) == 2
    assert universal_rank(F("G72")) == 7
    assert universal_rank(Graph(["v"])) == 0
    assert local_universal_rank(F("C3"), "x1") == 1
    assert local_universal_rank(F("L2"), "w2") == 0
    assert local_universal_rank(F("G72"), "v4") == 1
    assert local_rank_at_idempotent(F("C3"), E(F("C3"), "c1|c1")) == 1
    assert local_rank_at_idempotent(F("L2"), E(F("L2"), "g2|g2")) == 0
    assert local_rank_at_idempotent(F("G72"), E(F("G72"), "e5|e5")) == 1
    with pytest.raises(GraphError):
        local_rank_at_idempotent(F("C3"), E(F("C3"), "c1|@x2"))


def test_enumerate_examples():
    b1, l2 = F("B1"), F("L2")
    assert enumerate_elements(b1, 0) == [ZERO, E(b1, "@v")]
    els = enumerate_elements(l2, 1)
    assert len(els) == 8
    assert set(map(format_element, els)) == {"0", "@w0", "@w1", "@w2", "g1|@w0", "@w0|g1", "g2|@w1", "@w1|g2"}
    assert enumerate_elements(Graph(["v"]), 5) == [ZERO, E(Graph(["v"]), "@v")]


def test_enumerate_acyclic_is_everything():
    # L2: every I(G) element has |p|,|q| <= 2
    assert len(enumerate_elements(F("L2"), 4)) == 1 + 14


def test_element_syntax_round_trip():
    for name in fixtures.GRAPHS:
        g = F(name)
        for x in enumerate_elements(g, 3):
            assert parse_element(g, format_element(x)) == x
    g = F("G72")
    assert format_element(E(g, "e1.e2|@v3")) == "e1.e2|@v3"
    assert format_element(E(g, "@v3|@v3")) == "@v3"
    with pytest.raises(GraphError):
        E(g, "e1|e3")


SMALL = [F(n) for n in fixtures.GRAPHS] + random_graphs(5, 25, max_v=5, max_e=7)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: repr(g))
def test_semigroup_axioms(g):
    els = enumerate_elements(g, 4)
    if len(els) > 300:
        els = els[:300]
    for x in els:
        xi = gis_inverse(x)
        assert gis_multiply(gis_multiply(x, xi), x) == x
        assert gis_multiply(gis_multiply(xi, x), xi) == xi
    idem = [x for x in els if is_idempotent(x)]
    for e in idem:
        for f in idem:
            assert gis_multiply(e, f) == gis_multiply(f, e)
    rng = random.Random(len(els))
    for _ in range(1500):
        x, y, z = rng.choice(els), rng.choice(els), rng.choice(els)
        assert gis_multiply(gis_multiply(x, y), z) == gis_multiply(x, gis_multiply(y, z))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: repr(g))
def test_multiplication_matches_rewriting(g):
    els = enumerate_elements(g, 3)[:120]
    for x in els:
        for y in els:
            z = gis_multiply(x, y)
            w = product_by_rewriting(g, x, y)
            assert (z is ZERO) == (w is None)
            if z is not ZERO:
                assert word_of(z) == w


@pytest.mark.parametrize("g", SMALL, ids=lambda g: repr(g))
def test_tau_properties(g):
    els = enumerate_elements(g, 4)[:250]
    for x in els:
        if x is ZERO:
            continue
        assert tau(x) == free_reduce(word_of(x)) or x.length == 0
        if tau(x) == ():
            assert is_idempotent(x)
    for x in els[:120]:
        for y in els[:120]:
            z = gis_multiply(x, y)
            if z is not ZERO:
                assert tau(z) == word_mul(tau(x), tau(y))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: repr(g))
def test_leq_is_prefix_order(g):
    els = enumerate_elements(g, 3)[1:150]
    for x in els:
        for y in els:
            prefix = (
                y.p.is_prefix_of(x.p)
                and y.q.is_prefix_of(x.q)
                and x.p.suffix_after(y.p).edges == x.q.suffix_after(y.q).edges
            )
            assert gis_leq(x, y) == prefix


RANK_GRAPHS = [F(n) for n in fixtures.GRAPHS] + random_graphs(2024, 100, max_v=6, max_e=8)


@pytest.mark.parametrize("g", RANK_GRAPHS, ids=lambda g: repr(g))
def test_rank_properties(g):
    from graph_inverse.graphs import reachable_subgraph, strongly_connected_components

    assert universal_rank(g) == len(g.edges)
    ranks = {v: local_universal_rank(g, v) for v in g.vertices}
    for v in g.vertices:
        assert ranks[v] == cycle_rank(reachable_subgraph(g, v))
        for w in reachable(g, v):
            assert ranks[w] <= ranks[v]
    for comp in strongly_connected_components(g):
        assert len({ranks[v] for v in comp}) == 1
    # subgraphs obtained by deleting edges never have larger local rank
    for e in g.edges:
        h = g.without_edges([e])
        for v in g.vertices:
            assert local_universal_rank(h, v) <= ranks[v]


@st.composite
def walk_element(draw, g):
    v = draw(st.sampled_from(g.vertices))
    es = []
    for _ in range(draw(st.integers(0, 2))):
        out = g.out_edges(v)
        if not out:
            break
        e = draw(st.sampled_from(out))
        es.append(e)
        v = g.rng[e]
    end, back = v, []
    for _ in range(draw(st.integers(0, 2))):
        inc = g.in_edges(v)
        if not inc:
            break
        e = draw(st.sampled_from(inc))
        back.append(e)
        v = g.src[e]
    p = make_path(g, es, base=end if not es else None)
    q = make_path(g, list(reversed(back)), base=end if not back else None)
    return Elem(p, q)


@st.composite
def graph_and_elements(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.integers(0, 7))
    vs = [f"v{i}" for i in range(n)]
    es = [(f"e{j}", draw(st.sampled_from(vs)), draw(st.sampled_from(vs))) for j in range(m)]
    g = Graph(vs, es)
    return g, draw(walk_element(g)), draw(walk_element(g)), draw(walk_element(g))


@settings(max_examples=300, deadline=None)
@given(graph_and_elements())
def test_associativity_hypothesis(data):
    g, x, y, z = data
    assert gis_multiply(gis_multiply(x, y), z) == gis_multiply(x, gis_multiply(y, z))
    assert gis_multiply(gis_multiply(x, gis_inverse(x)), x) == x
