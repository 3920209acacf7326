import itertools
import random
from fractions import Fraction

import pytest

from graph_inverse import fixtures
from graph_inverse.contraction import li_isomorphic
from graph_inverse.gis import ZERO, enumerate_elements, format_element, gis_multiply, parse_element
from graph_inverse.graphs import Graph, GraphError, cycles_up_to_conjugacy
from graph_inverse.leavitt import li_equal, li_multiply, li_reduce
from graph_inverse.lpa import (
    AlgebraElement,
    alg_add,
    alg_multiply,
    alg_scale,
    alg_sub,
    basis_elements,
    bouquet_lpa_iso,
    check_gamma,
    default_gamma,
    dimension_if_acyclic,
    format_algebra,
    induced_algebra_iso_check,
    is_basis_element,
    ne_contraction_retraction,
    to_basis,
)
from oracles import random_graphs

F = fixtures.graph
B1, B2 = F("B1"), F("B2")


def E(g, text):
    return parse_element(g, text)


def A(g, terms, gamma=None):
    gamma = gamma or default_gamma(g)
    return AlgebraElement(g, gamma, {E(g, k): c for k, c in terms.items()})


def test_to_basis_examples():
    assert to_basis(B1, {"v": "a"}, E(B1, "a|a")) == A(B1, {"@v": 1})
    assert to_basis(B2, {"v": "a"}, E(B2, "a|a")) == A(B2, {"@v": 1, "b|b": -1})
    assert to_basis(B2, {"v": "a"}, E(B2, "b|b")) == A(B2, {"b|b": 1})
    assert to_basis(B2, None, ZERO).is_zero()


def test_linear_ops():
    assert alg_add(A(B2, {"@v": 1}), A(B2, {"@v": -1})).is_zero()
    assert alg_scale(0, A(B2, {"a|@v": 3})).is_zero()
    assert alg_add(A(B2, {"a|@v": 1}), A(B2, {"b|@v": 2})) == A(B2, {"a|@v": 1, "b|@v": 2})
    assert alg_sub(A(B2, {"a|@v": 1}), A(B2, {"a|@v": 1})).is_zero()
    with pytest.raises(GraphError):
        alg_add(A(B2, {"@v": 1}), A(B1, {"@v": 1}))
    with pytest.raises(GraphError):
        alg_add(A(B2, {"@v": 1}), A(B2, {"@v": 1}, {"v": "b"}))


def test_multiply_examples():
    assert alg_multiply(A(B2, {"a|@v": 1}), A(B2, {"@v|a": 1})) == A(B2, {"@v": 1, "b|b": -1})
    assert alg_multiply(A(B2, {"@v": 1}), A(B2, {"@v": 1})) == A(B2, {"@v": 1})
    assert alg_multiply(A(B2, {"a|@v": 1}), A(B2, {"b|@v": 1})) == A(B2, {"a.b|@v": 1})


def test_format():
    assert format_algebra(A(B2, {"@v": 1, "b|b": -1})) == "1*@v + -1*b|b"
    assert format_algebra(A(B2, {"a|@v": Fraction(1, 2)})) == "1/2*a|@v"
    assert format_algebra(A(B2, {})) == "0"


def test_gamma_validation():
    with pytest.raises(GraphError):
        check_gamma(B2, {})
    with pytest.raises(GraphError):
        to_basis(F("L2"), {"w0": "g1", "w1": "g1", "w2": "g2"}, E(F("L2"), "@w0"))


def test_dimension_examples():
    assert dimension_if_acyclic(F("L2")) == 9
    assert dimension_if_acyclic(Graph(["v"])) == 1
    assert dimension_if_acyclic(Graph(["v", "w"], [("e", "v", "w")])) == 4
    with pytest.raises(GraphError):
        dimension_if_acyclic(F("C3"))


def test_bouquet_lpa_examples():
    assert bouquet_lpa_iso(3, 2, 4)
    assert not bouquet_lpa_iso(3, 2, 3)
    assert bouquet_lpa_iso(2, 1, 7)
    with pytest.raises(ValueError):
        bouquet_lpa_iso(1, 1, 1)


def test_bouquet_lpa_matches_gcd_table():
    for n in range(2, 7):
        for k1, k2 in itertools.product(range(1, 7), repeat=2):
            from math import gcd

            assert bouquet_lpa_iso(n, k1, k2) == (n == 2 or gcd(k1, n - 1) == gcd(k2, n - 1))
            assert bouquet_lpa_iso(n, k1, k2) == bouquet_lpa_iso(n, k2, k1)


def _gammas(g, limit=6):
    choices = [[(v, e) for e in g.out_edges(v)] for v in g.vertices if g.out_edges(v)]
    return [dict(c) for c in itertools.islice(itertools.product(*choices), limit)]


FIX = [F(n) for n in fixtures.GRAPHS]
RANDOM = random_graphs(91, 50, max_v=5, max_e=7)


def _len(g):
    return 4 if len(g.edges) <= 4 else 2


@pytest.mark.parametrize("g", FIX + RANDOM, ids=repr)
def test_ck_relation(g):
    for gamma in _gammas(g, 3):
        for v in g.vertices:
            es = g.out_edges(v)
            if not es:
                continue
            total = to_basis(g, gamma, ZERO)
            for e in es:
                total = alg_add(total, to_basis(g, gamma, E(g, f"{e}|{e}")))
            assert total == to_basis(g, gamma, E(g, "@" + v))


@pytest.mark.parametrize("g", FIX + RANDOM, ids=repr)
def test_basis_expansion(g):
    gamma = default_gamma(g)
    els = enumerate_elements(g, _len(g))[1:300]
    exp = {x: to_basis(g, gamma, x) for x in els}
    for x in els:
        assert all(is_basis_element(g, gamma, k) for k in exp[x].terms)
        if is_basis_element(g, gamma, x) and li_reduce(g, x) == x:
            assert exp[x].terms == {x: 1}
    for x in els[:150]:
        for y in els[:150]:
            if li_equal(g, x, y):
                assert exp[x] == exp[y]


@pytest.mark.parametrize("g", FIX + RANDOM[:25], ids=repr)
def test_algebra_axioms(g):
    gamma = default_gamma(g)
    basis = basis_elements(g, gamma, 3 if len(g.edges) <= 4 else 2)
    rng = random.Random(len(basis))

    def rand():
        ks = rng.sample(basis, min(3, len(basis)))
        return AlgebraElement(g, gamma, {k: Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for k in ks})

    for _ in range(40):
        x, y, z = rand(), rand(), rand()
        assert alg_multiply(alg_multiply(x, y), z) == alg_multiply(x, alg_multiply(y, z))
        assert alg_multiply(x, alg_add(y, z)) == alg_add(alg_multiply(x, y), alg_multiply(x, z))
        assert alg_multiply(alg_add(y, z), x) == alg_add(alg_multiply(y, x), alg_multiply(z, x))


@pytest.mark.parametrize("g", FIX + RANDOM[:25], ids=repr)
def test_multiplication_extends_semigroup(g):
    gamma = default_gamma(g)
    els = enumerate_elements(g, 2)[1:80]
    for x in els:
        for y in els:
            lhs = alg_multiply(to_basis(g, gamma, x), to_basis(g, gamma, y))
            assert lhs == to_basis(g, gamma, gis_multiply(x, y))


def _paths_into(g, w):
    """Number of paths ending at w (including the trivial one)."""
    count = {w: 1}
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            n = sum(count.get(g.rng[e], 0) for e in g.out_edges(v)) + (v == w)
            if count.get(v, 0) != n:
                count[v] = n
                changed = True
    return sum(count.values())


ACYCLIC = [g for g in random_graphs(5150, 120, max_v=5, max_e=6) if not cycles_up_to_conjugacy(g)][:40]


@pytest.mark.parametrize("g", [F("L2"), F("EDGE")] + ACYCLIC, ids=repr)
def test_dimension_matches_matrix_sizes(g):
    sinks = [v for v in g.vertices if not g.out_edges(v)]
    expected = sum(_paths_into(g, w) ** 2 for w in sinks)
    assert dimension_if_acyclic(g) == expected
    from graph_inverse.lpa import longest_path_length

    n = longest_path_length(g)
    for gamma in _gammas(g, 4):
        assert len(basis_elements(g, gamma, 2 * n)) == expected


@pytest.fixture(scope="module")
def g72_witness():
    return li_isomorphic(F("G72"), F("D72"))


def test_induced_iso_examples(g72_witness):
    assert induced_algebra_iso_check(g72_witness, 3)
    assert induced_algebra_iso_check(li_isomorphic(B2, B2), 3)


def test_induced_iso_rejects_corruption(g72_witness):
    from graph_inverse.contraction import edge_images
    import dataclasses

    imgs = edge_images(g72_witness)
    imgs["e1"], imgs["e2"] = imgs["e2"], imgs["e1"]
    assert not induced_algebra_iso_check(dataclasses.replace(g72_witness, edge_images=imgs), 3)
    # psi may pair the vertices of a class in any order
    psi = dict(g72_witness.psi)
    psi["v1"], psi["v2"] = psi["v2"], psi["v1"]
    assert induced_algebra_iso_check(dataclasses.replace(g72_witness, psi=psi), 3)
    # but it has to respect the classes
    psi = dict(g72_witness.psi)
    psi["v1"], psi["v4"] = psi["v4"], psi["v1"]
    assert not induced_algebra_iso_check(dataclasses.replace(g72_witness, psi=psi), 3)


def test_induced_iso_gamma_independent(g72_witness):
    g, d = F("G72"), F("D72")
    for gg in _gammas(g, 2):
        for gd in _gammas(d, 2):
            assert induced_algebra_iso_check(g72_witness, 2, gg, gd)


def test_retraction_examples():
    g = Graph(["s", "x", "y"], [("e", "s", "x"), ("f", "x", "y"), ("h", "x", "x")])
    gamma = default_gamma(g)
    h_gamma = {v: a for v, a in gamma.items() if v != "s"}
    got = ne_contraction_retraction(g, "e", A(g, {"e.h|h": 1}))
    assert format_algebra(got) == "1*h|h"
    got = ne_contraction_retraction(g, "e", A(g, {"@s": 1}))
    assert format_algebra(got) == "1*@x"
    got = ne_contraction_retraction(g, "e", A(g, {"h.h|h": 2}))
    assert format_algebra(got) == "2*h.h|h" and got.gamma == h_gamma
    with pytest.raises(GraphError):
        ne_contraction_retraction(g, "f", A(g, {"@s": 1}))


def _with_source(g, rng):
    target = rng.choice(g.vertices)
    return Graph(["src", *g.vertices], [("enter", "src", target), *g.triples()])


@pytest.mark.parametrize("g", [_with_source(h, random.Random(i)) for i, h in enumerate(random_graphs(61, 30, max_v=4, max_e=5))], ids=repr)
def test_retraction_multiplicative(g):
    gamma = default_gamma(g)
    els = basis_elements(g, gamma, 3)[:60]
    one = {x: AlgebraElement(g, gamma, {x: 1}) for x in els}
    f = {x: ne_contraction_retraction(g, "enter", one[x]) for x in els}
    h = next(iter(f.values())).graph
    for x in els:
        if "src" not in (x.p.start, x.q.start):
            # identity on the part of the algebra that lives over h
            assert f[x] == to_basis(h, f[x].gamma, parse_element(h, format_element(x)))
        for y in els:
            if li_multiply(g, x, y) is ZERO:
                continue
            lhs = ne_contraction_retraction(g, "enter", alg_multiply(one[x], one[y]))
            assert lhs == alg_multiply(f[x], f[y])
