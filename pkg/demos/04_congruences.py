"""
Quotients of I(G)
=================

A congruence pair (W, f) picks out-degree-1 vertices W and a period f on each
cycle inside W.  The pair identifies e e* with v for the edge e leaving each
v in W, and c^f with the base point of c.
"""

from graph_inverse import fixtures
from graph_inverse.congruence import (
    closure_oracle,
    enumerate_pairs,
    generators,
    hereditary_closure,
    make_pair,
    preserves_gis,
    quotient_classes,
    quotient_equal,
    quotient_graph_if_gis,
    rees_quotient_graph,
    retraction,
)
from graph_inverse.gis import enumerate_elements, format_element, parse_element

b1 = fixtures.graph("B1")
for pair in enumerate_pairs(b1, 3):
    print(pair, " quotient is a graph inverse semigroup:", preserves_gis(b1, pair))

# with period 2, a a is the vertex but a is not
p2 = make_pair(b1, {"v"}, {("a",): 2})
print("aa ~ v:", quotient_equal(b1, p2, parse_element(b1, "a.a|@v"), parse_element(b1, "@v")))
print("a ~ v:", quotient_equal(b1, p2, parse_element(b1, "a|@v"), parse_element(b1, "@v")))

# the normal form agrees with a brute-force closure of the generators
els = enumerate_elements(b1, 4)
cl = closure_oracle(b1, generators(b1, p2), 6)
classes = quotient_classes(b1, p2, els)
print("classes among", len(els), "elements:", len(classes))
agree = all((cl[x] == cl[y]) == quotient_equal(b1, p2, x, y) for x in els for y in els)
print("agrees with closure:", agree)

# period 1 on a loop gives back a graph inverse semigroup: drop the loop
p1 = make_pair(b1, {"v"}, {("a",): 1})
print("quotient graph:", quotient_graph_if_gis(b1, p1).dumps().strip())
for text in ("a|a", "a.a|a", "@v"):
    print(" ", text, "->", format_element(retraction(b1, p1, parse_element(b1, text))))

# ideals come from hereditary vertex sets
g = fixtures.graph("G72")
h = hereditary_closure(g, {"v4"})
print("hereditary closure of v4:", sorted(h))
print("Rees quotient graph:")
print(rees_quotient_graph(g, h).dumps())
