"""
Graph inverse semigroups
========================

Elements of I(G) are pairs p q* of directed paths ending at the same vertex,
plus a zero.  This walk-through multiplies a few of them on the two-loop
bouquet and looks at the map into the free group on the edges.
"""

from graph_inverse import fixtures
from graph_inverse.gis import (
    enumerate_elements,
    format_element,
    gis_inverse,
    gis_leq,
    gis_multiply,
    local_universal_rank,
    parse_element,
    tau,
    universal_rank,
)

b2 = fixtures.graph("B2")
print(b2.dumps())


def el(text):
    return parse_element(b2, text)


# a b* times b a* collapses the middle b* b to the vertex
print("a|b * b|a =", format_element(gis_multiply(el("a|b"), el("b|a"))))

# a* b is zero: the two edges differ
print("@v|a * b|@v =", format_element(gis_multiply(el("@v|a"), el("b|@v"))))

# every element has an inverse that swaps p and q
x = el("a.b|a")
print("inverse of", x, "is", gis_inverse(x))
print("x x^-1 x == x:", gis_multiply(gis_multiply(x, gis_inverse(x)), x) == x)

# the natural order: a a* sits below the vertex
print("a|a <= @v:", gis_leq(el("a|a"), el("@v")))

# tau sends p q* to the reduced word p q^-1
for text in ("a|b", "a.b|b", "a|a"):
    print("tau(%s) =" % text, tau(el(text)))

# the universal group is free on the edges; locally it is the fundamental
# group of the part of the graph reachable from a vertex
print("universal rank of B2:", universal_rank(b2))
g72 = fixtures.graph("G72")
for v in g72.vertices:
    print("local rank at", v, "=", local_universal_rank(g72, v))

# how many elements of length at most 3
print("elements of length <= 3:", len(enumerate_elements(b2, 3)))
