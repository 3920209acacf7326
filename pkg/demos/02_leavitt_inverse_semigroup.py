"""
The Leavitt inverse semigroup
=============================

LI(G) adds the relation e e* = v whenever e is the only edge leaving v.  In
normal form this strips common trailing edges whose source has out-degree 1.
"""

from graph_inverse import fixtures
from graph_inverse.gis import ZERO, format_element, parse_element
from graph_inverse.leavitt import (
    classify_brandt,
    green_relation,
    is_combinatorial,
    lenz_oracle,
    li_elements,
    li_equal,
    li_multiply,
    li_reduce,
    max_subgroup,
)

g = fixtures.graph("G72")
c3 = fixtures.graph("C3")

x = parse_element(g, "e1.e2|e2")
print(x, "reduces to", li_reduce(g, x))

# around a cycle with no exits, going round and coming back is the vertex
y = li_multiply(c3, parse_element(c3, "c1|@x2"), parse_element(c3, "@x2|c1"))
print("c1 c1* in LI(C3):", format_element(y))

# Green's relations
v4 = parse_element(g, "@v4")
print("D(e5|@v4, @v4):", green_relation(g, "D", parse_element(g, "e5|@v4"), v4))
print("J(@v1, @v4):", green_relation(g, "J", parse_element(g, "@v1"), v4))

# the maximal subgroup at a vertex is trivial or infinite cyclic
for name, v in (("C3", "x1"), ("G61", "m1"), ("G72", "v4")):
    h = fixtures.graph(name)
    print("subgroup at", v, "in", name, ":", max_subgroup(h, parse_element(h, "@" + v)).value)
print("LI(G61) combinatorial:", is_combinatorial(fixtures.graph("G61")))

# graphs with every out-degree at most one give Brandt semigroups
for name in ("L2", "C3", "G61"):
    print(name, "->", classify_brandt(fixtures.graph(name)))
l2 = fixtures.graph("L2")
print("nonzero elements of LI(L2):", sum(1 for z in li_elements(l2, 4) if z is not ZERO))

# equality in LI(G) agrees with the Lenz relation computed in I(G)
a, b = parse_element(c3, "c1|c1"), parse_element(c3, "@x1")
print("li_equal:", li_equal(c3, a, b), " lenz:", lenz_oracle(c3, a, b))
