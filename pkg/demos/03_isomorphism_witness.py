"""
Deciding LI(G) = LI(D)
======================

Collapse each ~-class along a spanning tree of edges whose sources have
out-degree 1.  Two Leavitt inverse semigroups are isomorphic exactly when the
collapsed graphs are isomorphic by a map that keeps class sizes.  When they
are, the witness gives explicit images of every edge.
"""

from graph_inverse import fixtures
from graph_inverse.contraction import apply_witness, contract, edge_images, li_isomorphic
from graph_inverse.gis import format_element, parse_element
from graph_inverse.leavitt import li_multiply

g, d = fixtures.graph("G72"), fixtures.graph("D72")

cg = contract(g)
print("tree edges:", {c: sorted(t) for c, t in cg.forest.trees.items()})
print("contracted graph:")
print(cg.graph.dumps())

w = li_isomorphic(g, d)
print("psi:", w.psi)
for e, img in edge_images(w).items():
    print(f"  {e:4s} -> {format_element(img)}")

# the map respects products
x, y = parse_element(g, "e1.e2|@v3"), parse_element(g, "e5|@v4")
lhs = apply_witness(w, li_multiply(g, x, y))
rhs = li_multiply(d, apply_witness(w, x), apply_witness(w, y))
print("phi(xy) == phi(x) phi(y):", lhs == rhs, format_element(lhs))

# same vertex and edge counts, different class structure
print("G61 vs G62:", li_isomorphic(fixtures.graph("G61"), fixtures.graph("G62")))
