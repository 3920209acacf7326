"""
Leavitt path algebras
=====================

Rational linear combinations of p q*, with the extra relation that a vertex
is the sum of e e* over the edges leaving it.  Fixing one special edge per
vertex gives a basis; everything here is exact arithmetic with Fractions.
"""

import dataclasses
from fractions import Fraction

from graph_inverse import fixtures
from graph_inverse.contraction import edge_images, li_isomorphic
from graph_inverse.gis import parse_element
from graph_inverse.lpa import (
    AlgebraElement,
    alg_add,
    alg_multiply,
    bouquet_lpa_iso,
    dimension_if_acyclic,
    format_algebra,
    induced_algebra_iso_check,
    to_basis,
)

b2 = fixtures.graph("B2")
gamma = {"v": "a"}
aa = to_basis(b2, gamma, parse_element(b2, "a|a"))
bb = to_basis(b2, gamma, parse_element(b2, "b|b"))
print("a a* =", format_algebra(aa))
print("a a* + b b* =", format_algebra(alg_add(aa, bb)))

half_a = AlgebraElement(b2, gamma, {parse_element(b2, "a|@v"): Fraction(1, 2)})
a_star = AlgebraElement(b2, gamma, {parse_element(b2, "@v|a"): 2})
print("(a/2)(2a*) =", format_algebra(alg_multiply(half_a, a_star)))

# acyclic graphs give finite-dimensional algebras
print("dim L(L2) =", dimension_if_acyclic(fixtures.graph("L2")))

# an isomorphism of Leavitt inverse semigroups induces one of the algebras
w = li_isomorphic(fixtures.graph("G72"), fixtures.graph("D72"))
print("induced map is an algebra isomorphism:", induced_algebra_iso_check(w, 3))
imgs = edge_images(w)
imgs["e1"], imgs["e2"] = imgs["e2"], imgs["e1"]
print("after swapping two edge images:", induced_algebra_iso_check(dataclasses.replace(w, edge_images=imgs), 3))

# graphs whose contraction is an n-loop bouquet
for n, k1, k2 in ((3, 2, 4), (3, 2, 3), (2, 1, 7), (5, 2, 6)):
    print(f"n={n}: {k1} vs {k2} vertices ->", bouquet_lpa_iso(n, k1, k2))
