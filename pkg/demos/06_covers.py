"""
Covers and immersions
=====================

A graph morphism is a directed immersion when it is injective on the edges
leaving each vertex, and a directed cover when it is bijective there.  Paths
lift uniquely along covers, which is what makes the polycyclic witness below
work.
"""

from graph_inverse import fixtures
from graph_inverse.gis import gis_inverse, gis_multiply
from graph_inverse.graphs import (
    check_morphism,
    classify_circle_immersion,
    lift_circuit_power,
    lift_max_prefix,
    lift_path,
    parse_path,
)
from graph_inverse.leavitt import polycyclic_witness

m = fixtures.morphism("C3_B1")
b1 = fixtures.graph("B1")
print("C3 -> B1:", check_morphism(m).value)
print("lift of a.a.a at x1:", lift_path(m, parse_path(b1, "a.a.a"), "x1"))
v, period, circuit = lift_circuit_power(m, parse_path(b1, "a"))
print("a lifts to a circuit after", period, "turns:", circuit)

e = fixtures.morphism("EDGE_B1")
print("EDGE -> B1:", check_morphism(e).value)
prefix, lift = lift_max_prefix(e, parse_path(b1, "a.a"), "t1")
print("only", prefix, "lifts at t1, to", lift)

for name in ("L2", "C3", "B2"):
    print(name, classify_circle_immersion(fixtures.graph(name)))

# polycyclic relations inside I(COV2)
cov = fixtures.morphism("COV2_B2")
r = polycyclic_witness(cov, "x")
for a, x in r.items():
    print(f"r_{a} =", x)
ra, rb = r["a"], r["b"]
print("r_a* r_a =", gis_multiply(gis_inverse(ra), ra))
print("r_a* r_b =", gis_multiply(gis_inverse(ra), rb))
