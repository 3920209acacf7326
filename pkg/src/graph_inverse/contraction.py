"""NE spanning forests, contracted graphs and the LI isomorphism decision.

Each ~-class is spanned by a tree of NE edges.  Collapsing those trees gives
the contracted graph, whose vertices are named after the first vertex of the
class they stand for and whose edges keep their original names.  Two graphs
have isomorphic Leavitt inverse semigroups exactly when their contracted
graphs are isomorphic by a map that preserves class sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .gis import ZERO, Elem, Element, gis_inverse
from .graphs import Graph, GraphError, Path, canonical_cycle, empty_path, ne_cycles, sim_classes
from .leavitt import li_multiply, li_reduce


@dataclass(frozen=True)
class NeSpanningForest:
    graph: Graph
    classes: tuple[tuple[str, ...], ...]
    trees: Mapping[str, frozenset]  # class representative -> tree edges
    excluded: frozenset  # class edges left out of the trees

    @property
    def edges(self) -> frozenset:
        return frozenset().union(*self.trees.values())

    def tree_out(self) -> dict[str, str]:
        """The tree edge leaving each vertex, where there is one."""
        return {self.graph.src[e]: e for t in self.trees.values() for e in t}


def _cycle_key(g: Graph, c) -> tuple[str, ...]:
    return canonical_cycle(g, c).edges


def ne_spanning_forest(g: Graph, choice: Mapping | None = None) -> NeSpanningForest:
    """Spanning trees of the ~-classes built from NE edges.

    ``choice`` maps cycles (edge tuples, any rotation) to the edge to leave
    out.  NE cycles without an entry default to their least edge; a cycle with
    an exit always loses the edge leaving the exit vertex.
    """
    picks: dict[tuple[str, ...], str] = {}
    for c, e in (choice or {}).items():
        key = _cycle_key(g, c)
        if e not in key:
            raise GraphError(f"edge {e} is not on cycle {'.'.join(key)}")
        picks[key] = e
    ne_keys = {c.edges for c in ne_cycles(g)}
    for key, e in picks.items():
        if key not in ne_keys and len(g.out_edges(g.src[e])) == 1:
            raise GraphError(f"choosing {e} on {'.'.join(key)} would drop a forced NE tree edge")

    classes = tuple(sim_classes(g))
    trees, excluded = {}, set()
    for block in classes:
        inside = set(block)
        cedges = [e for e in g.edges if g.src[e] in inside and g.rng[e] in inside]
        odd = [v for v in block if len(g.out_edges(v)) != 1]
        if len(odd) > 1:
            raise AssertionError(f"class {block} has {len(odd)} vertices of out-degree other than 1")
        if odd:
            drop = set(g.out_edges(odd[0])) & set(cedges)
        else:
            v, seen = block[0], []
            while v not in seen:
                seen.append(v)
                v = g.rng[g.out_edges(v)[0]]
            start = v
            cyc = []
            while True:
                e = g.out_edges(v)[0]
                cyc.append(e)
                v = g.rng[e]
                if v == start:
                    break
            key = _cycle_key(g, cyc)
            drop = {picks.get(key, min(key, key=g.eindex))}
        tree = frozenset(e for e in cedges if e not in drop)
        if len(tree) != len(block) - 1:
            raise AssertionError(f"tree for class {block} has {len(tree)} edges")
        trees[block[0]] = tree
        excluded |= drop
    for key, e in picks.items():
        if e in trees.get(next(b[0] for b in classes if g.src[e] in b), ()):
            raise GraphError(f"choice {e} is not used")
    return NeSpanningForest(g, classes, trees, frozenset(excluded))


def forest_choices(g: Graph) -> list[dict]:
    """Every admissible choice map, one edge per NE cycle."""
    cycles = [c.edges for c in ne_cycles(g)]
    return [dict(zip(cycles, pick)) for pick in itertools.product(*cycles)]


@dataclass(frozen=True)
class ContractedGraph:
    source: Graph
    forest: NeSpanningForest
    graph: Graph
    chi_vertex: Mapping[str, str]
    chi_edge: Mapping[str, str]
    class_size: Mapping[str, int]
    members: Mapping[str, tuple[str, ...]] = field(repr=False)


def contract(g: Graph, forest: NeSpanningForest | None = None) -> ContractedGraph:
    if forest is None:
        forest = ne_spanning_forest(g)
    chi_v = {v: block[0] for block in forest.classes for v in block}
    tree = forest.edges
    kept = [e for e in g.edges if e not in tree]
    cg = Graph([b[0] for b in forest.classes], [(e, chi_v[g.src[e]], chi_v[g.rng[e]]) for e in kept])
    return ContractedGraph(
        source=g,
        forest=forest,
        graph=cg,
        chi_vertex=chi_v,
        chi_edge={e: e for e in kept},
        class_size={b[0]: len(b) for b in forest.classes},
        members={b[0]: b for b in forest.classes},
    )


def connector(g: Graph, forest: NeSpanningForest, v1: str, v2: str) -> Elem:
    """p[v1, v2]: tree paths from v1 and v2 to the first vertex they share."""
    nxt = forest.tree_out()

    def walk(v):
        verts, es = [v], []
        while v in nxt:
            es.append(nxt[v])
            v = g.rng[nxt[v]]
            verts.append(v)
        return verts, es

    a_verts, a_edges = walk(g.check_vertex(v1))
    b_verts, b_edges = walk(g.check_vertex(v2))
    b_pos = {v: i for i, v in enumerate(b_verts)}
    for i, v in enumerate(a_verts):
        if v in b_pos:
            j = b_pos[v]
            return Elem(Path(v1, tuple(a_edges[:i]), v), Path(v2, tuple(b_edges[:j]), v))
    raise GraphError(f"{v1} and {v2} are not ~-related")


def _edge_elem(g: Graph, e: str) -> Elem:
    return Elem(Path(g.src[e], (e,), g.rng[e]), empty_path(g.rng[e]))


def chi_tilde(cg: ContractedGraph, x: Element) -> Element:
    if x is ZERO:
        return ZERO

    def image(p: Path) -> Path:
        es = tuple(cg.chi_edge[e] for e in p.edges if e in cg.chi_edge)
        return Path(cg.chi_vertex[p.start], es, cg.chi_vertex[p.end])

    return li_reduce(cg.graph, Elem(image(x.p), image(x.q)))


def default_base(cg: ContractedGraph) -> dict[str, str]:
    return {c: c for c in cg.graph.vertices}


def _check_base(cg: ContractedGraph, base: Mapping[str, str]):
    for c in cg.graph.vertices:
        if base.get(c) not in cg.members[c]:
            raise GraphError(f"base for class {c} is not in the class")


def _chi_hat_path(cg: ContractedGraph, base: Mapping[str, str], p: Path) -> Element:
    g, f = cg.source, cg.forest
    if not p.edges:
        return Elem(empty_path(base[p.start]), empty_path(base[p.start]))
    out = connector(g, f, base[p.start], g.src[p.edges[0]])
    for e, nxt in zip(p.edges, p.edges[1:] + (None,)):
        out = li_multiply(g, out, _edge_elem(g, e))
        target = g.src[nxt] if nxt is not None else base[p.end]
        out = li_multiply(g, out, connector(g, f, g.rng[e], target))
    return out


def chi_hat(cg: ContractedGraph, base: Mapping[str, str] | None, x: Element) -> Element:
    if base is None:
        base = default_base(cg)
    _check_base(cg, base)
    if x is ZERO:
        return ZERO
    return li_multiply(cg.source, _chi_hat_path(cg, base, x.p), gis_inverse(_chi_hat_path(cg, base, x.q)))


# isomorphism


@dataclass(frozen=True)
class IsoWitness:
    gamma: ContractedGraph
    delta: ContractedGraph
    psi: Mapping[str, str]
    phi_vertex: Mapping[str, str]
    phi_edge: Mapping[str, str]
    base_gamma: Mapping[str, str]
    base_delta: Mapping[str, str]
    # explicit images of the edges of G; when set they replace the connector
    # formula and elements are mapped as products of generator images
    edge_images: Mapping[str, Element] | None = None


def _invariant(cg: ContractedGraph, v: str):
    g = cg.graph
    loops = sum(1 for e in g.out_edges(v) if g.rng[e] == v)
    return (cg.class_size[v], len(g.out_edges(v)), len(g.in_edges(v)), loops)


def _multiplicity(g: Graph) -> dict[tuple[str, str], list[str]]:
    m: dict[tuple[str, str], list[str]] = {}
    for e in g.edges:
        m.setdefault((g.src[e], g.rng[e]), []).append(e)
    return m


def find_vertex_isomorphism(a: ContractedGraph, b: ContractedGraph) -> dict[str, str] | None:
    """Backtracking search for a class-size preserving isomorphism of vertices."""
    ga, gb = a.graph, b.graph
    if len(ga.vertices) != len(gb.vertices) or len(ga.edges) != len(gb.edges):
        return None
    inv_a = {v: _invariant(a, v) for v in ga.vertices}
    inv_b = {v: _invariant(b, v) for v in gb.vertices}
    if sorted(inv_a.values()) != sorted(inv_b.values()):
        return None
    ma, mb = _multiplicity(ga), _multiplicity(gb)

    def count(m, s, r):
        return len(m.get((s, r), ()))

    order = sorted(ga.vertices, key=lambda v: (-len(ga.out_edges(v)) - len(ga.in_edges(v)), ga.vindex(v)))
    assign: dict[str, str] = {}
    used: set[str] = set()

    def ok(u, w):
        if inv_a[u] != inv_b[w]:
            return False
        for x, y in list(assign.items()) + [(u, w)]:
            if count(ma, u, x) != count(mb, w, y) or count(ma, x, u) != count(mb, y, w):
                return False
        return True

    def search(i):
        if i == len(order):
            return True
        u = order[i]
        for w in gb.vertices:
            if w not in used and ok(u, w):
                assign[u] = w
                used.add(w)
                if search(i + 1):
                    return True
                del assign[u]
                used.discard(w)
        return False

    return dict(assign) if search(0) else None


def li_isomorphic(g: Graph, d: Graph, forest_g=None, forest_d=None) -> IsoWitness | None:
    a, b = contract(g, forest_g), contract(d, forest_d)
    vmap = find_vertex_isomorphism(a, b)
    if vmap is None:
        return None
    ma, mb = _multiplicity(a.graph), _multiplicity(b.graph)
    emap = {}
    for (s, r), es in ma.items():
        for e, f in zip(es, mb[(vmap[s], vmap[r])]):
            emap[e] = f
    psi = {}
    for c, verts in a.members.items():
        psi.update(zip(verts, b.members[vmap[c]]))
    w = IsoWitness(a, b, psi, vmap, emap, default_base(a), default_base(b))
    validate_witness(w)
    return w


def validate_witness(w: IsoWitness) -> None:
    a, b = w.gamma, w.delta
    ga, gb = a.graph, b.graph
    if sorted(w.phi_vertex) != sorted(ga.vertices) or sorted(w.phi_vertex.values()) != sorted(gb.vertices):
        raise GraphError("vertex map is not a bijection of contracted graphs")
    if sorted(w.phi_edge) != sorted(ga.edges) or sorted(w.phi_edge.values()) != sorted(gb.edges):
        raise GraphError("edge map is not a bijection of contracted graphs")
    for e, f in w.phi_edge.items():
        if w.phi_vertex[ga.src[e]] != gb.src[f] or w.phi_vertex[ga.rng[e]] != gb.rng[f]:
            raise GraphError(f"edge map does not respect incidence at {e}")
    src, dst = a.source, b.source
    if sorted(w.psi) != sorted(src.vertices) or sorted(w.psi.values()) != sorted(dst.vertices):
        raise GraphError("psi is not a bijection")
    for v, u in w.psi.items():
        if w.phi_vertex[a.chi_vertex[v]] != b.chi_vertex[u]:
            raise GraphError(f"psi and the contracted map disagree at {v}")
    _check_base(a, w.base_gamma)
    _check_base(b, w.base_delta)


def _phi_bar(w: IsoWitness, x: Element) -> Element:
    if x is ZERO:
        return ZERO

    def image(p: Path) -> Path:
        return Path(w.phi_vertex[p.start], tuple(w.phi_edge[e] for e in p.edges), w.phi_vertex[p.end])

    return Elem(image(x.p), image(x.q))


def apply_witness(w: IsoWitness, x: Element) -> Element:
    if x is ZERO:
        return ZERO
    a, b = w.gamma, w.delta
    d = b.source
    for path in (x.p, x.q):
        a.source.check_vertex(path.start)
    if w.edge_images is not None:
        return _by_generators(w, x)
    mid = chi_hat(b, w.base_delta, _phi_bar(w, chi_tilde(a, x)))
    left = connector(d, b.forest, w.psi[x.p.start], w.base_delta[w.phi_vertex[a.chi_vertex[x.p.start]]])
    right = connector(d, b.forest, w.base_delta[w.phi_vertex[a.chi_vertex[x.q.start]]], w.psi[x.q.start])
    return li_multiply(d, li_multiply(d, left, mid), right)


def _by_generators(w: IsoWitness, x: Elem) -> Element:
    d = w.delta.source
    u = w.psi[x.p.start]
    out: Element = Elem(empty_path(u), empty_path(u))
    for e in x.p.edges:
        out = li_multiply(d, out, w.edge_images[e])
    for e in reversed(x.q.edges):
        out = li_multiply(d, out, gis_inverse(w.edge_images[e]))
    return out


def edge_images(w: IsoWitness) -> dict[str, Element]:
    g = w.gamma.source
    return {e: apply_witness(w, Elem(Path(g.src[e], (e,), g.rng[e]), empty_path(g.rng[e]))) for e in g.edges}
