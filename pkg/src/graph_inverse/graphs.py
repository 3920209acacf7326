"""Finite directed multigraphs, paths, cycles, ~-classes and graph morphisms.

Vertices and edges are string identifiers.  Their order is the order in which
they were declared, and every tie-break in the package (BFS, cycle rotation,
spanning trees, default special edges) uses that order.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import networkx as nx

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
MAX_VERTICES = 64


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class Graph:
    """Immutable directed multigraph with ordered vertex and edge sets."""

    __slots__ = ("vertices", "edges", "src", "rng", "_vpos", "_epos", "_out", "_in", "_hash")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]] = ()):
        vertices = tuple(vertices)
        edges = tuple(edges)
        vpos: dict[str, int] = {}
        for v in vertices:
            if v in vpos:
                raise GraphError(f"duplicate vertex {v!r}")
            vpos[v] = len(vpos)
        src, rng, epos = {}, {}, {}
        out: dict[str, list[str]] = {v: [] for v in vertices}
        inc: dict[str, list[str]] = {v: [] for v in vertices}
        for e, s, r in edges:
            if e in epos:
                raise GraphError(f"duplicate edge {e!r}")
            for x in (s, r):
                if x not in vpos:
                    raise GraphError(f"edge {e!r} uses unknown vertex {x!r}")
            epos[e] = len(epos)
            src[e], rng[e] = s, r
            out[s].append(e)
            inc[r].append(e)
        self.vertices = vertices
        self.edges = tuple(e for e, _, _ in edges)
        self.src = MappingProxyType(src)
        self.rng = MappingProxyType(rng)
        self._vpos = vpos
        self._epos = epos
        self._out = {v: tuple(es) for v, es in out.items()}
        self._in = {v: tuple(es) for v, es in inc.items()}
        self._hash = hash((self.vertices, self.triples()))

    def triples(self) -> tuple[tuple[str, str, str], ...]:
        return tuple((e, self.src[e], self.rng[e]) for e in self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.triples() == other.triples()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def has_vertex(self, v: str) -> bool:
        return v in self._vpos

    def has_edge(self, e: str) -> bool:
        return e in self._epos

    def check_vertex(self, v: str) -> str:
        if v not in self._vpos:
            raise GraphError(f"unknown vertex {v!r}")
        return v

    def check_edge(self, e: str) -> str:
        if e not in self._epos:
            raise GraphError(f"unknown edge {e!r}")
        return e

    def vindex(self, v: str) -> int:
        return self._vpos[v]

    def eindex(self, e: str) -> int:
        return self._epos[e]

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out[self.check_vertex(v)]

    def in_edges(self, v: str) -> tuple[str, ...]:
        return self._in[self.check_vertex(v)]

    def induced(self, vs: Iterable[str]) -> "Graph":
        keep = set(vs)
        return Graph(
            [v for v in self.vertices if v in keep],
            [t for t in self.triples() if t[1] in keep and t[2] in keep],
        )

    def without_edges(self, es: Iterable[str]) -> "Graph":
        drop = set(es)
        return Graph(self.vertices, [t for t in self.triples() if t[0] not in drop])

    def to_networkx(self) -> nx.MultiDiGraph:
        h = nx.MultiDiGraph()
        h.add_nodes_from(self.vertices)
        for e, s, r in self.triples():
            h.add_edge(s, r, key=e)
        return h

    def dumps(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {e} {s} {r}" for e, s, r in self.triples()]
        return "\n".join(lines) + "\n"


def load_graph(text: str) -> Graph:
    vertices: list[str] = []
    seen_v: set[str] = set()
    edges: list[tuple[str, str, str]] = []
    seen_e: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        for tok in parts[1:]:
            if not IDENT.match(tok):
                raise ParseError(lineno, f"bad identifier {tok!r}")
        if parts[0] == "vertex" and len(parts) == 2:
            if parts[1] in seen_v:
                raise ParseError(lineno, f"duplicate vertex {parts[1]!r}")
            seen_v.add(parts[1])
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 4:
            e, s, r = parts[1:]
            if e in seen_e:
                raise ParseError(lineno, f"duplicate edge {e!r}")
            for x in (s, r):
                if x not in seen_v:
                    raise ParseError(lineno, f"unknown vertex {x!r}")
            seen_e.add(e)
            edges.append((e, s, r))
        else:
            raise ParseError(lineno, f"cannot parse {line!r}")
    if not vertices:
        raise ParseError(0, "graph has no vertices")
    return Graph(vertices, edges)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


# paths


@dataclass(frozen=True, slots=True)
class Path:
    """Directed path: start vertex, edge tuple, end vertex."""

    start: str
    edges: tuple[str, ...]
    end: str

    def __len__(self):
        return len(self.edges)

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise GraphError(f"cannot concatenate paths ending at {self.end} and starting at {other.start}")
        return Path(self.start, self.edges + other.edges, other.end)

    def is_prefix_of(self, other: "Path") -> bool:
        n = len(self.edges)
        return self.start == other.start and other.edges[:n] == self.edges

    def suffix_after(self, prefix: "Path") -> "Path":
        return Path(prefix.end, self.edges[len(prefix.edges):], self.end)

    def __str__(self):
        return ".".join(self.edges) if self.edges else "@" + self.start


def empty_path(v: str) -> Path:
    return Path(v, (), v)


def make_path(g: Graph, edges: Iterable[str] = (), base: str | None = None) -> Path:
    edges = tuple(edges)
    if not edges:
        if base is None:
            raise GraphError("empty path needs a base vertex")
        return empty_path(g.check_vertex(base))
    for e in edges:
        g.check_edge(e)
    if base is not None and base != g.src[edges[0]]:
        raise GraphError(f"path does not start at {base}")
    for a, b in zip(edges, edges[1:]):
        if g.rng[a] != g.src[b]:
            raise GraphError(f"edges {a} and {b} are not consecutive")
    return Path(g.src[edges[0]], edges, g.rng[edges[-1]])


def parse_path(g: Graph, text: str) -> Path:
    text = text.strip()
    if text.startswith("@"):
        return empty_path(g.check_vertex(text[1:]))
    if not text:
        raise GraphError("empty path text")
    return make_path(g, text.split("."))


def paths_from(g: Graph, v: str, length: int) -> list[Path]:
    """All directed paths of exactly the given length starting at v."""
    layer = [empty_path(v)]
    for _ in range(length):
        layer = [Path(p.start, p.edges + (e,), g.rng[e]) for p in layer for e in g.out_edges(p.end)]
    return layer


def paths_upto(g: Graph, v: str, maxlen: int) -> list[Path]:
    out: list[Path] = []
    layer = [empty_path(v)]
    for k in range(maxlen + 1):
        out += layer
        if k < maxlen:
            layer = [Path(p.start, p.edges + (e,), g.rng[e]) for p in layer for e in g.out_edges(p.end)]
    return out


@dataclass(frozen=True, slots=True)
class GeneralPath:
    """Path using edges in either direction; sign +1 is forward."""

    base: str
    steps: tuple[tuple[str, int], ...]

    def end(self, g: Graph) -> str:
        v = self.base
        for e, d in self.steps:
            a, b = (g.src[e], g.rng[e]) if d > 0 else (g.rng[e], g.src[e])
            if a != v:
                raise GraphError(f"step {e} does not continue from {v}")
            v = b
        return v


def out_degree(g: Graph, v: str) -> int:
    return len(g.out_edges(v))


def is_ne_path(g: Graph, p: Path) -> bool:
    return all(len(g.out_edges(g.src[e])) == 1 for e in p.edges)


# ~-classes and other partitions


def sim_classes(g: Graph) -> list[tuple[str, ...]]:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        s = g.src[e]
        if len(g.out_edges(s)) == 1:
            a, b = find(s), find(g.rng[e])
            if a != b:
                if g.vindex(a) < g.vindex(b):
                    parent[b] = a
                else:
                    parent[a] = b
    return _blocks(g, find)


def _blocks(g: Graph, key) -> list[tuple[str, ...]]:
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(key(v), []).append(v)
    return sorted((tuple(b) for b in groups.values()), key=lambda b: g.vindex(b[0]))


def sim_class_of(g: Graph, v: str) -> tuple[str, ...]:
    g.check_vertex(v)
    return next(b for b in sim_classes(g) if v in b)


def class_subgraph(g: Graph, v: str) -> Graph:
    return g.induced(sim_class_of(g, v))


def reachable(g: Graph, v: str) -> list[str]:
    """Vertices reachable from v, in BFS order."""
    g.check_vertex(v)
    seen = {v}
    order = [v]
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u):
            w = g.rng[e]
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def reachable_subgraph(g: Graph, v: str) -> Graph:
    return g.induced(reachable(g, v))


def directed_spanning_tree(g: Graph, v: str) -> frozenset[str]:
    g.check_vertex(v)
    seen = {v}
    tree = []
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u):
            w = g.rng[e]
            if w not in seen:
                seen.add(w)
                tree.append(e)
                queue.append(w)
    return frozenset(tree)


def strongly_connected_components(g: Graph) -> list[tuple[str, ...]]:
    comp = {}
    for i, block in enumerate(nx.strongly_connected_components(g.to_networkx())):
        for v in block:
            comp[v] = i
    return _blocks(g, comp.__getitem__)


def is_connected(g: Graph) -> bool:
    return len(g.vertices) > 0 and nx.is_weakly_connected(g.to_networkx())


# cycles


def cycles_up_to_conjugacy(g: Graph, max_vertices: int = MAX_VERTICES) -> list[Path]:
    """One representative per conjugacy class of cycles.

    Each cycle is found once, rooted at its least vertex, then rotated to start
    at its least edge.
    """
    if len(g.vertices) > max_vertices:
        raise GraphError(f"graph exceeds {max_vertices} vertices")
    found = []
    for root in g.vertices:
        ri = g.vindex(root)
        stack = [(root, (), {root})]
        while stack:
            v, es, used = stack.pop()
            for e in g.out_edges(v):
                w = g.rng[e]
                if w == root:
                    found.append(es + (e,))
                elif g.vindex(w) > ri and w not in used:
                    stack.append((w, es + (e,), used | {w}))
    reps = []
    for es in found:
        k = min(range(len(es)), key=lambda i: g.eindex(es[i]))
        es = es[k:] + es[:k]
        reps.append(Path(g.src[es[0]], es, g.src[es[0]]))
    reps.sort(key=lambda c: [g.eindex(e) for e in c.edges])
    return reps


def canonical_cycle(g: Graph, edges: Iterable[str]) -> Path:
    """Validate a cycle given by its edges and rotate it to canonical form."""
    es = tuple(edges)
    p = make_path(g, es)
    if not es or p.start != p.end or len({g.src[e] for e in es}) != len(es):
        raise GraphError(f"{'.'.join(es)} is not a cycle")
    k = min(range(len(es)), key=lambda i: g.eindex(es[i]))
    es = es[k:] + es[:k]
    return Path(g.src[es[0]], es, g.src[es[0]])


def ne_cycles(g: Graph) -> list[Path]:
    return [c for c in cycles_up_to_conjugacy(g) if is_ne_path(g, c)]


# morphisms


@dataclass(frozen=True)
class GraphMorphism:
    domain: Graph
    codomain: Graph
    vmap: Mapping[str, str]
    emap: Mapping[str, str]

    def image(self, p: Path) -> Path:
        return Path(self.vmap[p.start], tuple(self.emap[e] for e in p.edges), self.vmap[p.end])


class MorphismKind(enum.Enum):
    NOT_MORPHISM = "NotMorphism"
    MORPHISM = "Morphism"
    DIRECTED_IMMERSION = "DirectedImmersion"
    DIRECTED_COVER = "DirectedCover"


def check_morphism(m: GraphMorphism) -> MorphismKind:
    d, c = m.domain, m.codomain
    if set(m.vmap) != set(d.vertices) or set(m.emap) != set(d.edges):
        return MorphismKind.NOT_MORPHISM
    if not all(c.has_vertex(x) for x in m.vmap.values()) or not all(c.has_edge(x) for x in m.emap.values()):
        return MorphismKind.NOT_MORPHISM
    for e in d.edges:
        f = m.emap[e]
        if m.vmap[d.src[e]] != c.src[f] or m.vmap[d.rng[e]] != c.rng[f]:
            return MorphismKind.NOT_MORPHISM
    injective = bijective = True
    for v in d.vertices:
        imgs = [m.emap[e] for e in d.out_edges(v)]
        if len(set(imgs)) != len(imgs):
            injective = bijective = False
            break
        if len(imgs) != len(c.out_edges(m.vmap[v])):
            bijective = False
    if bijective:
        return MorphismKind.DIRECTED_COVER
    if injective:
        return MorphismKind.DIRECTED_IMMERSION
    return MorphismKind.MORPHISM


def load_morphism(text: str, read=read_graph, base_dir=None) -> GraphMorphism:
    import os

    graphs: list[Graph] = []
    vmap: dict[str, str] = {}
    emap: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "graph" and len(parts) == 2:
            if len(graphs) == 2:
                raise ParseError(lineno, "more than two graph lines")
            path = parts[1]
            if base_dir is not None and not os.path.isabs(path):
                path = os.path.join(base_dir, path)
            graphs.append(read(path))
        elif parts[0] in ("map-vertex", "map-edge") and len(parts) == 3:
            if len(graphs) != 2:
                raise ParseError(lineno, "map lines must follow two graph lines")
            dom, cod = graphs
            a, b = parts[1:]
            if parts[0] == "map-vertex":
                if not dom.has_vertex(a) or not cod.has_vertex(b):
                    raise ParseError(lineno, f"unknown vertex in {line!r}")
                vmap[a] = b
            else:
                if not dom.has_edge(a) or not cod.has_edge(b):
                    raise ParseError(lineno, f"unknown edge in {line!r}")
                emap[a] = b
        else:
            raise ParseError(lineno, f"cannot parse {line!r}")
    if len(graphs) != 2:
        raise ParseError(0, "morphism file needs two graph lines")
    return GraphMorphism(graphs[0], graphs[1], vmap, emap)


def _require(m: GraphMorphism, kinds: tuple[MorphismKind, ...]):
    k = check_morphism(m)
    if k not in kinds:
        raise GraphError(f"morphism is {k.value}, need {' or '.join(x.value for x in kinds)}")


def _step(m: GraphMorphism, v: str, a: str) -> str | None:
    for e in m.domain.out_edges(v):
        if m.emap[e] == a:
            return e
    return None


def lift_path(m: GraphMorphism, p: Path, v: str) -> Path:
    _require(m, (MorphismKind.DIRECTED_COVER,))
    prefix, lift = _lift(m, p, v)
    assert len(prefix) == len(p)
    return lift


def lift_max_prefix(m: GraphMorphism, p: Path, v: str) -> tuple[Path, Path]:
    _require(m, (MorphismKind.DIRECTED_COVER, MorphismKind.DIRECTED_IMMERSION))
    return _lift(m, p, v)


def _lift(m: GraphMorphism, p: Path, v: str) -> tuple[Path, Path]:
    if m.vmap.get(v) != p.start:
        raise GraphError(f"{v} does not lie over {p.start}")
    es = []
    cur = v
    for a in p.edges:
        e = _step(m, cur, a)
        if e is None:
            break
        es.append(e)
        cur = m.domain.rng[e]
    n = len(es)
    prefix = Path(p.start, p.edges[:n], m.codomain.rng[p.edges[n - 1]] if n else p.start)
    return prefix, Path(v, tuple(es), cur)


def lift_circuit_power(m: GraphMorphism, p: Path) -> tuple[str, int, Path]:
    """Lift p repeatedly from a fiber vertex until the walk revisits a vertex.

    Returns the revisited vertex, the period n and the lift of p^n there.
    """
    _require(m, (MorphismKind.DIRECTED_COVER,))
    if not p.edges or p.start != p.end:
        raise GraphError("p must be a nonempty directed circuit")
    fiber = [u for u in m.domain.vertices if m.vmap[u] == p.start]
    if not fiber:
        raise GraphError(f"empty fiber over {p.start}")
    walk = [fiber[0]]
    lifts = []
    while True:
        q = lift_path(m, p, walk[-1])
        lifts.append(q)
        if q.end in walk:
            i = walk.index(q.end)
            es = tuple(e for lq in lifts[i:] for e in lq.edges)
            return q.end, len(walk) - i, Path(q.end, es, q.end)
        walk.append(q.end)


@dataclass(frozen=True)
class NotImmersible:
    pass


@dataclass(frozen=True)
class TreeWithSink:
    sink: str
    max_depth: int


@dataclass(frozen=True)
class TreeNoSinkCover:
    pass


@dataclass(frozen=True)
class UniqueCycleCover:
    cycle_length: int


def classify_circle_immersion(g: Graph):
    if not is_connected(g):
        raise GraphError("graph is not connected")
    if any(len(g.out_edges(v)) > 1 for v in g.vertices):
        return NotImmersible()
    sinks = [v for v in g.vertices if not g.out_edges(v)]
    if sinks:
        sink = sinks[0]
        depth = {}
        for v in g.vertices:
            n, u = 0, v
            while g.out_edges(u):
                u = g.rng[g.out_edges(u)[0]]
                n += 1
            depth[v] = n
        return TreeWithSink(sink, max(depth.values()))
    # every vertex has out-degree 1: a finite graph of this kind has exactly one cycle
    cycles = cycles_up_to_conjugacy(g)
    if not cycles:
        return TreeNoSinkCover()
    return UniqueCycleCover(len(cycles[0]))


def bouquet(n: int, vertex: str = "v", names: Iterable[str] | None = None) -> Graph:
    names = list(names) if names is not None else [chr(ord("a") + i) for i in range(n)]
    return Graph([vertex], [(a, vertex, vertex) for a in names[:n]])


def morphism_to_bouquet(g: Graph, b: Graph) -> GraphMorphism:
    """The map of g onto a single-loop bouquet, when all out-degrees are at most 1."""
    (v,) = b.vertices
    (a,) = b.edges
    return GraphMorphism(g, b, {u: v for u in g.vertices}, {e: a for e in g.edges})
