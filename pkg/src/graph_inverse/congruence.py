"""Rees quotients and 0-restricted congruences of I(G).

A congruence pair (W, f) consists of a set W of out-degree-1 vertices and a
value in {1, 2, ...} or INF for every cycle all of whose vertices lie in W.
It generates the congruence with e_v e_v* ~ v for v in W and c^f(c) ~ s(c).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .gis import ZERO, Elem, Element, enumerate_elements, gis_multiply
from .graphs import Graph, GraphError, Path, canonical_cycle, cycles_up_to_conjugacy


class _Inf:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "inf"


INF = _Inf()


# ideals


def hereditary_closure(g: Graph, seed: Iterable[str]) -> frozenset[str]:
    todo = [g.check_vertex(v) for v in seed]
    out = set(todo)
    while todo:
        v = todo.pop()
        for e in g.out_edges(v):
            if g.rng[e] not in out:
                out.add(g.rng[e])
                todo.append(g.rng[e])
    return frozenset(out)


def is_hereditary(g: Graph, h: Iterable[str]) -> bool:
    h = set(h)
    return all(g.rng[e] in h for v in h for e in g.out_edges(v))


def rees_quotient_graph(g: Graph, h: Iterable[str]) -> Graph:
    h = frozenset(h)
    for v in h:
        g.check_vertex(v)
    if not is_hereditary(g, h):
        raise GraphError("vertex set is not hereditary")
    return Graph([v for v in g.vertices if v not in h], [t for t in g.triples() if t[2] not in h])


def rees_image(h: Iterable[str], x: Element) -> Element:
    """Image of x in I(G)/J(h): zero when the range lies in h."""
    if x is ZERO or x.p.end in set(h):
        return ZERO
    return x


# congruence pairs


@dataclass(frozen=True)
class CongruencePair:
    W: frozenset
    f: Mapping  # canonical cycle edge tuple -> int or INF

    def __str__(self):
        ws = ",".join(sorted(self.W))
        fs = ", ".join(f"{'.'.join(c)}:{v!r}" for c, v in sorted(self.f.items()))
        return f"W={{{ws}}} f={{{fs}}}"


def make_pair(g: Graph, W: Iterable[str], f: Mapping | None = None) -> CongruencePair:
    """Build a pair, putting cycle keys in canonical rotation."""
    ff = {}
    for c, v in (f or {}).items():
        ff[canonical_cycle(g, c).edges] = v
    return CongruencePair(frozenset(W), ff)


def w_cycles(g: Graph, W: Iterable[str]) -> list[Path]:
    W = set(W)
    return [c for c in cycles_up_to_conjugacy(g) if all(g.src[e] in W for e in c.edges)]


def validate_pair(g: Graph, pair: CongruencePair) -> bool:
    if not all(g.has_vertex(v) and len(g.out_edges(v)) == 1 for v in pair.W):
        return False
    keys = {c.edges for c in w_cycles(g, pair.W)}
    if set(pair.f) != keys:
        return False
    return all(v is INF or (isinstance(v, int) and not isinstance(v, bool) and v >= 1) for v in pair.f.values())


def _require(g, pair):
    if not validate_pair(g, pair):
        raise GraphError(f"invalid congruence pair {pair}")


def parse_pair(g: Graph, text: str) -> CongruencePair:
    m = re.fullmatch(r"\s*W=\{([^}]*)\}\s*(?:f=\{([^}]*)\})?\s*", text)
    if not m:
        raise GraphError(f"cannot parse congruence pair {text!r}")
    W = [w.strip() for w in m.group(1).split(",") if w.strip()]
    f = {}
    for item in (m.group(2) or "").split(","):
        if not item.strip():
            continue
        cyc, _, val = item.partition(":")
        val = val.strip()
        f[tuple(cyc.strip().split("."))] = INF if val in ("inf", "∞") else int(val)
    pair = make_pair(g, W, f)
    _require(g, pair)
    return pair


def enumerate_pairs(g: Graph, max_f: int) -> list[CongruencePair]:
    deg1 = [v for v in g.vertices if len(g.out_edges(v)) == 1]
    values = list(range(1, max_f + 1)) + [INF]
    out = []
    for k in range(len(deg1) + 1):
        for W in itertools.combinations(deg1, k):
            keys = [c.edges for c in w_cycles(g, W)]
            for vals in itertools.product(values, repeat=len(keys)):
                out.append(CongruencePair(frozenset(W), dict(zip(keys, vals))))
    return out


# deciding the congruence


def _cycle_data(g: Graph, pair: CongruencePair) -> dict[str, tuple[tuple[str, ...], int, object]]:
    """For each vertex on a W-cycle: (cycle edges from that vertex, length, f)."""
    out = {}
    for key, val in pair.f.items():
        n = len(key)
        for i in range(n):
            rot = key[i:] + key[:i]
            out[g.src[rot[0]]] = (rot, n, val)
    return out


def normal_form(g: Graph, pair: CongruencePair, x: Element):
    """A canonical representative of the class of x.

    If following e_v from r(p) through W never reaches a W-cycle, the common
    W-suffix is stripped.  Otherwise both paths are pushed forward onto the
    cycle, each is split at its first cycle vertex, and only the difference
    of the two windings is kept, modulo f(c) times the cycle length.
    """
    _require(g, pair)
    return _normal_form(g, pair, _cycle_data(g, pair), x)


def _normal_form(g, pair, cyc, x):
    if x is ZERO:
        return ZERO
    W = pair.W
    v = x.p.end
    ext: list[str] = []
    seen = set()
    while v in W and v not in cyc and v not in seen:
        seen.add(v)
        e = g.out_edges(v)[0]
        ext.append(e)
        v = g.rng[e]
    if v not in cyc:
        p, q = x.p.edges, x.q.edges
        n = 0
        while n < min(len(p), len(q)) and p[-1 - n] == q[-1 - n] and g.src[p[-1 - n]] in W:
            n += 1
        if n == 0:
            return ("strip", x)
        end = g.src[p[-n]]
        return ("strip", Elem(Path(x.p.start, p[:-n], end), Path(x.q.start, q[:-n], end)))
    rot, n, val = cyc[v]
    on_cycle = {g.src[e] for e in rot}

    def split(path_edges, start):
        es = list(path_edges) + ext
        u = start
        for i, e in enumerate(es):
            if u in on_cycle:
                return tuple(es[:i]), u, len(es) - i
            u = g.rng[e]
        return tuple(es), u, 0

    pre_p, yp, lp = split(x.p.edges, x.p.start)
    pre_q, yq, lq = split(x.q.edges, x.q.start)
    diff = lp - lq
    if val is not INF:
        diff %= val * n
    return ("cycle", x.p.start, pre_p, yp, x.q.start, pre_q, yq, diff)


def quotient_equal(g: Graph, pair: CongruencePair, x: Element, y: Element) -> bool:
    _require(g, pair)
    cyc = _cycle_data(g, pair)
    return _normal_form(g, pair, cyc, x) == _normal_form(g, pair, cyc, y)


def quotient_classes(g: Graph, pair: CongruencePair, elements: Iterable[Element]) -> dict:
    _require(g, pair)
    cyc = _cycle_data(g, pair)
    out: dict = {}
    for x in elements:
        out.setdefault(_normal_form(g, pair, cyc, x), []).append(x)
    return out


def generators(g: Graph, pair: CongruencePair) -> list[tuple[Element, Element]]:
    out = []
    for v in pair.W:
        e = g.out_edges(v)[0]
        ep = Path(v, (e,), g.rng[e])
        vv = Path(v, (), v)
        out.append((Elem(ep, ep), Elem(vv, vv)))
    for key, val in pair.f.items():
        if val is INF:
            continue
        for i in range(len(key)):
            rot = key[i:] + key[:i]
            s = g.src[rot[0]]
            vv = Path(s, (), s)
            out.append((Elem(Path(s, rot * val, s), vv), Elem(vv, vv)))
    return out


# quotients that are again graph inverse semigroups


def preserves_gis(g: Graph, pair: CongruencePair) -> bool:
    _require(g, pair)
    for v in pair.W:
        e = g.out_edges(v)[0]
        if g.rng[e] != v or pair.f.get((e,)) != 1:
            return False
    return True


def quotient_graph_if_gis(g: Graph, pair: CongruencePair) -> Graph:
    if not preserves_gis(g, pair):
        raise GraphError("quotient is not a graph inverse semigroup")
    return g.without_edges(g.out_edges(v)[0] for v in pair.W)


def retraction(g: Graph, pair: CongruencePair, x: Element) -> Element:
    """Delete the trailing W-loops from p and q."""
    if not preserves_gis(g, pair):
        raise GraphError("quotient is not a graph inverse semigroup")
    if x is ZERO:
        return ZERO
    loops = {g.out_edges(v)[0] for v in pair.W}

    def cut(p: Path) -> Path:
        es = p.edges
        while es and es[-1] in loops:
            es = es[:-1]
        return Path(p.start, es, p.end)

    return Elem(cut(x.p), cut(x.q))


# brute-force closure, used as a test oracle


class _UF:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def closure_oracle(g: Graph, gens: Iterable[tuple[Element, Element]], max_len: int) -> dict:
    """Smallest congruence-like equivalence on the bounded element set.

    Returns a map from each element to a class label.  Generators that fall
    outside the bounded set are ignored, and products are followed only while
    they stay inside it.
    """
    elems = enumerate_elements(g, max_len)
    universe = set(elems)
    uf = _UF(elems)
    for a, b in gens:
        if a in universe and b in universe:
            uf.union(a, b)
    multipliers = elems
    changed = True
    while changed:
        changed = False
        classes: dict = {}
        for x in elems:
            classes.setdefault(uf.find(x), []).append(x)
        for members in classes.values():
            if len(members) < 2:
                continue
            for s in multipliers:
                for side in (0, 1):
                    imgs = [gis_multiply(s, x) if side == 0 else gis_multiply(x, s) for x in members]
                    imgs = [z for z in imgs if z in universe]
                    for z in imgs[1:]:
                        changed |= uf.union(imgs[0], z)
    return {x: uf.find(x) for x in elems}
