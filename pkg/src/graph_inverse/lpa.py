"""Leavitt path algebras over the rationals, in the natural basis.

A special edge gamma(v) is fixed at every non-sink vertex.  Basis elements are
the elements p q* of I(G) that do not end in a common special edge (and do not
end in a common edge whose source has out-degree 1, which is then special).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .contraction import IsoWitness, apply_witness
from .gis import ZERO, Elem, Element, enumerate_elements, format_element, gis_inverse, gis_multiply
from .graphs import Graph, GraphError, Path, cycles_up_to_conjugacy, empty_path
from .leavitt import li_multiply, li_reduce


def default_gamma(g: Graph) -> dict[str, str]:
    return {v: g.out_edges(v)[0] for v in g.vertices if g.out_edges(v)}


def check_gamma(g: Graph, gamma: Mapping[str, str]) -> None:
    for v in g.vertices:
        if g.out_edges(v):
            if gamma.get(v) not in g.out_edges(v):
                raise GraphError(f"special edge at {v} is not an out-edge of {v}")
        elif v in gamma:
            raise GraphError(f"sink {v} has no special edge")


class AlgebraElement:
    """Finite rational combination of natural-basis elements."""

    __slots__ = ("graph", "gamma", "terms")

    def __init__(self, graph: Graph, gamma: Mapping[str, str], terms: Mapping[Elem, Fraction] | None = None):
        self.graph = graph
        self.gamma = dict(gamma)
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c != 0}

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.graph == other.graph and self.gamma == other.gamma and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"AlgebraElement({format_algebra(self)})"

    def is_zero(self) -> bool:
        return not self.terms


def _sort_key(g: Graph, x: Elem):
    return (x.length, [g.eindex(e) for e in x.p.edges], [g.eindex(e) for e in x.q.edges], g.vindex(x.p.end))


def format_algebra(x: AlgebraElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for k in sorted(x.terms, key=lambda k: _sort_key(x.graph, k)):
        parts.append(f"{x.terms[k]}*{format_element(k)}")
    return " + ".join(parts)


def is_basis_element(g: Graph, gamma: Mapping[str, str], x: Element) -> bool:
    if x is ZERO:
        return False
    p, q = x.p.edges, x.q.edges
    if p and q and p[-1] == q[-1]:
        return gamma[g.src[p[-1]]] != p[-1]
    return True


def _add_into(acc: dict, terms: Mapping, c) -> None:
    for k, v in terms.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def _expand(g: Graph, gamma: Mapping[str, str], x: Element, memo: dict) -> dict:
    x = li_reduce(g, x)
    if x is ZERO:
        return {}
    if x in memo:
        return memo[x]
    p, q = x.p.edges, x.q.edges
    if p and q and p[-1] == q[-1] and gamma[g.src[p[-1]]] == p[-1]:
        e = p[-1]
        u = g.src[e]
        head = Elem(Path(x.p.start, p[:-1], u), Path(x.q.start, q[:-1], u))
        out = dict(_expand(g, gamma, head, memo))
        for f in g.out_edges(u):
            if f != e:
                t = Path(u, (f,), g.rng[f])
                _add_into(out, {Elem(head.p + t, head.q + t): Fraction(1)}, -1)
    else:
        out = {x: Fraction(1)}
    memo[x] = out
    return out


def to_basis(g: Graph, gamma: Mapping[str, str] | None, x: Element) -> AlgebraElement:
    if gamma is None:
        gamma = default_gamma(g)
    check_gamma(g, gamma)
    return AlgebraElement(g, gamma, _expand(g, gamma, x, {}))


def _same(x: AlgebraElement, y: AlgebraElement):
    if x.graph != y.graph or x.gamma != y.gamma:
        raise GraphError("algebra elements over different graphs or special edges")


def alg_add(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    acc = dict(x.terms)
    _add_into(acc, y.terms, 1)
    return AlgebraElement(x.graph, x.gamma, acc)


def alg_scale(c, x: AlgebraElement) -> AlgebraElement:
    c = Fraction(c)
    return AlgebraElement(x.graph, x.gamma, {k: c * v for k, v in x.terms.items()})


def alg_sub(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return alg_add(x, alg_scale(-1, y))


def alg_multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    _same(x, y)
    g, gamma = x.graph, x.gamma
    memo: dict = {}
    acc: dict = {}
    for a, c in x.terms.items():
        for b, d in y.terms.items():
            z = gis_multiply(a, b)
            if z is not ZERO:
                _add_into(acc, _expand(g, gamma, z, memo), c * d)
    return AlgebraElement(g, gamma, acc)


def basis_elements(g: Graph, gamma: Mapping[str, str] | None, max_len: int) -> list[Elem]:
    if gamma is None:
        gamma = default_gamma(g)
    return [x for x in enumerate_elements(g, max_len) if is_basis_element(g, gamma, x)]


def longest_path_length(g: Graph) -> int:
    if cycles_up_to_conjugacy(g):
        raise GraphError("graph has a cycle")
    depth: dict[str, int] = {}

    def d(v):
        if v not in depth:
            depth[v] = max((1 + d(g.rng[e]) for e in g.out_edges(v)), default=0)
        return depth[v]

    return max(d(v) for v in g.vertices)


def dimension_if_acyclic(g: Graph) -> int:
    n = longest_path_length(g)
    return len(basis_elements(g, None, 2 * n))


# maps induced by an isomorphism of Leavitt inverse semigroups


def _formal(g: Graph, xs: Iterable[tuple[Element, int]]) -> dict:
    """Formal combination of LI elements, without the Cuntz-Krieger relation."""
    acc: dict = {}
    for x, c in xs:
        x = li_reduce(g, x)
        if x is not ZERO:
            _add_into(acc, {x: Fraction(1)}, c)
    return acc


def _edge(g: Graph, e: str) -> Elem:
    return Elem(Path(g.src[e], (e,), g.rng[e]), empty_path(g.rng[e]))


def induced_algebra_iso_check(
    w: IsoWitness,
    max_len: int,
    gamma_gamma: Mapping[str, str] | None = None,
    gamma_delta: Mapping[str, str] | None = None,
) -> bool:
    """Check that the witness induces an algebra map L(G) -> L(D).

    Two checks: at every vertex of out-degree at least 2 the image of the
    Cuntz-Krieger element is p (sum of e e* - u) p* in the formal algebra of
    LI(D); and the linear extension of the witness is multiplicative on
    natural-basis pairs of total length up to max_len.  A witness whose
    evaluation breaks down counts as a failure.
    """
    g, d = w.gamma.source, w.delta.source
    gg = gamma_gamma or default_gamma(g)
    gd = gamma_delta or default_gamma(d)
    check_gamma(g, gg)
    check_gamma(d, gd)
    try:
        return _ck_images_ok(w, g, d) and _multiplicative(w, g, d, gg, gd, max_len)
    except (GraphError, KeyError):
        return False


def _ck_images_ok(w: IsoWitness, g: Graph, d: Graph) -> bool:
    for v in g.vertices:
        es = g.out_edges(v)
        if len(es) < 2:
            continue
        imgs = [apply_witness(w, _edge(g, e)) for e in es]
        if any(x is ZERO for x in imgs):
            return False
        lhs = _formal(d, [(li_multiply(d, x, gis_inverse(x)), 1) for x in imgs])
        _add_into(lhs, _formal(d, [(apply_witness(w, Elem(empty_path(v), empty_path(v))), 1)]), -1)
        paths = [x.p.edges for x in imgs]
        k = 0
        while all(len(p) > k for p in paths) and len({p[k] for p in paths}) == 1:
            k += 1
        if any(len(p) <= k for p in paths):
            return False
        heads = [p[k] for p in paths]
        start = imgs[0].p.start
        prefix = Path(start, paths[0][:k], d.src[heads[0]])
        u = prefix.end
        if sorted(heads) != sorted(d.out_edges(u)):
            return False
        rhs = _formal(d, [(Elem(prefix + _edge(d, h).p, prefix + _edge(d, h).p), 1) for h in heads])
        _add_into(rhs, _formal(d, [(Elem(prefix, prefix), 1)]), -1)
        if lhs != rhs:
            return False
    return True


def _multiplicative(w, g, d, gg, gd, max_len) -> bool:
    cache: dict = {}

    def eta(x: AlgebraElement) -> AlgebraElement:
        acc: dict = {}
        for k, c in x.terms.items():
            if k not in cache:
                cache[k] = to_basis(d, gd, apply_witness(w, k))
            _add_into(acc, cache[k].terms, c)
        return AlgebraElement(d, gd, acc)

    basis = basis_elements(g, gg, max_len)
    one = {b: AlgebraElement(g, gg, {b: 1}) for b in basis}
    for x in basis:
        for y in basis:
            if x.length + y.length > max_len:
                continue
            lhs = eta(alg_multiply(one[x], one[y]))
            rhs = alg_multiply(eta(one[x]), eta(one[y]))
            if lhs != rhs:
                return False
    return True


# one step of the NE-edge contraction


def contraction_target(g: Graph, e: str) -> Graph:
    g.check_edge(e)
    s = g.src[e]
    if g.out_edges(s) != (e,) or g.in_edges(s):
        raise GraphError(f"{s} is not a source whose only out-edge is {e}")
    return Graph([v for v in g.vertices if v != s], [t for t in g.triples() if t[0] != e])


def ne_contraction_retraction(g: Graph, e: str, x: AlgebraElement) -> AlgebraElement:
    h = contraction_target(g, e)
    if x.graph != g:
        raise GraphError("element is not over the given graph")
    s, r = g.src[e], g.rng[e]
    gamma = {v: a for v, a in x.gamma.items() if v != s}

    def cut(p: Path) -> Path:
        if p.start != s:
            return p
        if not p.edges:
            return empty_path(r)
        return Path(r, p.edges[1:], p.end)

    acc: dict = {}
    memo: dict = {}
    for k, c in x.terms.items():
        _add_into(acc, _expand(h, gamma, Elem(cut(k.p), cut(k.q)), memo), c)
    return AlgebraElement(h, gamma, acc)


def bouquet_lpa_iso(n: int, k1: int, k2: int) -> bool:
    if n < 2:
        raise ValueError("n must be at least 2")
    if k1 < 1 or k2 < 1:
        raise ValueError("vertex counts must be positive")
    return n == 2 or gcd(k1, n - 1) == gcd(k2, n - 1)
