"""Arithmetic in the graph inverse semigroup I(G).

A nonzero element is a pair (p, q) of directed paths with a common end,
read as p q*.  ``ZERO`` is the zero element.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graphs import Graph, GraphError, Path, empty_path, parse_path, paths_upto, reachable_subgraph


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "0"

    __str__ = __repr__

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


@dataclass(frozen=True, slots=True)
class Elem:
    p: Path
    q: Path

    def __post_init__(self):
        if self.p.end != self.q.end:
            raise GraphError(f"range mismatch: {self.p.end} != {self.q.end}")

    def __str__(self):
        return format_element(self)

    @property
    def length(self) -> int:
        return len(self.p) + len(self.q)


Element = Union[Elem, _Zero]


def make_element(g: Graph, p: Path, q: Path) -> Elem:
    for path in (p, q):
        g.check_vertex(path.start)
    return Elem(p, q)


def vertex(v: str) -> Elem:
    e = empty_path(v)
    return Elem(e, e)


def is_zero(x) -> bool:
    return x is ZERO


def gis_multiply(x: Element, y: Element) -> Element:
    if x is ZERO or y is ZERO:
        return ZERO
    p, q, r, s = x.p, x.q, y.p, y.q
    if q.is_prefix_of(r):
        t = r.suffix_after(q)
        return Elem(p + t, s)
    if r.is_prefix_of(q):
        t = q.suffix_after(r)
        return Elem(p, s + t)
    return ZERO


def product(*xs: Element) -> Element:
    out = xs[0]
    for x in xs[1:]:
        out = gis_multiply(out, x)
    return out


def gis_inverse(x: Element) -> Element:
    if x is ZERO:
        return ZERO
    return Elem(x.q, x.p)


def is_idempotent(x: Element) -> bool:
    return x is ZERO or x.p == x.q


def gis_leq(x: Element, y: Element) -> bool:
    return x == gis_multiply(gis_multiply(x, gis_inverse(x)), y)


# the map to the free group on the edges


class _ZeroMark:
    def __repr__(self):
        return "ZeroMark"


ZERO_MARK = _ZeroMark()

FreeWord = tuple  # tuple of (edge, +1 | -1), freely reduced


def reduce_word(letters) -> FreeWord:
    out: list[tuple[str, int]] = []
    for a, s in letters:
        if out and out[-1] == (a, -s):
            out.pop()
        else:
            out.append((a, s))
    return tuple(out)


def word_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    return reduce_word(u + v)


def tau(x: Element):
    if x is ZERO:
        return ZERO_MARK
    return reduce_word([(e, 1) for e in x.p.edges] + [(e, -1) for e in reversed(x.q.edges)])


def universal_rank(g: Graph) -> int:
    return len(g.edges)


def local_universal_rank(g: Graph, v: str) -> int:
    h = reachable_subgraph(g, v)
    return len(h.edges) - len(h.vertices) + 1


def local_rank_at_idempotent(g: Graph, e: Element) -> int:
    if e is ZERO or e.p != e.q:
        raise GraphError("not a nonzero idempotent")
    return local_universal_rank(g, e.p.end)


def enumerate_elements(g: Graph, max_len: int) -> list[Element]:
    """Zero followed by all (p, q) with |p| + |q| <= max_len.

    Ordered by total length, then by the edge positions of p and q.
    """
    by_end: dict[str, list[Path]] = {}
    for v in g.vertices:
        for p in paths_upto(g, v, max_len):
            by_end.setdefault(p.end, []).append(p)
    out = []
    for ps in by_end.values():
        for p in ps:
            for q in ps:
                if len(p) + len(q) <= max_len:
                    out.append(Elem(p, q))

    def key(x):
        return (x.length, _pkey(g, x.p), _pkey(g, x.q))

    out.sort(key=key)
    return [ZERO] + out


def _pkey(g: Graph, p: Path):
    return (len(p), [g.eindex(e) for e in p.edges], g.vindex(p.start))


# text syntax


def format_element(x: Element) -> str:
    if x is ZERO:
        return "0"
    if not x.p.edges and not x.q.edges:
        return "@" + x.p.start
    return f"{x.p}|{x.q}"


def parse_element(g: Graph, text: str) -> Element:
    text = text.strip()
    if text == "0":
        return ZERO
    if "|" not in text:
        if text.startswith("@"):
            return vertex(g.check_vertex(text[1:]))
        raise GraphError(f"cannot parse element {text!r}")
    left, _, right = text.partition("|")
    return make_element(g, parse_path(g, left), parse_path(g, right))
