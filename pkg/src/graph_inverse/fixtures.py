"""Small named graphs shipped with the package."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .graphs import Graph, GraphMorphism, load_graph, load_morphism

GRAPHS = ("B1", "B2", "C3", "L2", "G61", "G62", "G72", "D72", "COV2", "EDGE")
MORPHISMS = ("C3_B1", "COV2_B2", "EDGE_B1")


def data_path(name: str):
    return resources.files(__package__) / "data" / name


@lru_cache(maxsize=None)
def graph(name: str) -> Graph:
    return load_graph(data_path(f"{name}.graph").read_text(encoding="utf-8"))


def morphism(name: str) -> GraphMorphism:
    text = data_path(f"{name}.morphism").read_text(encoding="utf-8")
    return load_morphism(text, read=lambda p: graph(p.removesuffix(".graph")))
