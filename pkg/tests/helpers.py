"""Shared builders for test fixtures: N-Triples text, graphs, vector files."""

from __future__ import annotations

import random

from relgap.embeddings import EmbeddingStore
from relgap.graphs import UndirectedGraph

import numpy as np

T = "http://t/"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"
RDFS_DOMAIN = "http://www.w3.org/2000/01/rdf-schema#domain"
RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#range"
RDFS_SUBCLASS_OF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"


def iri(name: str) -> str:
    return name if name.startswith("http://") else T + name


def line(s: str, p: str, o: str) -> str:
    return f"<{iri(s)}> <{iri(p)}> <{iri(o)}> ."


def cls(name: str) -> str:
    return line(name, RDF_TYPE, OWL_CLASS)


def prop(name: str, domain: str | None = None, rng: str | None = None) -> str:
    lines = [line(name, RDF_TYPE, OWL_OBJECT_PROPERTY)]
    if domain is not None:
        lines.append(line(name, RDFS_DOMAIN, domain))
    if rng is not None:
        lines.append(line(name, RDFS_RANGE, rng))
    return "\n".join(lines)


def typed(individual: str, class_name: str) -> str:
    return line(individual, RDF_TYPE, class_name)


def rel(s: str, p: str, o: str) -> str:
    return line(s, p, o)


def label(subject: str, text: str) -> str:
    return f'<{iri(subject)}> <{RDFS_LABEL}> "{text}" .'


def subclass(sub: str, sup: str) -> str:
    return line(sub, RDFS_SUBCLASS_OF, sup)


def ontology_text(*chunks: str) -> str:
    return "\n".join(chunks) + "\n"


def random_graph(rng: random.Random, n: int, p: float) -> UndirectedGraph:
    """Erdos-Renyi graph over nodes n00..n<n-1>, edge probability p."""
    graph = UndirectedGraph()
    names = [f"{T}n{i:02d}" for i in range(n)]
    for name in names:
        graph.add_node(name)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                graph.add_edge(names[i], names[j])
    return graph


def edge_list(graph: UndirectedGraph) -> list[tuple[str, str]]:
    out = []
    for x, adj in graph.adjacency.items():
        for y in adj:
            if x < y:
                out.append((x, y))
    return sorted(out)


def store(**vectors: list[float]) -> EmbeddingStore:
    """In-memory embedding store from keyword token -> component list."""
    arrays = {tok: np.array(vec, dtype=np.float64) for tok, vec in vectors.items()}
    dims = {a.size for a in arrays.values()}
    assert len(dims) == 1
    return EmbeddingStore(dimension=dims.pop(), vectors=arrays)


def write_glove(path, vectors: dict[str, list[float]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for token, vec in vectors.items():
            fh.write(token + " " + " ".join(repr(float(v)) for v in vec) + "\n")
