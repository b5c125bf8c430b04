"""Undirected neighbour graphs over classes and over individuals.

The class graph links the domain class to the range class of every object
property that declares both; the instance graph links the two individuals of
every relation assertion.  Both are simple graphs: symmetric adjacency, no
self-loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnknownNodeError
from .ontology import Ontology


@dataclass
class UndirectedGraph:
    nodes: set[str] = field(default_factory=set)
    adjacency: dict[str, set[str]] = field(default_factory=dict)

    def add_node(self, node: str) -> None:
        self.nodes.add(node)
        self.adjacency.setdefault(node, set())

    def add_edge(self, x: str, y: str) -> None:
        if x == y:
            return
        self.add_node(x)
        self.add_node(y)
        self.adjacency[x].add(y)
        self.adjacency[y].add(x)

    def neighbours(self, x: str) -> set[str]:
        if x not in self.nodes:
            raise UnknownNodeError(x)
        return self.adjacency[x]

    def has_edge(self, x: str, y: str) -> bool:
        return x in self.nodes and y in self.adjacency[x]

    def edge_count(self) -> int:
        return sum(len(adj) for adj in self.adjacency.values()) // 2


# Domain aliases; builders below decide what the nodes and edges mean.
ClassGraph = UndirectedGraph
InstanceGraph = UndirectedGraph


def build_class_graph(onto: Ontology) -> ClassGraph:
    """One node per class; an edge {domain, range} for every object property
    that declares both (reflexive domain=range properties contribute nothing).
    """
    graph = UndirectedGraph()
    for cls in onto.classes:
        graph.add_node(cls)
    for domain, rng in onto.object_properties.values():
        if domain is not None and rng is not None and domain != rng:
            graph.add_edge(domain, rng)
    return graph


def build_instance_graph(onto: Ontology) -> InstanceGraph:
    """One node per individual; an edge {i, j} for every relation assertion."""
    graph = UndirectedGraph()
    for individual in onto.individuals:
        graph.add_node(individual)
    for subject, _prop, obj in onto.relation_assertions:
        if subject != obj:
            graph.add_edge(subject, obj)
    return graph


def connected_class_pairs(graph: UndirectedGraph) -> set[tuple[str, str]]:
    """The edge set as unordered pairs, normalized so x < y."""
    pairs: set[tuple[str, str]] = set()
    for x, adj in graph.adjacency.items():
        for y in adj:
            if x < y:
                pairs.add((x, y))
    return pairs


def edge_list_text(graph: UndirectedGraph) -> str:
    """Debug dump: one tab-separated edge per line, sorted."""
    lines = [f"{x}\t{y}" for x, y in sorted(connected_class_pairs(graph))]
    return "\n".join(lines) + ("\n" if lines else "")


def without_edge(graph: UndirectedGraph, x: str, y: str) -> UndirectedGraph:
    """A copy of the graph with edge {x, y} removed (if present)."""
    adjacency = {node: set(adj) for node, adj in graph.adjacency.items()}
    adjacency.get(x, set()).discard(y)
    adjacency.get(y, set()).discard(x)
    return UndirectedGraph(nodes=set(graph.nodes), adjacency=adjacency)
