"""CSR adjacency arrays for the pairwise kernels.

Nodes are numbered in lexicographic IRI order and each row's neighbour ids
are sorted ascending, so merge-style intersections visit common neighbours
in a fixed order on every backend.
"""

from __future__ import annotations

import numpy as np


def graph_csr(graph) -> tuple[list[str], dict[str, int], np.ndarray, np.ndarray]:
    """Return (nodes, index, indptr, indices) for an UndirectedGraph."""
    nodes = sorted(graph.nodes)
    index = {node: i for i, node in enumerate(nodes)}
    indptr = np.zeros(len(nodes) + 1, dtype=np.int64)
    for i, node in enumerate(nodes):
        indptr[i + 1] = indptr[i] + len(graph.adjacency[node])
    indices = np.empty(int(indptr[-1]), dtype=np.int64)
    for i, node in enumerate(nodes):
        row = sorted(index[n] for n in graph.adjacency[node])
        indices[indptr[i] : indptr[i + 1]] = row
    return nodes, index, indptr, indices


def pair_id_arrays(index: dict[str, int], pairs) -> tuple[np.ndarray, np.ndarray]:
    """Map an iterable of (x, y) node pairs to two aligned id arrays."""
    xs = np.fromiter((index[x] for x, _ in pairs), dtype=np.int64, count=len(pairs))
    ys = np.fromiter((index[y] for _, y in pairs), dtype=np.int64, count=len(pairs))
    return xs, ys
