"""Candidate relation-gap enumeration, SVM ranking, and the two baselines.

A candidate is an unordered class pair with no class-graph edge (and, by
default, no direct subclass axiom in either direction).  The proposed system
ranks candidates by the SVM margin over the three pair features; the Prophet
baseline scores pairs by instance-level common neighbours; the WV baseline
thresholds the label-embedding cosine.
"""

from __future__ import annotations

import csv
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from . import kernels
from .classifier import SvmModel
from .embeddings import EmbeddingStore, cosine
from .errors import InputError
from .features import FeatureVector, batch_extract, class_vectors, feature_matrix
from .graphs import UndirectedGraph
from .ontology import Ontology

logger = logging.getLogger(__name__)

PROPHET_THRESHOLD = 10.0


@dataclass(frozen=True)
class CandidatePair:
    """A scored non-connected class pair; positive means predicted gap."""

    class_x: str
    class_y: str
    features: FeatureVector
    margin: float
    positive: bool


@dataclass(frozen=True)
class ProphetScore:
    """Mean instance-level common-neighbour count over cross-class pairs."""

    class_x: str
    class_y: str
    score: float
    instance_pairs: int


def enumerate_candidates(
    onto: Ontology,
    graph: UndirectedGraph,
    exclude_subclass: bool = True,
    max_pairs: int | None = None,
) -> list[tuple[str, str]]:
    """All unordered class pairs minus existing edges, sorted lexicographically.

    With exclude_subclass on, pairs related by a direct subclass axiom in
    either direction are removed too.  The max_pairs guard rejects inputs
    whose full pair set would exceed it, before enumeration.
    """
    nodes = sorted(graph.nodes)
    total = len(nodes) * (len(nodes) - 1) // 2
    if max_pairs is not None and total > max_pairs:
        raise InputError(
            f"{len(nodes)} classes give {total} class pairs, over the limit of "
            f"{max_pairs}; raise --max-pairs to proceed"
        )
    subclass_pairs: set[tuple[str, str]] = set()
    if exclude_subclass:
        subclass_pairs = {tuple(sorted(axiom)) for axiom in onto.subclass_axioms}
    out = []
    for x, y in itertools.combinations(nodes, 2):
        if graph.has_edge(x, y) or (x, y) in subclass_pairs:
            continue
        out.append((x, y))
    return out


def rank_candidates(
    model: SvmModel,
    graph: UndirectedGraph,
    store: EmbeddingStore,
    labels: dict[str, str],
    pairs: list[tuple[str, str]],
) -> list[CandidatePair]:
    """Score every pair, keep positives, sort by margin descending then
    lexicographically; unembeddable labels are warned about inside the
    feature extractor and scored with imputed glove_sim."""
    vectors = batch_extract(graph, store, labels, pairs)
    if not vectors:
        return []
    margins = model.margins(feature_matrix(vectors))
    ranked = [
        CandidatePair(
            class_x=x,
            class_y=y,
            features=vectors[k],
            margin=float(margins[k]),
            positive=bool(margins[k] > 0.0),
        )
        for k, (x, y) in enumerate(pairs)
        if margins[k] > 0.0
    ]
    ranked.sort(key=lambda p: (-p.margin, p.class_x, p.class_y))
    for p in ranked:
        assert not graph.has_edge(p.class_x, p.class_y)
    return ranked


def _instance_ids(onto: Ontology, index: dict[str, int], cls: str) -> np.ndarray:
    instances = onto.instances_by_class().get(cls, set())
    return np.fromiter(
        (index[i] for i in sorted(instances)), dtype=np.int64, count=len(instances)
    )


def prophet_score(
    ig: UndirectedGraph, onto: Ontology, x: str, y: str
) -> ProphetScore | None:
    """Sum of |Γ(i) ∩ Γ(j)| over ordered cross-class instance pairs (i, j)
    with i ≠ j, divided by the number of such pairs; None when there are no
    pairs to count (the "no results" case)."""
    _nodes, index, indptr, indices = kernels.graph_csr(ig)
    return _prophet_score_csr(indptr, indices, index, onto, x, y)


def _prophet_score_csr(indptr, indices, index, onto: Ontology, x: str, y: str):
    ix = _instance_ids(onto, index, x)
    iy = _instance_ids(onto, index, y)
    total, pairs = kernels.instance_common_total(indptr, indices, ix, iy)
    if pairs == 0:
        return None
    return ProphetScore(
        class_x=x, class_y=y, score=float(total) / float(pairs), instance_pairs=int(pairs)
    )


def prophet_baseline(
    ig: UndirectedGraph,
    onto: Ontology,
    pairs: list[tuple[str, str]],
    threshold: float = PROPHET_THRESHOLD,
) -> list[ProphetScore]:
    """Pairs whose Prophet score is defined and strictly above the threshold,
    sorted by score descending then lexicographically."""
    _nodes, index, indptr, indices = kernels.graph_csr(ig)
    out = []
    for x, y in pairs:
        scored = _prophet_score_csr(indptr, indices, index, onto, x, y)
        if scored is not None and scored.score > threshold:
            out.append(scored)
    out.sort(key=lambda s: (-s.score, s.class_x, s.class_y))
    return out


def wv_baseline(
    store: EmbeddingStore,
    labels: dict[str, str],
    pairs: list[tuple[str, str]],
    threshold: float,
) -> list[tuple[str, str, float]]:
    """(x, y, cosine) for pairs whose label cosine is strictly above the
    threshold, sorted descending then lexicographically; pairs with an
    unembeddable label are skipped with a warning."""
    if not -1.0 <= threshold <= 1.0:
        raise InputError(f"wv threshold must be in [-1, 1], got {threshold!r}")
    vectors, _skipped = class_vectors(store, labels)
    out = []
    for x, y in pairs:
        if x not in vectors or y not in vectors:
            logger.warning("skipping pair (%s, %s): unembeddable label", x, y)
            continue
        sim = cosine(vectors[x], vectors[y])
        if sim > threshold:
            out.append((x, y, sim))
    out.sort(key=lambda r: (-r[2], r[0], r[1]))
    return out


NO_RESULTS_MARKER = "no results"


def write_candidates_csv(path, ranked: list[CandidatePair]) -> None:
    """Ranked output: header ``rank,class_x,class_y,cn,aa,glove_sim,margin``."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "class_x", "class_y", "cn", "aa", "glove_sim", "margin"])
        for rank, p in enumerate(ranked, start=1):
            fv = p.features
            writer.writerow(
                [
                    str(rank),
                    p.class_x,
                    p.class_y,
                    str(fv.cn),
                    repr(fv.aa),
                    "" if fv.glove_sim is None else repr(fv.glove_sim),
                    repr(p.margin),
                ]
            )


def write_baseline_csv(path, scored: list[tuple[str, str, float]]) -> None:
    """Baseline output: header ``rank,class_x,class_y,score``; an empty
    result set is marked by a single explicit "no results" line."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "class_x", "class_y", "score"])
        if not scored:
            fh.write(NO_RESULTS_MARKER + "\n")
            return
        for rank, (x, y, score) in enumerate(scored, start=1):
            writer.writerow([str(rank), x, y, repr(score)])
