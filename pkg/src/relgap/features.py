"""Per-pair link features and the feature-dump CSV format.

Three features per class pair (x, y), in this fixed column order:

* ``cn``        -- number of common neighbours in the class graph
* ``aa``        -- Adamic-Adar: sum of 1/ln(degree(z)) over common neighbours z
* ``glove_sim`` -- cosine similarity of the averaged label embeddings,
                   missing (None) when either label is unembeddable

The module offers both scalar reference implementations and a batched path
through :mod:`relgap.kernels`; tests hold the two bitwise equal.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .embeddings import EmbeddingStore, cosine, embed_label
from .errors import CsvFormatError, UnembeddableLabelError, UnknownNodeError
from .graphs import UndirectedGraph

logger = logging.getLogger(__name__)

FEATURE_NAMES = ("cn", "aa", "glove_sim")
_CSV_HEADER = ["class_x", "class_y", "cn", "aa", "glove_sim", "label"]


@dataclass(frozen=True)
class FeatureVector:
    """The three scalars for one class pair; glove_sim is None when a label
    had no in-vocabulary token."""

    cn: int
    aa: float
    glove_sim: float | None

    def imputed(self) -> tuple[float, float, float]:
        """Raw feature triple with missing glove_sim imputed as 0.0."""
        return (
            float(self.cn),
            self.aa,
            0.0 if self.glove_sim is None else self.glove_sim,
        )


@dataclass(frozen=True)
class LabeledPair:
    """A class pair with features and a 1/0 label (None in unlabelled dumps)."""

    class_x: str
    class_y: str
    features: FeatureVector
    label: int | None = None


def common_neighbours(graph: UndirectedGraph, x: str, y: str) -> int:
    if x == y:
        raise ValueError(f"common_neighbours needs distinct classes, got {x!r} twice")
    return len(graph.neighbours(x) & graph.neighbours(y))


def adamic_adar(graph: UndirectedGraph, x: str, y: str) -> float:
    """Sum 1/ln(deg(z)) over common neighbours z, in sorted-z order.

    The sorted order matches the merge order of the batched kernels, keeping
    the float sum bitwise identical across both paths.
    """
    if x == y:
        raise ValueError(f"adamic_adar needs distinct classes, got {x!r} twice")
    total = 0.0
    for z in sorted(graph.neighbours(x) & graph.neighbours(y)):
        degree = len(graph.adjacency[z])
        # z neighbours both x and y and x != y, so degree >= 2 and ln > 0.
        assert degree >= 2
        total += 1.0 / math.log(degree)
    return total


def class_vectors(
    store: EmbeddingStore, labels: dict[str, str]
) -> tuple[dict[str, np.ndarray], list[str]]:
    """Embed each class label; return (vectors, sorted unembeddable classes).

    Every skipped class is logged once, and its pairs stay scorable with
    glove_sim left missing.
    """
    vectors: dict[str, np.ndarray] = {}
    skipped: list[str] = []
    for cls in sorted(labels):
        try:
            vectors[cls] = embed_label(store, labels[cls]).vector
        except UnembeddableLabelError:
            skipped.append(cls)
            logger.warning(
                "label %r of class %s has no in-vocabulary token; glove_sim left missing",
                labels[cls],
                cls,
            )
    return vectors, skipped


def extract_features(
    graph: UndirectedGraph,
    store: EmbeddingStore,
    labels: dict[str, str],
    x: str,
    y: str,
) -> FeatureVector:
    """Scalar reference path: one pair at a time.

    An unembeddable label yields glove_sim = None plus a logged warning; the
    graph features are unaffected.
    """
    cn = common_neighbours(graph, x, y)
    aa = adamic_adar(graph, x, y)
    try:
        vx = embed_label(store, labels[x]).vector
        vy = embed_label(store, labels[y]).vector
        sim: float | None = cosine(vx, vy)
    except UnembeddableLabelError as exc:
        logger.warning("%s; glove_sim left missing for (%s, %s)", exc, x, y)
        sim = None
    return FeatureVector(cn=cn, aa=aa, glove_sim=sim)


def batch_extract(
    graph: UndirectedGraph,
    store: EmbeddingStore,
    labels: dict[str, str],
    pairs: list[tuple[str, str]],
) -> list[FeatureVector]:
    """Batched path: CN and AA via the compiled kernels, cosine via numpy."""
    for x, y in pairs:
        if x not in graph.nodes:
            raise UnknownNodeError(x)
        if y not in graph.nodes:
            raise UnknownNodeError(y)
        if x == y:
            raise ValueError(f"candidate pair with identical classes: {x!r}")
    if not pairs:
        return []
    vectors, _skipped = class_vectors(store, labels)
    _nodes, index, indptr, indices = kernels.graph_csr(graph)
    xs, ys = kernels.pair_id_arrays(index, pairs)
    cn, aa = kernels.pair_cn_aa(indptr, indices, xs, ys)
    out = []
    for k, (x, y) in enumerate(pairs):
        if x in vectors and y in vectors:
            sim: float | None = cosine(vectors[x], vectors[y])
        else:
            sim = None
        out.append(FeatureVector(cn=int(cn[k]), aa=float(aa[k]), glove_sim=sim))
    return out


def feature_matrix(vectors: list[FeatureVector]) -> np.ndarray:
    """(n, 3) float64 matrix in FEATURE_NAMES order, missing imputed as 0.0."""
    return np.array([fv.imputed() for fv in vectors], dtype=np.float64).reshape(
        len(vectors), len(FEATURE_NAMES)
    )


def write_feature_csv(path, rows: list[LabeledPair]) -> None:
    """Header ``class_x,class_y,cn,aa,glove_sim,label``; floats via repr so a
    written file reloads bit-exact; missing glove_sim is an empty field and a
    missing label is '?'."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER)
        for row in rows:
            fv = row.features
            writer.writerow(
                [
                    row.class_x,
                    row.class_y,
                    str(fv.cn),
                    repr(fv.aa),
                    "" if fv.glove_sim is None else repr(fv.glove_sim),
                    "?" if row.label is None else str(row.label),
                ]
            )


def read_feature_csv(path) -> list[LabeledPair]:
    rows: list[LabeledPair] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _CSV_HEADER:
            raise CsvFormatError(
                f"expected header {','.join(_CSV_HEADER)!r}, got {header!r}"
            )
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if len(record) != len(_CSV_HEADER):
                raise CsvFormatError(f"line {line}: expected 6 fields, got {len(record)}")
            x, y, cn_s, aa_s, sim_s, label_s = record
            try:
                cn = int(cn_s)
                aa = float(aa_s)
                sim = None if sim_s == "" else float(sim_s)
            except ValueError as exc:
                raise CsvFormatError(f"line {line}: {exc}")
            if cn < 0 or aa < 0.0:
                raise CsvFormatError(f"line {line}: cn and aa must be nonnegative")
            if cn == 0 and aa != 0.0:
                raise CsvFormatError(f"line {line}: aa must be 0 when cn is 0")
            if sim is not None and not -1.0 <= sim <= 1.0:
                raise CsvFormatError(f"line {line}: glove_sim outside [-1, 1]")
            if label_s == "?":
                label: int | None = None
            elif label_s in ("0", "1"):
                label = int(label_s)
            else:
                raise CsvFormatError(
                    f"line {line}: label must be 0, 1, or ?, got {label_s!r}"
                )
            rows.append(
                LabeledPair(
                    class_x=x,
                    class_y=y,
                    features=FeatureVector(cn=cn, aa=aa, glove_sim=sim),
                    label=label,
                )
            )
    return rows
