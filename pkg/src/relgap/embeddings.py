"""GloVe-format vector loading and class-label embedding.

Class names arrive as "Film_producer", "SportsLeague", or "pet+owner";
tokenize_label splits them into the lowercase unigrams the vector vocabulary
uses, and embed_label averages the in-vocabulary token vectors.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass

import numpy as np

from .errors import GloveFormatError, UnembeddableLabelError

logger = logging.getLogger(__name__)

_SEPARATORS = re.compile(r"[\s_\-+]+")
_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z])(?=[A-Z])")


@dataclass
class EmbeddingStore:
    """Immutable token -> vector map; all vectors share one dimension."""

    dimension: int
    vectors: dict[str, np.ndarray]

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class LabelVector:
    vector: np.ndarray
    covered_tokens: int
    total_tokens: int


def load_glove(path) -> EmbeddingStore:
    """Load a text-format embedding file: token then D decimals per line.

    The dimension is inferred from the first line; a later line with a
    different vector length is an error carrying its line number.  Duplicate
    tokens keep the last occurrence.  Tokens are lowercased on load.
    """
    vectors: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                raise GloveFormatError("blank line in embedding file", line_number)
            token = parts[0].lower()
            try:
                values = np.array([float(v) for v in parts[1:]], dtype=np.float64)
            except ValueError as exc:
                raise GloveFormatError(f"non-numeric vector component: {exc}", line_number)
            if dimension is None:
                if values.size == 0:
                    raise GloveFormatError("first line has no vector components", line_number)
                dimension = values.size
            elif values.size != dimension:
                raise GloveFormatError(
                    f"expected {dimension} components, got {values.size}", line_number
                )
            vectors[token] = values
    if dimension is None:
        raise GloveFormatError("empty embedding file")
    return EmbeddingStore(dimension=dimension, vectors=vectors)


def tokenize_label(label: str) -> list[str]:
    """Split on whitespace, '_', '-', '+', and lower-to-upper case boundaries;
    lowercase everything; drop empty tokens."""
    tokens: list[str] = []
    for chunk in _SEPARATORS.split(label):
        for token in _CAMEL_BOUNDARY.split(chunk):
            if token:
                tokens.append(token.lower())
    return tokens


def embed_label(store: EmbeddingStore, label: str) -> LabelVector:
    """Arithmetic mean of the vectors of all in-vocabulary tokens.

    Out-of-vocabulary tokens are dropped from the mean rather than
    zero-filled; a label with no in-vocabulary token at all raises
    UnembeddableLabelError.
    """
    tokens = tokenize_label(label)
    hits = [store.vectors[t] for t in tokens if t in store.vectors]
    if not hits:
        raise UnembeddableLabelError(label)
    vector = np.mean(hits, axis=0)
    return LabelVector(vector=vector, covered_tokens=len(hits), total_tokens=len(tokens))


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """u.v / (|u||v|), clamped to [-1, 1] against float rounding."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    norm_u = float(np.linalg.norm(u))
    norm_v = float(np.linalg.norm(v))
    if norm_u == 0.0 or norm_v == 0.0:
        raise ValueError("cosine of a zero vector is undefined")
    value = float(u @ v) / (norm_u * norm_v)
    return max(-1.0, min(1.0, value))
