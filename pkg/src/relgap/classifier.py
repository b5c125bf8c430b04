"""Soft-margin linear SVM over the three pair features.

The trainer minimizes (1/2)||w||^2 + C * sum of hinge losses over
standardized features, with an unpenalized bias.  It solves the dual

    min  (1/2) a'Qa - 1'a   s.t.  0 <= a <= C,  y'a = 0,   Q_ij = y_i y_j x_i.x_j

by sequential minimal optimization on the maximal violating pair, which is
deterministic for a fixed row order; the seed controls a single up-front
shuffle of that order, so retraining with identical (data, C, seed) is
bit-reproducible.

Training features for an already-connected pair are computed on the graph as
given: the pair's own direct edge cannot influence its CN or AA (neither
endpoint can be a common neighbour of the pair in a simple graph, and the
edge changes no third node's degree), so removing it first would be a no-op.
The test suite checks that equivalence on random graphs.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import CsvFormatError, InputError, ModelFormatError, TrainingError
from .features import FeatureVector, LabeledPair, feature_matrix

MODEL_FORMAT = "relgap-svm/1"


@dataclass(frozen=True)
class Scaler:
    """Per-feature standardization: subtract mean, divide by population std."""

    mean: np.ndarray
    std: np.ndarray

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=np.float64) - self.mean) / self.std


def fit_scaler(rows) -> Scaler:
    """Population mean/std per feature; a zero-variance feature gets std 1.0.

    Missing glove_sim values enter the fit as raw 0.0.
    """
    if len(rows) < 2:
        raise TrainingError(f"need at least 2 feature rows to fit a scaler, got {len(rows)}")
    X = feature_matrix(list(rows))
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std = np.where(std > 0.0, std, 1.0)
    return Scaler(mean=mean, std=std)


@dataclass(frozen=True)
class SvmModel:
    weights: np.ndarray
    bias: float
    scaler: Scaler
    c: float
    seed: int
    n_iter: int
    objective: float

    def margins(self, X_raw: np.ndarray) -> np.ndarray:
        """Decision values for an (n, 3) matrix of raw (imputed) features."""
        X_raw = np.asarray(X_raw, dtype=np.float64)
        if not np.isfinite(X_raw).all():
            raise InputError("non-finite feature value in prediction input")
        return self.scaler.transform(X_raw) @ self.weights + self.bias


def predict(model: SvmModel, fv: FeatureVector) -> tuple[bool, float]:
    """(decision, margin) for one pair; positive iff margin > 0.

    Missing glove_sim is imputed as raw 0.0 before standardization.
    """
    margin = float(model.margins(np.array([fv.imputed()]))[0])
    return margin > 0.0, margin


def _solve_smo(
    Xs: np.ndarray, y: np.ndarray, c: float, tol: float, max_iter: int
) -> tuple[np.ndarray, int, float]:
    """Maximal-violating-pair SMO; returns (alpha, iterations, bias)."""
    n = Xs.shape[0]
    K = Xs @ Xs.T
    alpha = np.zeros(n)
    g = -np.ones(n)  # gradient of the dual, Q @ alpha - 1
    pos = y > 0.0
    iterations = 0
    while True:
        v = -y * g  # v_k = y_k - w.x_k at the current alpha
        up = (pos & (alpha < c)) | (~pos & (alpha > 0.0))
        low = (~pos & (alpha < c)) | (pos & (alpha > 0.0))
        m_arr = np.where(up, v, -np.inf)
        M_arr = np.where(low, v, np.inf)
        i = int(np.argmax(m_arr))
        j = int(np.argmin(M_arr))
        m, M = float(m_arr[i]), float(M_arr[j])
        if m - M <= tol:
            break
        if iterations >= max_iter:
            raise TrainingError(
                f"SMO did not converge within {max_iter} iterations "
                f"(KKT violation {m - M:.3e}, tolerance {tol:.1e})"
            )
        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        t = (v[i] - v[j]) / max(eta, 1e-12)
        t = min(
            t,
            (c - alpha[i]) if pos[i] else alpha[i],
            alpha[j] if pos[j] else (c - alpha[j]),
        )
        alpha[i] = min(max(alpha[i] + y[i] * t, 0.0), c)
        alpha[j] = min(max(alpha[j] - y[j] * t, 0.0), c)
        g += t * y * (K[:, i] - K[:, j])
        iterations += 1

    eps = 1e-8 * c
    free = (alpha > eps) & (alpha < c - eps)
    if free.any():
        bias = float(np.mean(v[free]))
    elif np.isfinite(m) and np.isfinite(M):
        bias = (m + M) / 2.0
    else:
        bias = M if np.isfinite(M) else m
    return alpha, iterations, bias


def train_svm(
    data,
    c: float = 1.0,
    seed: int = 0,
    tol: float = 1e-10,
    max_iter: int = 1_000_000,
) -> SvmModel:
    """Train on a sequence of LabeledPair (labels 1/0, both present)."""
    data = list(data)
    if c <= 0.0 or not np.isfinite(c):
        raise TrainingError(f"C must be positive and finite, got {c!r}")
    labels = [p.label for p in data]
    if any(label is None for label in labels):
        raise TrainingError("training rows must all carry a 0/1 label")
    if len(set(labels)) < 2:
        raise TrainingError("training data must contain both a positive and a negative pair")

    X = feature_matrix([p.features for p in data])
    if not np.isfinite(X).all():
        raise TrainingError("non-finite feature value in training data")
    scaler = fit_scaler([p.features for p in data])
    Xs = scaler.transform(X)
    y = np.where(np.array(labels, dtype=np.float64) > 0.0, 1.0, -1.0)

    order = np.random.default_rng(seed).permutation(len(data))
    alpha, n_iter, bias = _solve_smo(Xs[order], y[order], c, tol, max_iter)
    weights = Xs[order].T @ (alpha * y[order])

    slack = 1.0 - y * (Xs @ weights + bias)
    np.maximum(slack, 0.0, out=slack)
    objective = 0.5 * float(weights @ weights) + c * float(slack.sum())
    return SvmModel(
        weights=weights,
        bias=bias,
        scaler=scaler,
        c=c,
        seed=seed,
        n_iter=n_iter,
        objective=objective,
    )


def save_model(model: SvmModel, path) -> None:
    """Versioned key-value text file; floats via repr for bit-exact reload."""
    lines = [
        f"format: {MODEL_FORMAT}",
        f"c: {model.c!r}",
        f"seed: {model.seed}",
        f"n_iter: {model.n_iter}",
        f"objective: {model.objective!r}",
        "weights: " + " ".join(repr(w) for w in model.weights.tolist()),
        f"bias: {model.bias!r}",
        "scaler_mean: " + " ".join(repr(m) for m in model.scaler.mean.tolist()),
        "scaler_std: " + " ".join(repr(s) for s in model.scaler.std.tolist()),
    ]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


_MODEL_KEYS = (
    "c",
    "seed",
    "n_iter",
    "objective",
    "weights",
    "bias",
    "scaler_mean",
    "scaler_std",
)


def load_model(path) -> SvmModel:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines or lines[0] != f"format: {MODEL_FORMAT}":
        raise ModelFormatError(
            f"expected first line 'format: {MODEL_FORMAT}', got {lines[0]!r}"
            if lines
            else "empty model file"
        )
    fields: dict[str, str] = {}
    for line in lines[1:]:
        key, sep, value = line.partition(": ")
        if not sep or key not in _MODEL_KEYS:
            raise ModelFormatError(f"unexpected model line {line!r}")
        if key in fields:
            raise ModelFormatError(f"duplicate model key {key!r}")
        fields[key] = value
    missing = [key for key in _MODEL_KEYS if key not in fields]
    if missing:
        raise ModelFormatError(f"model file missing keys: {', '.join(missing)}")
    try:
        weights = np.array([float(v) for v in fields["weights"].split()])
        mean = np.array([float(v) for v in fields["scaler_mean"].split()])
        std = np.array([float(v) for v in fields["scaler_std"].split()])
        model = SvmModel(
            weights=weights,
            bias=float(fields["bias"]),
            scaler=Scaler(mean=mean, std=std),
            c=float(fields["c"]),
            seed=int(fields["seed"]),
            n_iter=int(fields["n_iter"]),
            objective=float(fields["objective"]),
        )
    except ValueError as exc:
        raise ModelFormatError(f"bad model value: {exc}")
    if not (len(weights) == len(mean) == len(std) == 3):
        raise ModelFormatError("model vectors must all have 3 components")
    if (std <= 0.0).any():
        raise ModelFormatError("scaler std components must be positive")
    if not (
        np.isfinite(weights).all()
        and np.isfinite(model.bias)
        and np.isfinite(mean).all()
        and np.isfinite(std).all()
    ):
        raise ModelFormatError("model holds non-finite values")
    return model


def read_training_pairs(path) -> list[tuple[str, str, int]]:
    """Training pairs CSV: header ``class_x,class_y,label``, label 1 or 0.

    Names are returned verbatim; resolving display labels against an
    ontology happens at the call site.
    """
    out: list[tuple[str, str, int]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["class_x", "class_y", "label"]:
            raise CsvFormatError(
                f"expected header 'class_x,class_y,label', got {header!r}"
            )
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if len(record) != 3:
                raise CsvFormatError(f"line {line}: expected 3 fields, got {len(record)}")
            x, y, label_s = record
            if label_s not in ("0", "1"):
                raise CsvFormatError(f"line {line}: label must be 0 or 1, got {label_s!r}")
            if x == y:
                raise CsvFormatError(f"line {line}: pair with identical classes {x!r}")
            out.append((x, y, int(label_s)))
    return out
