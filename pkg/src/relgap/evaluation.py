"""Precision against human-judgment files and comparison-table rendering.

Judgments map unordered class pairs to correct/incorrect.  A system's
precision is correct/produced; a system that produced nothing has undefined
precision and is rendered as "no results" rather than 0.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import CsvFormatError, EvaluationError

_JUDGMENT_HEADER = ["class_x", "class_y", "verdict"]
_PREDICTION_HEADERS = (
    ["rank", "class_x", "class_y", "cn", "aa", "glove_sim", "margin"],
    ["rank", "class_x", "class_y", "score"],
)
_NO_RESULTS = "no results"

JudgmentSet = dict[tuple[str, str], bool]


@dataclass(frozen=True)
class SystemReport:
    """One Table-2-style row: counts, precision (None = undefined), seconds."""

    system: str
    produced: int
    correct: int
    precision: float | None
    elapsed: float | None = None


def _key(x: str, y: str) -> tuple[str, str]:
    return (x, y) if x <= y else (y, x)


def load_judgments(path) -> JudgmentSet:
    """Judgments CSV: header ``class_x,class_y,verdict`` with verdict
    correct/incorrect; pairs are matched order-insensitively and each may be
    judged only once."""
    judgments: JudgmentSet = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _JUDGMENT_HEADER:
            raise CsvFormatError(
                f"expected header 'class_x,class_y,verdict', got {header!r}"
            )
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if len(record) != 3:
                raise CsvFormatError(f"line {line}: expected 3 fields, got {len(record)}")
            x, y, verdict = record
            if verdict not in ("correct", "incorrect"):
                raise CsvFormatError(
                    f"line {line}: verdict must be correct or incorrect, got {verdict!r}"
                )
            key = _key(x, y)
            if key in judgments:
                raise CsvFormatError(f"line {line}: pair ({x}, {y}) judged twice")
            judgments[key] = verdict == "correct"
    return judgments


def precision(
    predicted: list[tuple[str, str]],
    judgments: JudgmentSet,
    system: str,
    elapsed: float | None = None,
) -> SystemReport:
    """correct/produced over the predicted pairs; every pair must be judged."""
    unjudged = sorted({_key(x, y) for x, y in predicted} - judgments.keys())
    if unjudged:
        listing = ", ".join(f"({x}, {y})" for x, y in unjudged)
        raise EvaluationError(
            f"{len(unjudged)} predicted pair(s) have no judgment: {listing}",
            pairs=unjudged,
        )
    produced = len(predicted)
    correct = sum(1 for x, y in predicted if judgments[_key(x, y)])
    return SystemReport(
        system=system,
        produced=produced,
        correct=correct,
        precision=(correct / produced) if produced else None,
        elapsed=elapsed,
    )


def render_precision(value: float | None) -> str:
    """Two-decimal rendering; undefined precision renders as "no results"."""
    return _NO_RESULTS if value is None else f"{value:.2f}"


def compare_report(reports: list[SystemReport]) -> str:
    """CSV comparison table, one row per system, deterministic column order."""
    lines = ["system,produced,correct,precision,elapsed_seconds"]
    for r in reports:
        elapsed = "-" if r.elapsed is None else f"{r.elapsed:.2f}"
        lines.append(
            f"{r.system},{r.produced},{r.correct},{render_precision(r.precision)},{elapsed}"
        )
    return "\n".join(lines) + "\n"


def read_predictions(path) -> list[tuple[str, str]]:
    """Read the pair list out of a predict or baseline output CSV.

    Accepts either output header; a lone "no results" marker line stands for
    an empty pair list.
    """
    pairs: list[tuple[str, str]] = []
    saw_marker = False
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header not in _PREDICTION_HEADERS:
            raise CsvFormatError(f"unrecognized predictions header: {header!r}")
        width = len(header)
        for record in reader:
            line = reader.line_num
            if not record:
                continue
            if record == [_NO_RESULTS]:
                saw_marker = True
                continue
            if len(record) != width:
                raise CsvFormatError(
                    f"line {line}: expected {width} fields, got {len(record)}"
                )
            pairs.append((record[1], record[2]))
    if saw_marker and pairs:
        raise CsvFormatError(f"{path}: 'no results' marker alongside data rows")
    return pairs
