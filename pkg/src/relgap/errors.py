"""Exception hierarchy for relgap.

InputError subclasses cover anything wrong with user-supplied files and map
to CLI exit code 2; TrainingError maps to 3 and EvaluationError to 4.
"""

from __future__ import annotations


class RelgapError(Exception):
    """Base class for all relgap errors."""


class InputError(RelgapError):
    """A user-supplied file or value is malformed or unusable."""


class NTriplesParseError(InputError):
    """A line of an N-Triples document did not match the accepted grammar."""

    def __init__(self, line_number: int, line: str, reason: str):
        self.line_number = line_number
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}: {line!r}")


class GloveFormatError(InputError):
    """An embedding text file is empty or dimensionally inconsistent."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ModelFormatError(InputError):
    """A model file is truncated, malformed, or of an unsupported version."""


class CsvFormatError(InputError):
    """A CSV input (pairs, features, judgments, predictions) is malformed."""


class UnknownNodeError(RelgapError):
    """A graph operation referenced a node that is not in the graph."""

    def __init__(self, node: str):
        self.node = node
        super().__init__(f"unknown node: {node}")


class UnembeddableLabelError(RelgapError):
    """No token of a label is in the embedding vocabulary."""

    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unembeddable label: {label!r} (no token in vocabulary)")


class TrainingError(RelgapError):
    """Training cannot proceed (single-class data, non-finite features, ...)."""


class EvaluationError(RelgapError):
    """Evaluation cannot proceed, e.g. predictions lacking judgments."""

    def __init__(self, message: str, pairs: list[tuple[str, str]] | None = None):
        self.pairs = pairs or []
        super().__init__(message)
