"""Strict N-Triples-subset parsing and the in-memory ontology model.

The accepted grammar is line-oriented: every non-blank, non-comment line is
either ``<s> <p> <o> .`` or ``<s> <p> "literal" .`` where the literal may
carry an optional ``@lang`` or ``^^<datatype>`` tag.  No Turtle prefixes, no
blank nodes.  Real OWL files can be converted to this subset with any RDF
toolchain (e.g. ``rapper -o ntriples``).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .errors import InputError, NTriplesParseError

logger = logging.getLogger(__name__)

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_OBJECT_PROPERTY = "http://www.w3.org/2002/07/owl#ObjectProperty"
RDFS_DOMAIN = "http://www.w3.org/2000/01/rdf-schema#domain"
RDFS_RANGE = "http://www.w3.org/2000/01/rdf-schema#range"
RDFS_SUBCLASS_OF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"

# Predicates with fixed schema meaning; never treated as relation assertions.
_RESERVED_PREDICATES = frozenset(
    {RDF_TYPE, RDFS_DOMAIN, RDFS_RANGE, RDFS_SUBCLASS_OF, RDFS_LABEL}
)

_IRI = r"<([^<>\s]+)>"
_LITERAL = r'"((?:[^"\\]|\\.)*)"(?:@([A-Za-z]+(?:-[A-Za-z0-9]+)*)|\^\^<([^<>\s]+)>)?'
_TRIPLE_RE = re.compile(
    rf"^{_IRI}[ \t]+{_IRI}[ \t]+(?:{_IRI}|{_LITERAL})[ \t]*\.$"
)

_UNESCAPE = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\"}
_ESCAPE = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


@dataclass(frozen=True)
class Literal:
    """A literal object; the language/datatype tag is kept only for round-trips."""

    text: str
    lang: str | None = None
    datatype: str | None = None


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: str | Literal


def _unescape(raw: str, line_number: int, line: str) -> str:
    if "\\" not in raw:
        return raw
    out: list[str] = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = raw[i + 1] if i + 1 < len(raw) else ""
        if nxt in _UNESCAPE:
            out.append(_UNESCAPE[nxt])
            i += 2
        elif nxt in ("u", "U"):
            width = 4 if nxt == "u" else 8
            digits = raw[i + 2 : i + 2 + width]
            if len(digits) != width or any(c not in "0123456789abcdefABCDEF" for c in digits):
                raise NTriplesParseError(line_number, line, f"bad \\{nxt} escape")
            out.append(chr(int(digits, 16)))
            i += 2 + width
        else:
            raise NTriplesParseError(line_number, line, f"unknown escape \\{nxt}")
    return "".join(out)


def parse_ntriples(text: str) -> list[Triple]:
    """Parse a document into triples, in document order.

    Blank lines and lines whose first non-whitespace character is ``#`` are
    skipped; any other line that does not match the grammar raises
    NTriplesParseError carrying the 1-based line number and the line itself.
    """
    triples: list[Triple] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = _TRIPLE_RE.match(stripped)
        if match is None:
            raise NTriplesParseError(
                line_number, line, "expected '<s> <p> <o> .' or '<s> <p> \"literal\" .'"
            )
        subject, predicate, obj_iri, lit_raw, lang, datatype = match.groups()
        if obj_iri is not None:
            obj: str | Literal = obj_iri
        else:
            obj = Literal(_unescape(lit_raw, line_number, line), lang, datatype)
        triples.append(Triple(subject, predicate, obj))
    return triples


def _object_text(obj: str | Literal) -> str:
    if isinstance(obj, str):
        return f"<{obj}>"
    escaped = "".join(_ESCAPE.get(ch, ch) for ch in obj.text)
    if obj.lang is not None:
        return f'"{escaped}"@{obj.lang}'
    if obj.datatype is not None:
        return f'"{escaped}"^^<{obj.datatype}>'
    return f'"{escaped}"'


def serialize_ntriples(triples: list[Triple]) -> str:
    """Canonical writer: one `<s> <p> <o> .` per line, single-space separated."""
    lines = [f"<{t.subject}> <{t.predicate}> {_object_text(t.object)} ." for t in triples]
    return "\n".join(lines) + ("\n" if lines else "")


def local_name(iri: str) -> str:
    """Text after the last '#' or '/'; the whole IRI if that text is empty."""
    for sep in ("#", "/"):
        if sep in iri:
            tail = iri.rsplit(sep, 1)[1]
            return tail if tail else iri
    return iri


@dataclass
class Ontology:
    """Classes, object properties, individuals, and the axioms relating them.

    Built once by build_ontology and treated as immutable afterwards, so it
    is safe to share across threads.
    """

    classes: set[str] = field(default_factory=set)
    object_properties: dict[str, tuple[str | None, str | None]] = field(default_factory=dict)
    individuals: set[str] = field(default_factory=set)
    type_assertions: dict[str, set[str]] = field(default_factory=dict)
    relation_assertions: set[tuple[str, str, str]] = field(default_factory=set)
    subclass_axioms: set[tuple[str, str]] = field(default_factory=set)
    labels: dict[str, str] = field(default_factory=dict)

    def display_label(self, iri: str) -> str:
        """Explicit rdfs:label if present, else the IRI local name."""
        return self.labels.get(iri, local_name(iri))

    def class_labels(self) -> dict[str, str]:
        return {c: self.display_label(c) for c in self.classes}

    def instances_by_class(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {c: set() for c in self.classes}
        for individual, class_set in self.type_assertions.items():
            for cls in class_set:
                out.setdefault(cls, set()).add(individual)
        return out


@dataclass(frozen=True)
class OntologySummary:
    n_classes: int
    n_individuals: int
    n_object_properties: int
    n_op_without_domain_range: int


def build_ontology(triples: list[Triple]) -> Ontology:
    """Assemble the ontology model from triples.

    Recognized vocabulary: rdf:type with owl:Class / owl:ObjectProperty
    (declarations), rdf:type with a class object (type assertion; the subject
    becomes an individual), rdfs:domain / rdfs:range / rdfs:subClassOf /
    rdfs:label, and any triple whose predicate is a known object property and
    whose subject and object are both individuals (relation assertion).
    Everything else is ignored.  Processing is multi-pass, so the result does
    not depend on triple order except where duplicate conflicting axioms force
    a first-wins choice (logged as a warning).
    """
    onto = Ontology()
    domains: dict[str, str] = {}
    ranges: dict[str, str] = {}

    for t in triples:
        if t.predicate == RDF_TYPE and t.object == OWL_CLASS:
            onto.classes.add(t.subject)
        elif t.predicate == RDF_TYPE and t.object == OWL_OBJECT_PROPERTY:
            onto.object_properties.setdefault(t.subject, (None, None))

    for t in triples:
        if t.predicate in (RDFS_DOMAIN, RDFS_RANGE) and isinstance(t.object, str):
            axioms = domains if t.predicate == RDFS_DOMAIN else ranges
            kind = "domain" if t.predicate == RDFS_DOMAIN else "range"
            prop, cls = t.subject, t.object
            if prop not in onto.object_properties:
                logger.warning(
                    "%s axiom on %s, which was never declared an object property; keeping it",
                    kind,
                    prop,
                )
                onto.object_properties.setdefault(prop, (None, None))
            if prop in axioms and axioms[prop] != cls:
                logger.warning(
                    "conflicting %s axioms for %s: keeping %s, ignoring %s",
                    kind,
                    prop,
                    axioms[prop],
                    cls,
                )
                continue
            axioms[prop] = cls
            onto.classes.add(cls)
        elif t.predicate == RDFS_SUBCLASS_OF and isinstance(t.object, str):
            onto.subclass_axioms.add((t.subject, t.object))
            onto.classes.add(t.subject)
            onto.classes.add(t.object)
        elif t.predicate == RDFS_LABEL and isinstance(t.object, Literal):
            if t.subject in onto.labels and onto.labels[t.subject] != t.object.text:
                logger.warning(
                    "conflicting labels for %s: keeping %r", t.subject, onto.labels[t.subject]
                )
                continue
            onto.labels[t.subject] = t.object.text

    onto.object_properties = {
        prop: (domains.get(prop), ranges.get(prop)) for prop in onto.object_properties
    }

    for t in triples:
        if t.predicate == RDF_TYPE and isinstance(t.object, str) and t.object in onto.classes:
            onto.individuals.add(t.subject)
            onto.type_assertions.setdefault(t.subject, set()).add(t.object)

    for t in triples:
        if (
            t.predicate in onto.object_properties
            and t.predicate not in _RESERVED_PREDICATES
            and isinstance(t.object, str)
            and t.subject in onto.individuals
            and t.object in onto.individuals
        ):
            onto.relation_assertions.add((t.subject, t.predicate, t.object))

    return onto


def summarize(onto: Ontology) -> OntologySummary:
    """Counts of classes, individuals, object properties, and properties
    missing a domain or a range."""
    without = sum(
        1 for d, r in onto.object_properties.values() if d is None or r is None
    )
    return OntologySummary(
        n_classes=len(onto.classes),
        n_individuals=len(onto.individuals),
        n_object_properties=len(onto.object_properties),
        n_op_without_domain_range=without,
    )


def load_ontology(path) -> Ontology:
    """Parse an .nt file and build the ontology model."""
    with open(path, encoding="utf-8") as fh:
        return build_ontology(parse_ntriples(fh.read()))


def resolve_class(onto: Ontology, name: str) -> str:
    """Map a class IRI, or a display label naming exactly one class, to its IRI.

    Lets hand-authored pair files use readable labels while machine output
    sticks to IRIs; unknown or ambiguous names are input errors.
    """
    if name in onto.classes:
        return name
    matches = sorted(c for c in onto.classes if onto.display_label(c) == name)
    if len(matches) == 1:
        return matches[0]
    if not matches:
        raise InputError(f"unknown class: {name!r}")
    raise InputError(f"ambiguous class name {name!r}: matches " + ", ".join(matches))
