"""Core value types for parsed ontologies.

Models are immutable after construction: building, merging and annotating all
return fresh objects, so instances are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional, Union


@dataclass(frozen=True, order=True)
class Literal:
    """An RDF literal: lexical value plus optional datatype IRI or language tag."""

    value: str
    datatype: Optional[str] = None
    lang: Optional[str] = None

    def __post_init__(self):
        if self.datatype is not None and self.lang is not None:
            raise ValueError("a literal cannot carry both a datatype and a language tag")


#: object position of a triple: an IRI / blank-node id, or a literal
Term = Union[str, Literal]


@dataclass(frozen=True)
class Triple:
    """A single RDF statement. Blank nodes are strings prefixed with ``_:``."""

    subject: str
    predicate: str
    object: Term

    def __post_init__(self):
        if is_blank(self.predicate):
            raise ValueError("predicate must be an IRI, not a blank node")
        if isinstance(self.subject, Literal):
            raise ValueError("literal in subject position")


def is_blank(term: Term) -> bool:
    return isinstance(term, str) and term.startswith("_:")


@dataclass(frozen=True, order=True)
class ClassDecl:
    iri: str
    label: Optional[str] = None
    curie: Optional[str] = None
    deprecated: bool = False


@dataclass(frozen=True, order=True)
class PropertyDecl:
    iri: str
    kind: str  # "object" | "data"
    label: Optional[str] = None
    domain: Optional[str] = None
    range: Optional[str] = None  # class IRI, or datatype IRI for data properties

    def __post_init__(self):
        if self.kind not in ("object", "data"):
            raise ValueError(f"unknown property kind: {self.kind}")


@dataclass(frozen=True)
class AxiomTally:
    """Axiom counts split by category.

    ``headline`` (declaration plus logical axioms) is the number quoted in
    summaries; annotation assertions are tallied but reported separately, so
    every comparison against an external tool's total can be itemized
    category by category.
    """

    declaration: int = 0
    subclass: int = 0
    domain: int = 0
    range: int = 0
    annotation: int = 0
    assertion: int = 0

    def __post_init__(self):
        for name in ("declaration", "subclass", "domain", "range", "annotation", "assertion"):
            if getattr(self, name) < 0:
                raise ValueError(f"negative axiom count for {name}")

    @property
    def total(self) -> int:
        return (self.declaration + self.subclass + self.domain + self.range
                + self.annotation + self.assertion)

    @property
    def headline(self) -> int:
        return self.total - self.annotation

    def as_dict(self) -> dict:
        return {
            "declaration": self.declaration,
            "subclass": self.subclass,
            "domain": self.domain,
            "range": self.range,
            "annotation": self.annotation,
            "assertion": self.assertion,
            "total": self.total,
            "headline": self.headline,
        }


#: annotation entries per subject: sorted tuple of (property IRI, value)
AnnotationMap = Mapping[str, tuple]


@dataclass(frozen=True)
class OntologyModel:
    ontology_iri: Optional[str]
    classes: frozenset[ClassDecl]
    subclass_axioms: frozenset[tuple[str, str]]  # (sub, super), both named classes
    object_properties: frozenset[PropertyDecl]
    data_properties: frozenset[PropertyDecl]
    individuals: frozenset[tuple[str, frozenset[str]]]
    annotations: Mapping[str, tuple]
    axiom_tally: AxiomTally
    imports: frozenset[str] = frozenset()

    def class_iris(self) -> frozenset[str]:
        return frozenset(c.iri for c in self.classes)

    def class_by_iri(self) -> dict[str, ClassDecl]:
        return {c.iri: c for c in self.classes}

    def property_iris(self) -> frozenset[str]:
        return frozenset(p.iri for p in self.object_properties | self.data_properties)

    def summary(self) -> dict:
        return {
            "ontology_iri": self.ontology_iri,
            "classes": len(self.classes),
            "subclass_axioms": len(self.subclass_axioms),
            "object_properties": len(self.object_properties),
            "data_properties": len(self.data_properties),
            "individuals": len(self.individuals),
            "imports": sorted(self.imports),
            "axioms": self.axiom_tally.as_dict(),
        }


def normalize_annotations(entries: Mapping[str, Iterable[tuple]]) -> dict[str, tuple]:
    """Canonical annotation map: entries deduplicated and sorted per subject."""

    def key(entry):
        prop, value = entry
        if isinstance(value, Literal):
            return (prop, 1, value.value, value.datatype or "", value.lang or "")
        return (prop, 0, value, "", "")

    return {
        subject: tuple(sorted(set(items), key=key))
        for subject, items in sorted(entries.items())
        if items
    }


def with_tally(model: OntologyModel, tally: AxiomTally) -> OntologyModel:
    return replace(model, axiom_tally=tally)
