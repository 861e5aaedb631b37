"""Schema quality metrics over an ontology model.

All ratios are computed in exact rational arithmetic and rendered to five
decimal places. The counting rule ("declared-domain-pairs-v1") is spelled
out in raw_counts so any delta against an external calculator can be
diagnosed instead of guessed at:

- attributes: data properties whose declared domain resolves to a class,
  one per (class, property) pair;
- non-IS-A relations: object properties counted the same way;
- axioms: the headline tally (declarations + logical axioms, annotations
  excluded).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Optional

from .errors import UndefinedMetricError
from .model import OntologyModel

COUNTING_RULE = "declared-domain-pairs-v1"


@dataclass(frozen=True)
class RawCounts:
    classes: int
    subclass_axioms: int
    non_isa_relations: int
    attributes: int
    classes_with_instances: int
    axioms: int

    @property
    def total_relations(self) -> int:
        return self.subclass_axioms + self.non_isa_relations


@dataclass(frozen=True)
class SchemaMetrics:
    attribute_richness: Fraction
    inheritance_richness: Fraction
    relationship_richness: Fraction
    class_richness: Fraction
    axiom_class_ratio: Fraction
    class_relation_ratio: Optional[Fraction]  # None when there are no relations
    raw_counts: RawCounts

    def to_json(self) -> dict:
        raw = self.raw_counts
        return {
            "report": "schema-metrics",
            "version": 1,
            "counting_rule": COUNTING_RULE,
            "metrics": {name: render_ratio(value) for name, value in self.named()},
            "raw_counts": {
                "classes": raw.classes,
                "subclass_axioms": raw.subclass_axioms,
                "non_isa_relations": raw.non_isa_relations,
                "total_relations": raw.total_relations,
                "attributes": raw.attributes,
                "classes_with_instances": raw.classes_with_instances,
                "axioms": raw.axioms,
            },
        }

    def named(self):
        return (
            ("attribute_richness", self.attribute_richness),
            ("inheritance_richness", self.inheritance_richness),
            ("relationship_richness", self.relationship_richness),
            ("class_richness", self.class_richness),
            ("axiom_class_ratio", self.axiom_class_ratio),
            ("class_relation_ratio", self.class_relation_ratio),
        )


def render_ratio(value: Optional[Fraction]) -> Optional[str]:
    """Five-decimal rendering of an exact ratio; None stays None."""
    if value is None:
        return None
    dec = Decimal(value.numerator) / Decimal(value.denominator)
    return str(dec.quantize(Decimal("0.00001"), rounding=ROUND_HALF_EVEN))


def schema_metrics(model: OntologyModel) -> SchemaMetrics:
    """Compute the six schema ratios from one pass over the model."""
    classes = len(model.classes)
    if classes == 0:
        raise UndefinedMetricError("schema metrics are undefined on an empty ontology")

    class_iris = model.class_iris()
    subclass = len(model.subclass_axioms)
    non_isa = sum(1 for p in model.object_properties
                  if p.domain and p.domain in class_iris)
    attributes = sum(1 for p in model.data_properties
                     if p.domain and p.domain in class_iris)
    instantiated = len({t for _, types in model.individuals for t in types})
    axioms = model.axiom_tally.headline

    raw = RawCounts(classes=classes, subclass_axioms=subclass,
                    non_isa_relations=non_isa, attributes=attributes,
                    classes_with_instances=instantiated, axioms=axioms)
    return metrics_from_counts(raw)


def metrics_from_counts(raw: RawCounts) -> SchemaMetrics:
    """Derive every ratio from raw counts; shared by the internal
    consistency check (recompute-and-compare) and schema_metrics itself."""
    if raw.classes == 0:
        raise UndefinedMetricError("schema metrics are undefined with zero classes")
    total = raw.total_relations
    return SchemaMetrics(
        attribute_richness=Fraction(raw.attributes, raw.classes),
        inheritance_richness=Fraction(raw.subclass_axioms, raw.classes),
        relationship_richness=(Fraction(raw.non_isa_relations, total)
                               if total else Fraction(0)),
        class_richness=Fraction(raw.classes_with_instances, raw.classes),
        axiom_class_ratio=Fraction(raw.axioms, raw.classes),
        class_relation_ratio=(Fraction(raw.classes, total) if total else None),
        raw_counts=raw,
    )


def compare_to_reference(metrics: SchemaMetrics, reference: dict) -> dict:
    """Side-by-side table of our values against externally reported ones.

    Reference values are regression anchors, not oracles: the report carries
    per-metric deltas and leaves judgment to the reader.
    """
    rows = {}
    ours = dict(metrics.named())
    for name, reported in reference.items():
        if name not in ours:
            continue
        value = ours[name]
        delta = None if value is None else float(value) - float(reported)
        rows[name] = {
            "ours": render_ratio(value),
            "reference": float(reported),
            "delta": delta,
        }
    doc = metrics.to_json()
    doc["reference_comparison"] = rows
    return doc
