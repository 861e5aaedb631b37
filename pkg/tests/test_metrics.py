"""Schema metrics: hand-computed oracles, internal consistency, and the
fixture-independent algebra check over the published reference values."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontokit.errors import UndefinedMetricError
from ontokit.metrics import (RawCounts, compare_to_reference, metrics_from_counts,
                             render_ratio, schema_metrics)

from conftest import toy_model

# reference values reported for the 611-class merged ontology
REFERENCE = {
    "attribute_richness": 0.008876,
    "inheritance_richness": 0.98816,
    "relationship_richness": 0.12336,
    "axiom_class_ratio": 4.49905,
    "class_relation_ratio": 0.88713,
}


def test_toy_inheritance_richness_two_thirds():
    # root + 2 subclasses, no properties, no instances
    model = toy_model(["Root", "S1", "S2"], axioms=[("S1", "Root"), ("S2", "Root")])
    metrics = schema_metrics(model)
    assert metrics.inheritance_richness == Fraction(2, 3)
    assert metrics.relationship_richness == 0
    assert metrics.attribute_richness == 0
    assert metrics.axiom_class_ratio == Fraction(5, 3)
    assert metrics.class_relation_ratio == Fraction(3, 2)


def test_class_richness_is_one_when_every_class_has_an_instance():
    model = toy_model(["A", "B"], axioms=[("B", "A")],
                      individuals=[("i1", ["A"]), ("i2", ["B"])])
    assert schema_metrics(model).class_richness == 1


def test_attribute_and_relation_counting_rule():
    model = toy_model(
        ["A", "B"], axioms=[("B", "A")],
        object_props=[("rel", "A", "B"), ("floating", None, None)],
        data_props=[("ppm", "B", "http://www.w3.org/2001/XMLSchema#float"),
                    ("loose", None, None)],
    )
    metrics = schema_metrics(model)
    # only properties whose domain resolves to a class are counted
    assert metrics.raw_counts.non_isa_relations == 1
    assert metrics.raw_counts.attributes == 1
    assert metrics.relationship_richness == Fraction(1, 2)


def test_zero_classes_is_an_error():
    with pytest.raises(UndefinedMetricError):
        schema_metrics(toy_model([]))


def test_zero_relations_flags_class_relation_ratio_as_undefined():
    metrics = schema_metrics(toy_model(["A"]))
    assert metrics.class_relation_ratio is None
    assert metrics.relationship_richness == 0
    assert metrics.to_json()["metrics"]["class_relation_ratio"] is None


def test_every_ratio_is_reproducible_from_raw_counts():
    model = toy_model(["A", "B", "C"], axioms=[("B", "A"), ("C", "B")],
                      object_props=[("rel", "A", "B")],
                      data_props=[("d", "C", None)],
                      individuals=[("i", ["A"])])
    metrics = schema_metrics(model)
    assert metrics_from_counts(metrics.raw_counts) == metrics


@settings(max_examples=50, deadline=None)
@given(classes=st.integers(1, 400), subclass=st.integers(1, 400),
       non_isa=st.integers(0, 50), attrs=st.integers(1, 50))
def test_adding_an_axiomless_class_strictly_lowers_richness(classes, subclass, attrs,
                                                            non_isa):
    before = metrics_from_counts(RawCounts(
        classes=classes, subclass_axioms=subclass, non_isa_relations=non_isa,
        attributes=attrs, classes_with_instances=0,
        axioms=classes + subclass + non_isa + attrs))
    after = metrics_from_counts(RawCounts(
        classes=classes + 1, subclass_axioms=subclass, non_isa_relations=non_isa,
        attributes=attrs, classes_with_instances=0,
        axioms=classes + 1 + subclass + non_isa + attrs))
    assert after.inheritance_richness < before.inheritance_richness
    assert after.attribute_richness < before.attribute_richness


def test_reference_values_are_internally_consistent_at_611_classes():
    """Fixture-independent oracle: the published ratios agree with each other.

    inheritance_richness and class_relation_ratio at 611 classes imply the
    subclass-axiom and total-relation counts; those two imply the non-IS-A
    count, which must reproduce relationship_richness.
    """
    classes = 611
    subclass = round(classes * REFERENCE["inheritance_richness"])
    assert subclass == 604
    total_relations = round(classes / REFERENCE["class_relation_ratio"])
    assert total_relations == 689
    non_isa = total_relations - subclass
    assert non_isa == 85
    implied = Fraction(non_isa, total_relations)
    assert abs(float(implied) - REFERENCE["relationship_richness"]) < 5e-4


def test_reference_comparison_reports_deltas_per_metric():
    model = toy_model(["A", "B"], axioms=[("B", "A")])
    doc = compare_to_reference(schema_metrics(model), REFERENCE)
    rows = doc["reference_comparison"]
    assert set(rows) == set(REFERENCE)
    for name, row in rows.items():
        assert row["delta"] == pytest.approx(float(row["ours"]) - row["reference"],
                                             abs=1e-5)


def test_render_ratio_is_five_decimal():
    assert render_ratio(Fraction(2, 3)) == "0.66667"
    assert render_ratio(Fraction(352, 697)) == "0.50502"
    assert render_ratio(None) is None
