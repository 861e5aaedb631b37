"""RDF/XML writer: determinism and write/reparse round-trips."""

from ontokit.ingest import build_model
from ontokit.rdfxml import parse_rdfxml_text
from ontokit.writer import write_rdfxml

from conftest import toy_model


def roundtrip(model, prefix_map):
    return build_model(parse_rdfxml_text(write_rdfxml(model)), prefix_map)


def test_write_is_deterministic(prefix_map):
    model = toy_model(["A", "B", "C"], axioms=[("B", "A"), ("C", "A")],
                      labels={"A": "Alpha", "B": "Beta"})
    assert write_rdfxml(model) == write_rdfxml(model)


def test_roundtrip_preserves_every_field(prefix_map):
    model = toy_model(
        ["A", "B", "C"],
        axioms=[("B", "A"), ("C", "B")],
        object_props=[("rel", "A", "B")],
        data_props=[("ppm", "B", "http://www.w3.org/2001/XMLSchema#float")],
        individuals=[("i1", ["A"])],
        labels={"A": "Alpha concept", "B": "Beta concept"},
    )
    back = roundtrip(model, prefix_map)
    assert back == model


def test_roundtrip_with_special_characters(prefix_map):
    model = toy_model(["A"], labels={"A": 'Café "deluxe" & <friends>'})
    back = roundtrip(model, prefix_map)
    assert back.class_by_iri()[list(model.class_iris())[0]].label == \
        'Café "deluxe" & <friends>'


def test_roundtrip_preserves_imports_and_ontology_iri(prefix_map):
    import dataclasses
    model = toy_model(["A"])
    model = dataclasses.replace(model, imports=frozenset({"https://example.org/dep"}))
    back = roundtrip(model, prefix_map)
    assert back.imports == model.imports
    assert back.ontology_iri == model.ontology_iri
