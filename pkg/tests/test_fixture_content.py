"""Content checks over the bundled ontology fixtures: the planted
hierarchy relations behind the evaluation-sheet examples, the category
roots, and the CURIE annotations."""

import json

from ontokit.graph import RelationKind, build_graph, relation_between
from ontokit.ingest import expand_curie
from ontokit.merge import annotate_curies


def resolve(graph, label):
    iris = graph.resolve_label(label)
    assert len(iris) == 1, (label, iris)
    return iris[0]


def test_grandparent_chain_from_the_evaluation_sheet(ncodh_model):
    graph = build_graph(ncodh_model)
    ancestor = resolve(graph, "Trade and globalisation effect on health disparities")
    descendant = resolve(graph, "Violating labour standards")
    relation = relation_between(graph, ancestor, descendant)
    assert relation.kind is RelationKind.ANCESTOR
    assert relation.distance == 2


def test_direct_child_pair_from_the_evaluation_sheet(ncodh_model):
    graph = build_graph(ncodh_model)
    parent = resolve(graph, "Eating related psychopathology")
    child = resolve(graph, "Binge eating disorder")
    relation = relation_between(graph, parent, child)
    assert relation.kind is RelationKind.PARENT_CHILD
    assert relation.distance == 1


def test_unrelated_pairs_from_the_evaluation_sheet(ncodh_model):
    graph = build_graph(ncodh_model)
    for parent_label, child_label in (
            ("Effect of climatic changes", "Marketing of unhealthy food products"),
            ("Chemical risk in drinking water", "Social media affected health outcomes")):
        a = resolve(graph, parent_label)
        b = resolve(graph, child_label)
        assert relation_between(graph, a, b).kind is RelationKind.UNRELATED


def test_housing_enumeration_children_are_planted(ncodh_model):
    graph = build_graph(ncodh_model)
    housing = resolve(graph, "Poor housing")
    child_labels = {graph.labels[c] for c in graph.children[housing]}
    assert "Pest infested house" in child_labels
    assert "Overcrowding in house" in child_labels


def test_cdoh_has_exactly_five_factor_categories_under_root(cdoh_model):
    graph = build_graph(cdoh_model)
    top_labels = sorted(graph.labels[c] for c in graph.children[graph.root])
    assert top_labels == [
        "Elements attributed by commercial factors",
        "Elements attributed by economic factors",
        "Elements attributed by environmental factors",
        "Elements attributed by individual factors",
        "Elements attributed by social factors",
    ]


def test_ncodh_has_seven_top_level_classes(ncodh_model):
    graph = build_graph(ncodh_model)
    assert len(graph.children[graph.root]) == 7


def test_every_ncodh_class_carries_a_roundtripping_curie(ncodh_model, fixtures_dir):
    prefixes = json.loads((fixtures_dir / "prefixes.json").read_text())
    assert len(ncodh_model.classes) == 611
    for cls in ncodh_model.classes:
        assert cls.curie, cls.iri
        assert expand_curie(cls.curie, prefixes) == cls.iri
    # annotating an already-annotated model changes nothing
    again = annotate_curies(ncodh_model,
                            {k: v for k, v in prefixes.items()
                             if k in ("cdoh", "sdoh", "home", "teo")})
    assert again == ncodh_model
