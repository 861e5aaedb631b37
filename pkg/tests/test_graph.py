"""Taxonomy graph: construction, cycle detection (with an independent
topological-sort oracle), hierarchical relations, and the structural audit."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontokit.errors import UnknownIriError
from ontokit.graph import (ROOT_IRI, RelationKind, build_graph, detect_cycles,
                           relation_between, structural_audit)

from conftest import NS, toy_model


def kahn_has_cycle(nodes, edges):
    """Independent oracle: Kahn's algorithm fails to order iff a cycle exists."""
    out = {n: [] for n in nodes}
    indegree = {n: 0 for n in nodes}
    for child, parent in edges:
        out[child].append(parent)
        indegree[parent] += 1
    queue = [n for n in nodes if indegree[n] == 0]
    ordered = 0
    while queue:
        node = queue.pop()
        ordered += 1
        for succ in out[node]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                queue.append(succ)
    return ordered != len(nodes)


def test_two_node_chain_attaches_top_to_root():
    graph = build_graph(toy_model(["A", "B"], axioms=[("B", "A")]))
    assert (NS + "B", NS + "A") in graph.edges
    assert (NS + "A", ROOT_IRI) in graph.edges
    assert len(graph.nodes) == 3  # A, B, root


def test_cycle_fixture_reports_the_pair():
    model = toy_model(["A", "B"], axioms=[("A", "B"), ("B", "A")])
    cycles = detect_cycles(build_graph(model))
    assert cycles == [[NS + "A", NS + "B"]]


def test_dag_fixture_no_cycles_cross_checked_by_toposort():
    rng = random.Random(1234)
    names = [f"N{i}" for i in range(200)]
    axioms = []
    for i, name in enumerate(names[1:], start=1):
        for parent in rng.sample(range(i), k=min(i, rng.choice((1, 1, 2)))):
            axioms.append((name, names[parent]))  # edges only to earlier nodes: a DAG
    model = toy_model(names, axioms=axioms)
    graph = build_graph(model)
    assert detect_cycles(graph) == []
    assert not kahn_has_cycle(sorted(graph.nodes),
                              [e for e in graph.edges])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 12), st.integers(0, 12)), max_size=30))
def test_cycle_detector_agrees_with_toposort_oracle(raw_edges):
    names = [f"H{i}" for i in range(13)]
    axioms = [(names[a], names[b]) for a, b in raw_edges if a != b]
    graph = build_graph(toy_model(names, axioms=set(axioms)))
    has_cycle = bool(detect_cycles(graph))
    assert has_cycle == kahn_has_cycle(sorted(graph.nodes), list(graph.edges))


def chain_graph():
    return build_graph(toy_model(["A", "B", "C", "D", "X"],
                                 axioms=[("B", "A"), ("C", "B"), ("D", "C")]))


def test_relation_identical():
    graph = chain_graph()
    rel = relation_between(graph, NS + "A", NS + "A")
    assert rel.kind is RelationKind.IDENTICAL and rel.distance == 0


def test_relation_parent_child_and_ancestor_distances():
    graph = chain_graph()
    assert relation_between(graph, NS + "A", NS + "B").kind is RelationKind.PARENT_CHILD
    rel = relation_between(graph, NS + "A", NS + "C")
    assert rel.kind is RelationKind.ANCESTOR and rel.distance == 2
    rel = relation_between(graph, NS + "A", NS + "D")
    assert rel.kind is RelationKind.ANCESTOR and rel.distance == 3


def test_relation_descendant_inverse_mirrors_ancestor():
    graph = chain_graph()
    down = relation_between(graph, NS + "C", NS + "A")
    assert down.kind is RelationKind.DESCENDANT_INVERSE and down.distance == 2


def test_siblings_and_strangers_are_unrelated():
    graph = build_graph(toy_model(["A", "B", "C", "X"],
                                  axioms=[("B", "A"), ("C", "A")]))
    assert relation_between(graph, NS + "B", NS + "C").kind is RelationKind.UNRELATED
    assert relation_between(graph, NS + "X", NS + "B").kind is RelationKind.UNRELATED


def test_multiple_inheritance_uses_shortest_path():
    # D under C under B under A, plus a direct D->A shortcut
    graph = build_graph(toy_model(
        ["A", "B", "C", "D"],
        axioms=[("B", "A"), ("C", "B"), ("D", "C"), ("D", "A")]))
    rel = relation_between(graph, NS + "A", NS + "D")
    assert rel.kind is RelationKind.PARENT_CHILD and rel.distance == 1


def test_unknown_iri_is_named_in_the_error():
    with pytest.raises(UnknownIriError, match="nothere"):
        relation_between(chain_graph(), NS + "A", NS + "nothere")


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_relation_antisymmetry_on_random_dags(data):
    n = data.draw(st.integers(3, 10))
    names = [f"R{i}" for i in range(n)]
    axioms = set()
    for i in range(1, n):
        for parent in data.draw(st.sets(st.integers(0, i - 1), max_size=2)):
            axioms.add((names[i], names[parent]))
    graph = build_graph(toy_model(names, axioms=axioms))
    a = NS + data.draw(st.sampled_from(names))
    b = NS + data.draw(st.sampled_from(names))
    forward = relation_between(graph, a, b)
    backward = relation_between(graph, b, a)
    if forward.kind in (RelationKind.PARENT_CHILD, RelationKind.ANCESTOR):
        assert backward.kind is RelationKind.DESCENDANT_INVERSE
        assert backward.distance == forward.distance
    if forward.kind is RelationKind.UNRELATED:
        assert backward.kind is RelationKind.UNRELATED


def test_audit_passes_on_clean_model():
    report = structural_audit(toy_model(["A", "B"], axioms=[("B", "A")]))
    assert report.passed
    assert report.to_json()["passed"] is True


def test_audit_flags_dangling_superclass():
    model = toy_model(["A", "B"], axioms=[("B", "A"), ("A", "Ghost")])
    report = structural_audit(model)
    assert NS + "Ghost" in report.dangling_refs
    assert not report.passed


def test_audit_flags_duplicate_labels_once_with_both_iris():
    model = toy_model(["A", "B", "C"], axioms=[("B", "A"), ("C", "A")],
                      labels={"B": "Poor  housing", "C": "poor housing"})
    report = structural_audit(model)
    assert len(report.duplicate_labels) == 1
    label, iris = report.duplicate_labels[0]
    assert label == "poor housing"
    assert set(iris) == {NS + "B", NS + "C"}


def test_audit_flags_cycle_members_as_orphans_too():
    model = toy_model(["A", "B", "C"], axioms=[("A", "B"), ("B", "A")])
    report = structural_audit(model)
    assert report.cycles
    assert set(report.orphans) == {NS + "A", NS + "B"}
    assert not report.passed


def test_audit_reachability_agrees_with_bfs_oracle():
    model = toy_model(["A", "B", "C", "D"], axioms=[("B", "A"), ("C", "B")])
    graph = build_graph(model)
    report = structural_audit(model)
    # independent BFS over child links from the root
    seen, frontier = set(), [graph.root]
    while frontier:
        node = frontier.pop()
        for child, parent in graph.edges:
            if parent == node and child not in seen:
                seen.add(child)
                frontier.append(child)
    assert report.passed == (seen >= set(graph.nodes - {graph.root}))
