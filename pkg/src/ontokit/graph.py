"""IS-A taxonomy graph: construction, audits, and hierarchical queries.

The graph is immutable after build_graph returns; every query is read-only.
owl:Thing plays the designated-root role, mirroring how Protege anchors
every class tree.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import UnknownIriError
from .model import OntologyModel
from .vocab import OWL, XSD_NS

ROOT_IRI = OWL.Thing


class RelationKind(enum.Enum):
    IDENTICAL = "identical"
    PARENT_CHILD = "parent-child"
    ANCESTOR = "ancestor"
    DESCENDANT_INVERSE = "descendant-inverse"
    UNRELATED = "unrelated"


@dataclass(frozen=True)
class HierRelation:
    kind: RelationKind
    distance: Optional[int]  # 0 identical, 1 parent-child, >=2 ancestor; None unrelated


@dataclass(frozen=True)
class TaxonomyGraph:
    root: str
    nodes: frozenset[str]  # class IRIs plus the root
    edges: frozenset[tuple[str, str]]  # child -> parent
    parents: dict[str, tuple[str, ...]]
    children: dict[str, tuple[str, ...]]
    labels: dict[str, str]  # display label per node
    label_index: dict[str, tuple[str, ...]]  # normalized label -> IRIs

    def class_nodes(self) -> list[str]:
        return sorted(self.nodes - {self.root})

    def resolve_label(self, label: str) -> tuple[str, ...]:
        return self.label_index.get(normalize_label(label), ())


@dataclass(frozen=True)
class AuditReport:
    cycles: tuple[tuple[str, ...], ...]
    orphans: tuple[str, ...]
    duplicate_labels: tuple[tuple[str, tuple[str, ...]], ...]
    dangling_refs: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not (self.cycles or self.orphans or self.duplicate_labels
                    or self.dangling_refs)

    def to_json(self) -> dict:
        return {
            "report": "structural-audit",
            "version": 1,
            "passed": self.passed,
            "cycles": [list(c) for c in self.cycles],
            "orphans": list(self.orphans),
            "duplicate_labels": [{"label": lbl, "iris": list(iris)}
                                 for lbl, iris in self.duplicate_labels],
            "dangling_refs": list(self.dangling_refs),
        }


def normalize_label(label: str) -> str:
    """Casefold and collapse runs of whitespace; no stemming."""
    return " ".join(label.split()).casefold()


def display_label(iri: str, declared: Optional[str]) -> str:
    """Declared label, else the IRI local name with underscores opened up."""
    if declared:
        return declared
    local = re.split(r"[#/]", iri)[-1] or iri
    return local.replace("_", " ")


def build_graph(model: OntologyModel) -> TaxonomyGraph:
    """One node per named class; parentless classes hang off the root."""
    class_iris = set(model.class_iris())
    parents: dict[str, list[str]] = {iri: [] for iri in class_iris}
    parents[ROOT_IRI] = []
    for sub, sup in model.subclass_axioms:
        if sub in parents:
            parents[sub].append(sup)
    for iri in class_iris:
        if not parents[iri]:
            parents[iri].append(ROOT_IRI)

    children: dict[str, list[str]] = {iri: [] for iri in set(parents) | class_iris}
    for child, parent_list in parents.items():
        for parent in parent_list:
            children.setdefault(parent, []).append(child)

    labels = {ROOT_IRI: "Thing"}
    for cls in model.classes:
        labels[cls.iri] = display_label(cls.iri, cls.label)

    label_index: dict[str, list[str]] = {}
    for iri in class_iris:
        label_index.setdefault(normalize_label(labels[iri]), []).append(iri)

    edges = {(child, parent) for child, plist in parents.items() for parent in plist}
    return TaxonomyGraph(
        root=ROOT_IRI,
        nodes=frozenset(class_iris) | {ROOT_IRI},
        edges=frozenset(edges),
        parents={k: tuple(sorted(v)) for k, v in parents.items()},
        children={k: tuple(sorted(v)) for k, v in children.items()},
        labels=labels,
        label_index={k: tuple(sorted(v)) for k, v in sorted(label_index.items())},
    )


def detect_cycles(graph: TaxonomyGraph, limit: int = 1000) -> list[list[str]]:
    """All elementary cycles among IS-A edges (empty for a DAG).

    Tarjan's SCC pass narrows the search; cycles are then enumerated within
    each nontrivial component by DFS from its smallest node, Johnson-style.
    """
    adjacency = {n: [p for p in graph.parents.get(n, ()) if p in graph.nodes]
                 for n in graph.nodes}
    cycles = []
    for component in _tarjan_sccs(adjacency):
        if len(component) == 1:
            node = next(iter(component))
            if node in adjacency[node]:
                cycles.append([node])
            continue
        cycles.extend(_elementary_cycles(component, adjacency, limit - len(cycles)))
        if len(cycles) >= limit:
            break
    return sorted(cycles)[:limit]


def _tarjan_sccs(adjacency: dict[str, list[str]]) -> list[set[str]]:
    index_of: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[set[str]] = []
    counter = [0]

    def strongconnect(start):
        # iterative Tarjan to stay safe on deep chains
        work = [(start, iter(adjacency[start]))]
        index_of[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, successors = work[-1]
            advanced = False
            for succ in successors:
                if succ not in index_of:
                    index_of[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(adjacency[succ])))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index_of[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index_of[node]:
                component = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                sccs.append(component)

    for node in sorted(adjacency):
        if node not in index_of:
            strongconnect(node)
    return sccs


def _elementary_cycles(component: set[str], adjacency, limit: int) -> list[list[str]]:
    found: list[list[str]] = []
    nodes = sorted(component)
    for start_pos, start in enumerate(nodes):
        allowed = set(nodes[start_pos:])
        path = [start]
        on_path = {start}
        stack = [iter(sorted(set(adjacency[start]) & allowed))]
        while stack and len(found) < limit:
            try:
                nxt = next(stack[-1])
            except StopIteration:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                found.append(list(path))
            elif nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(iter(sorted(set(adjacency[nxt]) & allowed)))
        if len(found) >= limit:
            break
    return found


def relation_between(graph: TaxonomyGraph, a: str, b: str) -> HierRelation:
    """Hierarchical relation of ``a`` to ``b`` along IS-A edges.

    parent-child means ``a`` is a direct parent of ``b``; ancestor means a
    chain of two or more IS-A hops from ``b`` up to ``a``. Distance is the
    shortest such chain (multiple inheritance allowed). Siblings, sharing
    only an ancestor, are unrelated.
    """
    for iri in (a, b):
        if iri not in graph.nodes:
            raise UnknownIriError(iri)
    if a == b:
        return HierRelation(RelationKind.IDENTICAL, 0)
    up = _distance_up(graph, b, a)
    if up is not None:
        kind = RelationKind.PARENT_CHILD if up == 1 else RelationKind.ANCESTOR
        return HierRelation(kind, up)
    down = _distance_up(graph, a, b)
    if down is not None:
        return HierRelation(RelationKind.DESCENDANT_INVERSE, down)
    return HierRelation(RelationKind.UNRELATED, None)


def _distance_up(graph: TaxonomyGraph, start: str, target: str) -> Optional[int]:
    """Shortest number of child->parent hops from start to target (BFS)."""
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        node, dist = frontier.popleft()
        for parent in graph.parents.get(node, ()):
            if parent == target:
                return dist + 1
            if parent not in seen and parent in graph.nodes:
                seen.add(parent)
                frontier.append((parent, dist + 1))
    return None


def ancestors_of(graph: TaxonomyGraph, iri: str, max_depth: Optional[int] = None,
                 include_root: bool = False) -> dict[str, int]:
    """All ancestors with their shortest distance from ``iri``."""
    result: dict[str, int] = {}
    frontier = deque([(iri, 0)])
    seen = {iri}
    while frontier:
        node, dist = frontier.popleft()
        if max_depth is not None and dist >= max_depth:
            continue
        for parent in graph.parents.get(node, ()):
            if parent in seen or parent not in graph.nodes:
                continue
            seen.add(parent)
            if parent != graph.root or include_root:
                result[parent] = dist + 1
            frontier.append((parent, dist + 1))
    return result


def structural_audit(model: OntologyModel) -> AuditReport:
    """Taxonomy-level consistency: cycle-free, rooted, label-unique, and
    free of references to undeclared classes. Findings sort lexicographically
    so reports are stable across runs."""
    graph = build_graph(model)
    class_iris = set(model.class_iris())

    cycles = [tuple(c) for c in detect_cycles(graph)]

    reachable = {graph.root}
    frontier = deque([graph.root])
    while frontier:
        node = frontier.popleft()
        for child in graph.children.get(node, ()):
            if child not in reachable:
                reachable.add(child)
                frontier.append(child)
    orphans = tuple(sorted(class_iris - reachable))

    duplicates = tuple(
        (label, iris)
        for label, iris in graph.label_index.items()
        if len(iris) > 1
    )

    referenced = set()
    for sub, sup in model.subclass_axioms:
        referenced.update((sub, sup))
    for prop in model.object_properties:
        referenced.update(x for x in (prop.domain, prop.range) if x)
    for prop in model.data_properties:
        if prop.domain:
            referenced.add(prop.domain)
    for _, type_iris in model.individuals:
        referenced.update(type_iris)
    dangling = tuple(sorted(
        iri for iri in referenced - class_iris
        if iri != ROOT_IRI and not iri.startswith(XSD_NS)
    ))

    return AuditReport(cycles=tuple(sorted(cycles)), orphans=orphans,
                       duplicate_labels=duplicates, dangling_refs=dangling)
