"""Ontology merging and CURIE annotation.

Merging is union-by-IRI by default: identical IRIs across sources collapse
into one class, axioms and annotations are united, and each source's
top-level classes either stay top-level or are re-parented under an
alignment target from the policy. The merge never mutates its inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Sequence

from .errors import (CurieAnnotationError, MergeCycleError, MergePolicyError,
                     ModelInconsistencyError)
from .graph import build_graph, detect_cycles
from .ingest import tally_from_model
from .model import (AxiomTally, ClassDecl, Literal, OntologyModel, PropertyDecl,
                    normalize_annotations)
from .vocab import SKOS

UNION_BY_IRI = "union-by-iri"
RENAME_WITH_PREFIX = "rename-with-prefix"


@dataclass(frozen=True)
class MergePolicy:
    collision_rule: str = UNION_BY_IRI
    #: source top-level class IRI -> class IRI to re-parent it under;
    #: classes without an entry keep the shared root as their parent
    root_alignment: Mapping[str, str] = field(default_factory=dict)
    #: prefix -> namespace, used to stamp CURIEs onto the merged classes
    curie_prefixes: Mapping[str, str] = field(default_factory=dict)
    #: namespace per source ontology IRI, used only under rename-with-prefix
    rename_namespaces: Mapping[str, str] = field(default_factory=dict)
    result_iri: Optional[str] = None

    def __post_init__(self):
        if self.collision_rule not in (UNION_BY_IRI, RENAME_WITH_PREFIX):
            raise MergePolicyError(f"unknown collision rule: {self.collision_rule}")
        namespaces = list(self.rename_namespaces.values())
        if len(namespaces) != len(set(namespaces)):
            raise MergePolicyError("rename namespaces collide across sources")

    @classmethod
    def from_json(cls, doc: Mapping) -> "MergePolicy":
        return cls(
            collision_rule=doc.get("collision_rule", UNION_BY_IRI),
            root_alignment=dict(doc.get("root_alignment", {})),
            curie_prefixes=dict(doc.get("curie_prefixes", {})),
            rename_namespaces=dict(doc.get("rename_namespaces", {})),
            result_iri=doc.get("result_iri"),
        )

    @classmethod
    def load(cls, path) -> "MergePolicy":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json(json.load(handle))


def merge(models: Sequence[OntologyModel], policy: MergePolicy) -> OntologyModel:
    """Merge two or more models under the policy.

    Raises MergeCycleError when the union (including alignment edges) is no
    longer acyclic — the error names one offending IS-A chain.
    """
    if len(models) < 2:
        raise MergePolicyError("merge needs at least two models")
    if policy.collision_rule == RENAME_WITH_PREFIX:
        models = _rename_collisions(models, policy)

    classes: dict[str, ClassDecl] = {}
    for model in models:
        for cls in sorted(model.classes):
            seen = classes.get(cls.iri)
            classes[cls.iri] = cls if seen is None else _merge_class(seen, cls)

    subclass_axioms: set[tuple[str, str]] = set()
    for model in models:
        subclass_axioms |= model.subclass_axioms

    for model in models:
        tops = sorted(model.class_iris()
                      - {sub for sub, _ in model.subclass_axioms})
        for top in tops:
            target = policy.root_alignment.get(top)
            if target is None:
                continue
            if target not in classes:
                raise MergePolicyError(
                    f"root alignment target {target} is not a class of any source")
            subclass_axioms.add((top, target))

    object_properties = _merge_properties(models, "object")
    data_properties = _merge_properties(models, "data")
    overlap = ({p.iri for p in object_properties} & {p.iri for p in data_properties})
    if overlap:
        raise ModelInconsistencyError(overlap, "merged as both object and data property")

    individuals: dict[str, set[str]] = {}
    for model in models:
        for iri, type_iris in model.individuals:
            individuals.setdefault(iri, set()).update(type_iris)

    annotations: dict[str, list] = {}
    for model in models:
        for subject, entries in model.annotations.items():
            if subject == model.ontology_iri:
                continue  # source-ontology headers do not survive the merge
            annotations.setdefault(subject, []).extend(entries)

    merged = OntologyModel(
        ontology_iri=policy.result_iri or "urn:ontokit:merged",
        classes=frozenset(classes.values()),
        subclass_axioms=frozenset(subclass_axioms),
        object_properties=object_properties,
        data_properties=data_properties,
        individuals=frozenset((iri, frozenset(ts)) for iri, ts in individuals.items()),
        annotations=normalize_annotations(annotations),
        axiom_tally=AxiomTally(),
        imports=frozenset().union(*(m.imports for m in models)),
    )
    merged = replace(merged, axiom_tally=tally_from_model(merged))

    cycles = detect_cycles(build_graph(merged))
    if cycles:
        chain = cycles[0] + [cycles[0][0]]
        raise MergeCycleError(chain)

    if policy.curie_prefixes:
        merged = annotate_curies(merged, policy.curie_prefixes)
    return merged


def merge_summary(merged: OntologyModel, sources: Sequence[str]) -> dict:
    return {
        "report": "merge-summary",
        "version": 1,
        "sources": list(sources),
        **merged.summary(),
    }


def annotate_curies(model: OntologyModel, prefix_map: Mapping[str, str],
                    default_prefix: Optional[str] = None,
                    curie_property: str = SKOS.notation) -> OntologyModel:
    """Stamp a CURIE onto every class by longest-prefix namespace match.

    Idempotent: classes whose CURIE already round-trips are left alone, and
    re-annotation adds no duplicate annotation entries. Classes outside every
    namespace fall back to ``default_prefix``; with no default they are
    collected into a CurieAnnotationError.
    """
    by_length = sorted(prefix_map.items(), key=lambda kv: -len(kv[1]))
    unmatched = []
    assignments: dict[str, str] = {}
    for cls in sorted(model.classes):
        chosen = None
        for prefix, namespace in by_length:
            if cls.iri.startswith(namespace) and len(cls.iri) > len(namespace):
                chosen = f"{prefix}:{cls.iri[len(namespace):]}"
                break
        if chosen is None:
            if default_prefix is None:
                unmatched.append(cls.iri)
                continue
            chosen = f"{default_prefix}:{cls.iri}"
        assignments[cls.iri] = chosen
    if unmatched:
        raise CurieAnnotationError(unmatched)

    classes = frozenset(replace(cls, curie=assignments[cls.iri]) for cls in model.classes)
    annotations = {s: list(entries) for s, entries in model.annotations.items()}
    added = 0
    for iri, curie in assignments.items():
        entry = (curie_property, Literal(curie))
        entries = annotations.setdefault(iri, [])
        if entry not in entries:
            entries.append(entry)
            added += 1
    tally = replace(model.axiom_tally,
                    annotation=model.axiom_tally.annotation + added)
    return replace(model, classes=classes,
                   annotations=normalize_annotations(annotations),
                   axiom_tally=tally)


def _merge_class(first: ClassDecl, second: ClassDecl) -> ClassDecl:
    return ClassDecl(
        iri=first.iri,
        label=first.label or second.label,
        curie=first.curie or second.curie,
        deprecated=first.deprecated or second.deprecated,
    )


def _merge_properties(models, kind) -> frozenset[PropertyDecl]:
    merged: dict[str, PropertyDecl] = {}
    for model in models:
        source = model.object_properties if kind == "object" else model.data_properties
        for prop in sorted(source):
            seen = merged.get(prop.iri)
            if seen is None:
                merged[prop.iri] = prop
            else:
                merged[prop.iri] = PropertyDecl(
                    iri=prop.iri, kind=kind,
                    label=seen.label or prop.label,
                    domain=seen.domain or prop.domain,
                    range=seen.range or prop.range,
                )
    return frozenset(merged.values())


def _rename_collisions(models: Sequence[OntologyModel],
                       policy: MergePolicy) -> list[OntologyModel]:
    seen: dict[str, int] = {}
    renamed_models: list[OntologyModel] = []
    for index, model in enumerate(models):
        mapping: dict[str, str] = {}
        for iri in sorted(model.class_iris()):
            if iri in seen:
                namespace = policy.rename_namespaces.get(model.ontology_iri or "")
                if not namespace:
                    raise MergePolicyError(
                        f"IRI collision on {iri} and no rename namespace for source "
                        f"{model.ontology_iri or index}")
                local = iri.rsplit("#", 1)[-1].rsplit("/", 1)[-1]
                mapping[iri] = namespace + local
            else:
                seen[iri] = index
        renamed_models.append(_apply_renames(model, mapping) if mapping else model)
    return renamed_models


def _apply_renames(model: OntologyModel, mapping: dict[str, str]) -> OntologyModel:
    def ren(iri):
        return mapping.get(iri, iri)

    classes = frozenset(replace(c, iri=ren(c.iri)) for c in model.classes)
    axioms = frozenset((ren(a), ren(b)) for a, b in model.subclass_axioms)
    annotations = {ren(s): list(v) for s, v in model.annotations.items()}
    obj = frozenset(replace(p, domain=ren(p.domain) if p.domain else None,
                            range=ren(p.range) if p.range else None)
                    for p in model.object_properties)
    data = frozenset(replace(p, domain=ren(p.domain) if p.domain else None)
                     for p in model.data_properties)
    individuals = frozenset((ren(i), frozenset(ren(t) for t in ts))
                            for i, ts in model.individuals)
    return replace(model, classes=classes, subclass_axioms=axioms,
                   annotations=normalize_annotations(annotations),
                   object_properties=obj, data_properties=data,
                   individuals=individuals)
