"""Materialize an OntologyModel from raw triples.

The axiom tally is computed here, at triple level, because some axioms
(subclass-of-restriction, annotation-property declarations) never surface in
the model's own fields. ``count_axioms`` simply returns the stored tally;
rebuilding from the same document always reproduces it.

Counting method ("tally-v1"): one declaration per typed entity (classes,
properties of all three kinds, named individuals, datatypes); one subclass
axiom per rdfs:subClassOf triple whose subject is named, anonymous
superclasses included; one domain/range axiom per rdfs:domain / rdfs:range
triple; one annotation per non-structural statement about a named subject;
one assertion per rdf:type or property statement about a named individual.
The headline total excludes annotations so deltas against external tools can
be itemized.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .errors import ModelInconsistencyError, PrefixMapError
from .model import (AxiomTally, ClassDecl, Literal, OntologyModel, PropertyDecl,
                    Triple, is_blank, normalize_annotations)
from .vocab import OWL, RDF, RDFS, SKOS

COUNTING_RULE = "tally-v1"

#: predicates with structural meaning; everything else on a named subject is
#: an annotation assertion
_STRUCTURAL_PREDICATES = {
    RDF.type, RDFS.subClassOf, RDFS.domain, RDFS.range, OWL.imports,
    RDF.first, RDF.rest, OWL.onProperty, OWL.someValuesFrom, OWL.allValuesFrom,
    OWL.equivalentClass, OWL.disjointWith, OWL.versionIRI,
}

_DECLARATION_TYPES = {
    OWL.Class, OWL.ObjectProperty, OWL.DatatypeProperty, OWL.AnnotationProperty,
    OWL.NamedIndividual, RDFS.Datatype,
}


def build_model(triples: Iterable[Triple], prefix_map: Mapping[str, str],
                curie_property: str = SKOS.notation) -> OntologyModel:
    """Assemble classes, properties, axioms and annotations from triples.

    ``prefix_map`` must cover at least owl, rdf and rdfs; it is also used to
    validate CURIE annotations back into class IRIs.
    """
    _check_prefix_map(prefix_map)
    triples = list(triples)

    types: dict[str, set[str]] = defaultdict(set)
    for t in triples:
        if t.predicate == RDF.type and isinstance(t.object, str):
            types[t.subject].add(t.object)

    class_iris = {s for s, ts in types.items()
                  if OWL.Class in ts and not is_blank(s) and s != OWL.Thing}
    object_prop_iris = {s for s, ts in types.items()
                        if OWL.ObjectProperty in ts and not is_blank(s)}
    data_prop_iris = {s for s, ts in types.items()
                      if OWL.DatatypeProperty in ts and not is_blank(s)}
    both = object_prop_iris & data_prop_iris
    if both:
        raise ModelInconsistencyError(both, "declared as both object and data property")
    annotation_prop_iris = {s for s, ts in types.items()
                            if OWL.AnnotationProperty in ts and not is_blank(s)}
    individual_iris = {s for s, ts in types.items()
                       if OWL.NamedIndividual in ts and not is_blank(s)}
    datatype_iris = {s for s, ts in types.items()
                     if RDFS.Datatype in ts and not is_blank(s)}
    ontology_iris = sorted(s for s, ts in types.items()
                           if OWL.Ontology in ts and not is_blank(s))
    ontology_iri = ontology_iris[0] if ontology_iris else None

    subclass_axioms = set()
    domains: dict[str, list[str]] = defaultdict(list)
    ranges: dict[str, list[str]] = defaultdict(list)
    annotations: dict[str, list] = defaultdict(list)
    imports = set()
    tally_subclass = tally_domain = tally_range = tally_assertion = 0

    for t in triples:
        s, p, o = t.subject, t.predicate, t.object
        if p == RDFS.subClassOf:
            if not is_blank(s):
                tally_subclass += 1
                if isinstance(o, str) and not is_blank(o) and OWL.Thing not in (s, o):
                    subclass_axioms.add((s, o))
        elif p == RDFS.domain:
            tally_domain += 1
            if isinstance(o, str):
                domains[s].append(o)
        elif p == RDFS.range:
            tally_range += 1
            if isinstance(o, str):
                ranges[s].append(o)
        elif p == OWL.imports and isinstance(o, str):
            imports.add(o)
        elif p == RDF.type:
            if s in individual_iris and isinstance(o, str) and o in class_iris:
                tally_assertion += 1
        elif p not in _STRUCTURAL_PREDICATES and not is_blank(s):
            if s in individual_iris:
                tally_assertion += 1
            else:
                annotations[s].append((p, o))
        # statements on blank nodes (restriction innards, list cells) carry no
        # tally weight of their own

    annotations = normalize_annotations(annotations)

    classes = frozenset(
        _class_decl(iri, annotations.get(iri, ()), prefix_map, curie_property)
        for iri in class_iris)
    object_properties = frozenset(
        _property_decl(iri, "object", annotations.get(iri, ()), domains, ranges)
        for iri in object_prop_iris)
    data_properties = frozenset(
        _property_decl(iri, "data", annotations.get(iri, ()), domains, ranges)
        for iri in data_prop_iris)
    individuals = frozenset(
        (iri, frozenset(types[iri] & class_iris)) for iri in individual_iris)

    declaration = (len(class_iris) + len(object_prop_iris) + len(data_prop_iris)
                   + len(annotation_prop_iris) + len(individual_iris) + len(datatype_iris))
    annotation_count = sum(len(v) for v in annotations.values())
    tally = AxiomTally(declaration=declaration, subclass=tally_subclass,
                       domain=tally_domain, range=tally_range,
                       annotation=annotation_count, assertion=tally_assertion)

    return OntologyModel(
        ontology_iri=ontology_iri,
        classes=classes,
        subclass_axioms=frozenset(subclass_axioms),
        object_properties=object_properties,
        data_properties=data_properties,
        individuals=individuals,
        annotations=annotations,
        axiom_tally=tally,
        imports=frozenset(imports),
    )


def count_axioms(model: OntologyModel) -> AxiomTally:
    """The tally computed when the model was built."""
    return model.axiom_tally


def tally_from_model(model: OntologyModel) -> AxiomTally:
    """Recompute a tally from model fields alone.

    Used for synthesized models (merges) that never existed as documents.
    Matches build_model's tally whenever the source document had no
    constructs outside the model's fields (no restrictions, no annotation
    property declarations).
    """
    declaration = (len(model.classes) + len(model.object_properties)
                   + len(model.data_properties) + len(model.individuals))
    domain = sum(1 for p in model.object_properties | model.data_properties if p.domain)
    range_ = sum(1 for p in model.object_properties | model.data_properties if p.range)
    annotation = sum(len(v) for v in model.annotations.values())
    assertion = sum(len(ts) for _, ts in model.individuals)
    return AxiomTally(declaration=declaration, subclass=len(model.subclass_axioms),
                      domain=domain, range=range_, annotation=annotation,
                      assertion=assertion)


def model_summary(model: OntologyModel, paper_reference: Mapping[str, int] | None = None) -> dict:
    """Versioned summary document; optionally itemizes deltas against
    externally reported counts (e.g. a publication's axiom total)."""
    doc = {
        "report": "model-summary",
        "version": 1,
        "counting_rule": COUNTING_RULE,
        **model.summary(),
    }
    if paper_reference:
        tally = model.axiom_tally
        comparison = {}
        if "axioms" in paper_reference:
            reported = paper_reference["axioms"]
            comparison["axioms"] = {
                "reported": reported,
                "headline": tally.headline,
                "headline_delta": tally.headline - reported,
                "total_all_categories": tally.total,
                "total_delta": tally.total - reported,
                "by_category": tally.as_dict(),
            }
        for key in ("classes", "object_properties", "data_properties"):
            if key in paper_reference:
                ours = doc[key]
                comparison[key] = {"reported": paper_reference[key], "ours": ours,
                                   "delta": ours - paper_reference[key]}
        doc["reference_comparison"] = comparison
    return doc


def _check_prefix_map(prefix_map: Mapping[str, str]):
    if not prefix_map:
        raise PrefixMapError("prefix map is empty")
    missing = {"owl", "rdf", "rdfs"} - set(prefix_map)
    if missing:
        raise PrefixMapError(f"prefix map missing required prefixes: {sorted(missing)}")


def expand_curie(curie: str, prefix_map: Mapping[str, str]) -> str | None:
    prefix, _, local = curie.partition(":")
    if not local or prefix not in prefix_map:
        return None
    return prefix_map[prefix] + local


def _class_decl(iri, entries, prefix_map, curie_property) -> ClassDecl:
    label = curie = None
    deprecated = False
    for prop, value in entries:
        if prop == RDFS.label and label is None and isinstance(value, Literal):
            label = value.value
        elif prop == curie_property and curie is None and isinstance(value, Literal):
            if expand_curie(value.value, prefix_map) == iri:
                curie = value.value
        elif prop == OWL.deprecated and isinstance(value, Literal):
            deprecated = value.value.strip().lower() == "true"
    return ClassDecl(iri=iri, label=label, curie=curie, deprecated=deprecated)


def _property_decl(iri, kind, entries, domains, ranges) -> PropertyDecl:
    label = None
    for prop, value in entries:
        if prop == RDFS.label and isinstance(value, Literal):
            label = value.value
            break
    domain = sorted(domains[iri])[0] if domains.get(iri) else None
    range_ = sorted(ranges[iri])[0] if ranges.get(iri) else None
    return PropertyDecl(iri=iri, kind=kind, label=label, domain=domain, range=range_)
