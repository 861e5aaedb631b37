import json
from pathlib import Path

import pytest

from ontokit.ingest import build_model
from ontokit.model import AxiomTally, ClassDecl, Literal, OntologyModel, PropertyDecl
from ontokit.rdfxml import parse_rdfxml
from ontokit.vocab import CORE_PREFIXES, RDFS

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"

NS = "https://example.org/toy#"


@pytest.fixture(scope="session")
def prefix_map():
    return dict(CORE_PREFIXES)


def toy_model(class_names, axioms=(), object_props=(), data_props=(),
              individuals=(), labels=None, iri="https://example.org/toy"):
    """Hand-build a small model; names are local parts under the toy namespace."""
    labels = labels or {}
    classes = frozenset(
        ClassDecl(iri=NS + name, label=labels.get(name)) for name in class_names)
    subclass = frozenset((NS + sub, NS + sup) for sub, sup in axioms)
    obj = frozenset(
        PropertyDecl(iri=NS + name, kind="object",
                     domain=(NS + dom if dom else None),
                     range=(NS + rng if rng else None))
        for name, dom, rng in object_props)
    data = frozenset(
        PropertyDecl(iri=NS + name, kind="data",
                     domain=(NS + dom if dom else None), range=rng)
        for name, dom, rng in data_props)
    inds = frozenset(
        (NS + name, frozenset(NS + t for t in types)) for name, types in individuals)
    annotations = {NS + name: ((RDFS.label, Literal(labels[name])),)
                   for name in labels}
    tally = AxiomTally(
        declaration=len(classes) + len(obj) + len(data) + len(inds),
        subclass=len(subclass),
        domain=sum(1 for p in obj | data if p.domain),
        range=sum(1 for p in obj | data if p.range),
        annotation=sum(len(v) for v in annotations.values()),
        assertion=sum(len(t) for _, t in inds),
    )
    return OntologyModel(
        ontology_iri=iri, classes=classes, subclass_axioms=subclass,
        object_properties=obj, data_properties=data, individuals=inds,
        annotations=annotations, axiom_tally=tally)


@pytest.fixture(scope="session")
def fixtures_dir():
    if not FIXTURES.exists():
        pytest.skip("fixtures/ not generated yet (run scripts/make_fixtures.py)")
    return FIXTURES


def load_fixture_model(fixtures_dir: Path, name: str):
    prefixes = json.loads((fixtures_dir / "prefixes.json").read_text())
    triples = parse_rdfxml(fixtures_dir / "ontologies" / name)
    return build_model(triples, prefixes)


@pytest.fixture(scope="session")
def ncodh_model(fixtures_dir):
    return load_fixture_model(fixtures_dir, "ncodh.owl")


@pytest.fixture(scope="session")
def cdoh_model(fixtures_dir):
    return load_fixture_model(fixtures_dir, "cdoh.owl")
