"""Serialize an OntologyModel back to RDF/XML.

Output is deterministic (entities sorted by IRI, annotations in canonical
order) so that identical models produce identical bytes, and reparsing a
written file rebuilds an equal model.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .model import Literal, OntologyModel
from .vocab import CORE_PREFIXES, OWL, RDF, RDFS

_BUILTIN = {
    RDFS.label: "rdfs:label",
    RDFS.comment: "rdfs:comment",
    RDFS.subClassOf: "rdfs:subClassOf",
    RDFS.domain: "rdfs:domain",
    RDFS.range: "rdfs:range",
    OWL.deprecated: "owl:deprecated",
    OWL.imports: "owl:imports",
}


def write_rdfxml(model: OntologyModel) -> str:
    """Render the model as an RDF/XML document (UTF-8 text)."""
    qname = _QNames()
    body: list[str] = []

    if model.ontology_iri is not None:
        iri = model.ontology_iri
        lines = [f'  <owl:Ontology rdf:about={quoteattr(iri)}>']
        for imp in sorted(model.imports):
            lines.append(f'    <owl:imports rdf:resource={quoteattr(imp)}/>')
        _annotation_lines(lines, model.annotations.get(iri, ()), qname)
        lines.append('  </owl:Ontology>')
        body.append(_collapse(lines, f'  <owl:Ontology rdf:about={quoteattr(iri)}/>'))

    parents: dict[str, list[str]] = {}
    for sub, sup in model.subclass_axioms:
        parents.setdefault(sub, []).append(sup)

    for cls in sorted(model.classes):
        lines = [f'  <owl:Class rdf:about={quoteattr(cls.iri)}>']
        for parent in sorted(parents.get(cls.iri, ())):
            lines.append(f'    <rdfs:subClassOf rdf:resource={quoteattr(parent)}/>')
        _annotation_lines(lines, model.annotations.get(cls.iri, ()), qname)
        lines.append('  </owl:Class>')
        body.append(_collapse(lines, f'  <owl:Class rdf:about={quoteattr(cls.iri)}/>'))

    for tag, props in (("owl:ObjectProperty", model.object_properties),
                       ("owl:DatatypeProperty", model.data_properties)):
        for prop in sorted(props):
            lines = [f'  <{tag} rdf:about={quoteattr(prop.iri)}>']
            if prop.domain:
                lines.append(f'    <rdfs:domain rdf:resource={quoteattr(prop.domain)}/>')
            if prop.range:
                lines.append(f'    <rdfs:range rdf:resource={quoteattr(prop.range)}/>')
            _annotation_lines(lines, model.annotations.get(prop.iri, ()), qname)
            lines.append(f'  </{tag}>')
            body.append(_collapse(lines, f'  <{tag} rdf:about={quoteattr(prop.iri)}/>'))

    for ind_iri, type_iris in sorted(model.individuals):
        lines = [f'  <owl:NamedIndividual rdf:about={quoteattr(ind_iri)}>']
        for type_iri in sorted(type_iris):
            lines.append(f'    <rdf:type rdf:resource={quoteattr(type_iri)}/>')
        _annotation_lines(lines, model.annotations.get(ind_iri, ()), qname)
        lines.append('  </owl:NamedIndividual>')
        body.append(_collapse(lines, f'  <owl:NamedIndividual rdf:about={quoteattr(ind_iri)}/>'))

    ns_attrs = [f'xmlns:{p}={quoteattr(ns)}'
                for p, ns in sorted(CORE_PREFIXES.items()) + sorted(qname.extra.items())]
    header = '<?xml version="1.0" encoding="UTF-8"?>\n<rdf:RDF\n    ' \
             + "\n    ".join(ns_attrs) + ">"
    return header + "\n" + "\n".join(body) + "\n</rdf:RDF>\n"


def write_rdfxml_file(model: OntologyModel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(write_rdfxml(model))


class _QNames:
    """Maps annotation-predicate IRIs onto namespace prefixes for emission."""

    def __init__(self):
        self.extra: dict[str, str] = {}
        self._by_ns: dict[str, str] = {}

    def of(self, iri: str) -> str:
        if iri in _BUILTIN:
            return _BUILTIN[iri]
        for prefix, ns in CORE_PREFIXES.items():
            if iri.startswith(ns) and _xml_name(iri[len(ns):]):
                return f"{prefix}:{iri[len(ns):]}"
        ns, local = _split_iri(iri)
        prefix = self._by_ns.get(ns)
        if prefix is None:
            prefix = f"ns{len(self.extra) + 1}"
            self._by_ns[ns] = prefix
            self.extra[prefix] = ns
        return f"{prefix}:{local}"


def _split_iri(iri: str):
    for sep in ("#", "/"):
        head, mark, local = iri.rpartition(sep)
        if mark and _xml_name(local):
            return head + mark, local
    raise ValueError(f"cannot derive a QName for predicate IRI: {iri}")


def _xml_name(local: str) -> bool:
    return bool(local) and (local[0].isalpha() or local[0] == "_") \
        and all(c.isalnum() or c in "_-." for c in local)


def _annotation_lines(lines: list[str], entries, qname: _QNames):
    for prop, value in entries:
        name = qname.of(prop)
        if isinstance(value, Literal):
            attrs = ""
            if value.datatype:
                attrs = f' rdf:datatype={quoteattr(value.datatype)}'
            elif value.lang:
                attrs = f' xml:lang={quoteattr(value.lang)}'
            lines.append(f'    <{name}{attrs}>{escape(value.value)}</{name}>')
        else:
            lines.append(f'    <{name} rdf:resource={quoteattr(value)}/>')


def _collapse(lines: list[str], empty_form: str) -> str:
    if len(lines) == 2:  # open + close with nothing between
        return empty_form
    return "\n".join(lines)
