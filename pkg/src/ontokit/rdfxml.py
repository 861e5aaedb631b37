"""RDF/XML reader producing plain triples.

Supports the subset the Protege toolchain emits: rdf:about / rdf:ID /
rdf:resource / rdf:nodeID, typed node elements, nested node elements,
property attributes, plain / typed / language-tagged literals, and
rdf:parseType "Resource", "Literal" and "Collection". Anything outside that
subset raises UnsupportedConstructError naming the construct; broken XML
raises RdfXmlParseError with line/column. Other OWL serializations (Turtle,
functional syntax, Manchester) are rejected up front.

Parsing is single-threaded per document and keeps no module state, so
distinct documents may be parsed concurrently.
"""

from __future__ import annotations

import io
import os
import xml.etree.ElementTree as ET
from urllib.parse import urljoin

from .errors import RdfXmlParseError, UnsupportedConstructError
from .model import Literal, Triple
from .vocab import RDF, RDF_NS, XML_NS

DEFAULT_MAX_BYTES = 256 * 1024 * 1024

_RDF_ABOUT = f"{{{RDF_NS}}}about"
_RDF_ID = f"{{{RDF_NS}}}ID"
_RDF_NODEID = f"{{{RDF_NS}}}nodeID"
_RDF_RESOURCE = f"{{{RDF_NS}}}resource"
_RDF_PARSETYPE = f"{{{RDF_NS}}}parseType"
_RDF_DATATYPE = f"{{{RDF_NS}}}datatype"
_XML_BASE = f"{{{XML_NS}}}base"
_XML_LANG = f"{{{XML_NS}}}lang"
_XML_SPACE = f"{{{XML_NS}}}space"

_NODE_RESERVED = {_RDF_ABOUT, _RDF_ID, _RDF_NODEID, _XML_BASE, _XML_LANG, _XML_SPACE}
_PROP_RESERVED = {_RDF_RESOURCE, _RDF_NODEID, _RDF_PARSETYPE, _RDF_DATATYPE,
                  _XML_BASE, _XML_LANG, _XML_SPACE}


class _ParseState:
    """Per-document counters; blank-node ids are fresh within one parse."""

    def __init__(self):
        self.triples: list[Triple] = []
        self._next_blank = 0

    def blank(self) -> str:
        bid = f"_:b{self._next_blank}"
        self._next_blank += 1
        return bid

    def emit(self, s, p, o):
        self.triples.append(Triple(s, p, o))


def parse_rdfxml(document, max_bytes: int = DEFAULT_MAX_BYTES) -> frozenset[Triple]:
    """Parse an RDF/XML document into a set of triples.

    ``document`` may be a filesystem path, bytes, or a binary file object.
    Blank node identifiers are document-scoped and deterministic in document
    order, so parsing the same bytes twice yields an identical triple set.
    """
    data = _read_source(document, max_bytes)
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise RdfXmlParseError(f"malformed XML: {exc.msg.split(':')[0]}",
                               line=line, column=column) from exc

    state = _ParseState()
    base = root.get(_XML_BASE, "")
    lang = root.get(_XML_LANG)
    if _tag_iri(root) == RDF.RDF:
        for child in root:
            _node_element(child, state, base, lang)
    else:
        # RDF/XML also allows a single node element as the document root
        _node_element(root, state, base, lang)
    return frozenset(state.triples)


def _read_source(document, max_bytes: int) -> bytes:
    if isinstance(document, bytes):
        data = document
    elif isinstance(document, (str, os.PathLike)):
        size = os.path.getsize(document)
        if size > max_bytes:
            raise RdfXmlParseError(f"document exceeds size bound ({size} > {max_bytes} bytes)")
        with open(document, "rb") as handle:
            data = handle.read()
    elif hasattr(document, "read"):
        data = document.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    else:
        raise TypeError(f"cannot read RDF/XML from {type(document).__name__}")
    if len(data) > max_bytes:
        raise RdfXmlParseError(f"document exceeds size bound ({len(data)} > {max_bytes} bytes)")
    head = data.lstrip()[:1]
    if head and head != b"<":
        raise UnsupportedConstructError(
            "non-XML input", "only the RDF/XML serialization of OWL is accepted")
    return data


def _tag_iri(elem) -> str:
    tag = elem.tag
    if not tag.startswith("{"):
        raise UnsupportedConstructError(f"unqualified element <{tag}>")
    return tag.replace("{", "", 1).replace("}", "", 1)


def _resolve(iri: str, base: str) -> str:
    if not base:
        return iri
    return urljoin(base, iri)


def _scoped(elem, base, lang):
    return elem.get(_XML_BASE, base), elem.get(_XML_LANG, lang)


def _node_element(elem, state, base, lang) -> str:
    """Process a node element; returns the subject term."""
    base, lang = _scoped(elem, base, lang)
    tag = _tag_iri(elem)
    if tag == RDF.li:
        raise UnsupportedConstructError("rdf:li", "container membership properties")

    about = elem.get(_RDF_ABOUT)
    rdf_id = elem.get(_RDF_ID)
    node_id = elem.get(_RDF_NODEID)
    if sum(x is not None for x in (about, rdf_id, node_id)) > 1:
        raise UnsupportedConstructError(
            "conflicting node identifiers", "rdf:about/rdf:ID/rdf:nodeID are exclusive")
    if about is not None:
        subject = _resolve(about, base)
    elif rdf_id is not None:
        subject = _resolve(f"#{rdf_id}", base)
    elif node_id is not None:
        subject = f"_:{node_id}"
    else:
        subject = state.blank()

    if tag != RDF.Description:
        state.emit(subject, RDF.type, tag)

    for attr, value in elem.attrib.items():
        if attr in _NODE_RESERVED:
            continue
        if not attr.startswith("{"):
            raise UnsupportedConstructError(f"unqualified attribute '{attr}'")
        attr_iri = attr.replace("{", "", 1).replace("}", "", 1)
        if attr_iri == RDF.type:
            state.emit(subject, RDF.type, _resolve(value, base))
        elif attr_iri.startswith(RDF_NS):
            raise UnsupportedConstructError(f"rdf attribute rdf:{attr_iri[len(RDF_NS):]}",
                                            "not valid on a node element")
        else:
            state.emit(subject, attr_iri, Literal(value, lang=lang))

    for child in elem:
        _property_element(subject, child, state, base, lang)
    return subject


def _property_element(subject, elem, state, base, lang):
    base, lang = _scoped(elem, base, lang)
    predicate = _tag_iri(elem)
    if predicate == RDF.li:
        raise UnsupportedConstructError("rdf:li", "container membership properties")
    if predicate == RDF.Description:
        raise RdfXmlParseError("rdf:Description used as a property element")
    if elem.get(_RDF_ID) is not None:
        raise UnsupportedConstructError("rdf:ID on a property element", "statement reification")

    parse_type = elem.get(_RDF_PARSETYPE)
    if parse_type is not None:
        _parse_typed_property(subject, predicate, elem, state, base, lang, parse_type)
        return

    resource = elem.get(_RDF_RESOURCE)
    node_id = elem.get(_RDF_NODEID)
    children = list(elem)
    text = elem.text or ""

    if resource is not None or node_id is not None:
        if children or text.strip():
            raise RdfXmlParseError(
                f"property <{predicate}> mixes rdf:resource/rdf:nodeID with content")
        obj = _resolve(resource, base) if resource is not None else f"_:{node_id}"
        state.emit(subject, predicate, obj)
        _emit_property_attrs(obj, elem, state, lang, allow=False)
        return

    if children:
        if text.strip():
            raise RdfXmlParseError(f"property <{predicate}> mixes text and element content")
        if len(children) > 1:
            raise UnsupportedConstructError(
                "multiple node elements inside one property element",
                f"property <{predicate}>")
        obj = _node_element(children[0], state, base, lang)
        state.emit(subject, predicate, obj)
        return

    extra_attrs = [a for a in elem.attrib if a not in (_XML_BASE, _XML_LANG, _XML_SPACE)]
    if extra_attrs and not text.strip():
        # empty property element with property attributes: implicit blank node
        obj = state.blank()
        state.emit(subject, predicate, obj)
        _emit_property_attrs(obj, elem, state, lang, allow=True)
        return

    datatype = elem.get(_RDF_DATATYPE)
    if datatype is not None:
        state.emit(subject, predicate, Literal(text, datatype=_resolve(datatype, base)))
    else:
        state.emit(subject, predicate, Literal(text, lang=lang))


def _parse_typed_property(subject, predicate, elem, state, base, lang, parse_type):
    if parse_type == "Resource":
        obj = state.blank()
        state.emit(subject, predicate, obj)
        for child in elem:
            _property_element(obj, child, state, base, lang)
    elif parse_type == "Literal":
        parts = [elem.text or ""]
        for child in elem:
            parts.append(ET.tostring(child, encoding="unicode"))
        state.emit(subject, predicate, Literal("".join(parts), datatype=RDF.XMLLiteral))
    elif parse_type == "Collection":
        members = [_node_element(child, state, base, lang) for child in elem]
        head = RDF.nil if not members else state.blank()
        state.emit(subject, predicate, head)
        for index, member in enumerate(members):
            state.emit(head, RDF.first, member)
            tail = state.blank() if index + 1 < len(members) else RDF.nil
            state.emit(head, RDF.rest, tail)
            head = tail
    else:
        raise UnsupportedConstructError(f'rdf:parseType="{parse_type}"')


def _emit_property_attrs(subject, elem, state, lang, allow):
    for attr, value in elem.attrib.items():
        if attr in _PROP_RESERVED:
            continue
        if not attr.startswith("{"):
            raise UnsupportedConstructError(f"unqualified attribute '{attr}'")
        attr_iri = attr.replace("{", "", 1).replace("}", "", 1)
        if not allow:
            raise UnsupportedConstructError(
                f"property attribute on a non-empty property element: {attr_iri}")
        if attr_iri == RDF.type:
            state.emit(subject, RDF.type, value)
        else:
            state.emit(subject, attr_iri, Literal(value, lang=lang))


def parse_rdfxml_text(text: str, max_bytes: int = DEFAULT_MAX_BYTES) -> frozenset[Triple]:
    return parse_rdfxml(io.BytesIO(text.encode("utf-8")), max_bytes=max_bytes)
