"""IRIs for the RDF/RDFS/OWL/XSD/SKOS terms the toolkit touches."""

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
XML_NS = "http://www.w3.org/XML/1998/namespace"


class RDF:
    type = RDF_NS + "type"
    RDF = RDF_NS + "RDF"
    Description = RDF_NS + "Description"
    first = RDF_NS + "first"
    rest = RDF_NS + "rest"
    nil = RDF_NS + "nil"
    li = RDF_NS + "li"
    XMLLiteral = RDF_NS + "XMLLiteral"


class RDFS:
    subClassOf = RDFS_NS + "subClassOf"
    label = RDFS_NS + "label"
    comment = RDFS_NS + "comment"
    domain = RDFS_NS + "domain"
    range = RDFS_NS + "range"
    Datatype = RDFS_NS + "Datatype"


class OWL:
    Ontology = OWL_NS + "Ontology"
    Class = OWL_NS + "Class"
    Thing = OWL_NS + "Thing"
    ObjectProperty = OWL_NS + "ObjectProperty"
    DatatypeProperty = OWL_NS + "DatatypeProperty"
    AnnotationProperty = OWL_NS + "AnnotationProperty"
    NamedIndividual = OWL_NS + "NamedIndividual"
    Restriction = OWL_NS + "Restriction"
    imports = OWL_NS + "imports"
    deprecated = OWL_NS + "deprecated"
    versionIRI = OWL_NS + "versionIRI"
    onProperty = OWL_NS + "onProperty"
    someValuesFrom = OWL_NS + "someValuesFrom"
    allValuesFrom = OWL_NS + "allValuesFrom"
    equivalentClass = OWL_NS + "equivalentClass"
    disjointWith = OWL_NS + "disjointWith"


class SKOS:
    notation = SKOS_NS + "notation"


class XSD:
    string = XSD_NS + "string"
    boolean = XSD_NS + "boolean"
    integer = XSD_NS + "integer"
    float = XSD_NS + "float"
    dateTime = XSD_NS + "dateTime"


#: prefix -> namespace pairs assumed by nearly every caller
CORE_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "xsd": XSD_NS,
    "skos": SKOS_NS,
}
