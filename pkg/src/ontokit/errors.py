"""Exception types shared across the toolkit.

Everything raised on purpose derives from OntokitError so CLI code can map
failures onto exit codes without enumerating modules.
"""


class OntokitError(Exception):
    """Base class for all toolkit errors."""


class RdfXmlParseError(OntokitError):
    """Malformed XML or RDF/XML structure; carries line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnsupportedConstructError(OntokitError):
    """An RDF/XML construct outside the supported subset."""

    def __init__(self, construct, detail=""):
        self.construct = construct
        msg = f"unsupported RDF construct: {construct}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PrefixMapError(OntokitError):
    """Prefix map missing required entries or malformed."""


class ModelInconsistencyError(OntokitError):
    """Contradictory typing in the parsed ontology, e.g. an IRI declared as
    both an object property and a data property."""

    def __init__(self, iris, detail="inconsistent declarations"):
        self.iris = sorted(iris)
        super().__init__(f"{detail}: {', '.join(self.iris)}")


class UnknownIriError(OntokitError, KeyError):
    """Lookup of an IRI that is not a node of the graph."""

    def __init__(self, iri):
        self.iri = iri
        super().__init__(f"unknown IRI: {iri}")


class MergeCycleError(OntokitError):
    """A merge (or its root alignment) would introduce an IS-A cycle."""

    def __init__(self, chain):
        self.chain = list(chain)
        super().__init__("merge would introduce a cycle: " + " -> ".join(self.chain))


class MergePolicyError(OntokitError):
    """Merge policy incomplete or self-contradictory."""


class CurieAnnotationError(OntokitError):
    """Class IRIs that no configured prefix namespace covers."""

    def __init__(self, iris):
        self.iris = sorted(iris)
        super().__init__(
            "no prefix matches these class IRIs (and no default prefix configured): "
            + ", ".join(self.iris)
        )


class UndefinedMetricError(OntokitError):
    """Schema metrics requested on a model where they are undefined."""


class QuotaError(OntokitError):
    """Requested strata quotas exceed the candidate pools."""

    def __init__(self, requested, available):
        self.requested = requested
        self.available = available
        super().__init__(
            f"quota infeasible: requested {requested}, available {available} "
            "(child, grandparent, unrelated)"
        )


class SheetFormatError(OntokitError):
    """A judgment CSV that does not match the sheet it claims to complete."""

    def __init__(self, message, row=None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)


class BackendError(OntokitError):
    """The LLM backend failed or timed out past the retry limit."""


class AdapterManifestError(OntokitError):
    """Backend adapter manifest missing required fields."""
