"""ontokit: parse OWL taxonomies, audit and merge them, score their schema,
and run hierarchy-evaluation studies (human sheets and LLM concordance)."""

__version__ = "0.1.0"

from .agreement import (KappaResult, Matrix2x2, cohens_kappa, confusion_matrix,
                        fisher_exact, percent_agreement, stats_report)
from .graph import (AuditReport, HierRelation, RelationKind, TaxonomyGraph,
                    build_graph, detect_cycles, relation_between, structural_audit)
from .ingest import build_model, count_axioms, model_summary
from .merge import MergePolicy, annotate_curies, merge
from .metrics import SchemaMetrics, compare_to_reference, schema_metrics
from .model import (AxiomTally, ClassDecl, Literal, OntologyModel, PropertyDecl,
                    Triple)
from .pairs import (ConceptPair, Judgment, PairSheet, export_sheet,
                    import_judgments, sample_pairs, sheet_from_manifest,
                    sheet_manifest)
from .rdfxml import parse_rdfxml, parse_rdfxml_text
from .writer import write_rdfxml, write_rdfxml_file

__all__ = [
    "__version__",
    "AxiomTally", "ClassDecl", "Literal", "OntologyModel", "PropertyDecl", "Triple",
    "parse_rdfxml", "parse_rdfxml_text", "build_model", "count_axioms",
    "model_summary", "write_rdfxml", "write_rdfxml_file",
    "TaxonomyGraph", "AuditReport", "HierRelation", "RelationKind",
    "build_graph", "detect_cycles", "relation_between", "structural_audit",
    "MergePolicy", "merge", "annotate_curies",
    "SchemaMetrics", "schema_metrics", "compare_to_reference",
    "ConceptPair", "PairSheet", "Judgment", "sample_pairs", "export_sheet",
    "import_judgments", "sheet_manifest", "sheet_from_manifest",
    "KappaResult", "Matrix2x2", "percent_agreement", "cohens_kappa",
    "confusion_matrix", "fisher_exact", "stats_report",
]
