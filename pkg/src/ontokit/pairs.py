"""Stratified concept-pair sheets for hierarchy evaluation.

A sheet mixes three strata — direct child pairs, grandparent/ancestor pairs
(IS-A chains of length 2..cap), and unrelated pairs — shuffled by a seed so
the same inputs always produce the same bytes. The CSV shown to evaluators
never carries the stratum; the sidecar manifest does, keyed by row, so a
completed sheet stays auditable.
"""

from __future__ import annotations

import csv
import io
import random
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import QuotaError, SheetFormatError
from .graph import (RelationKind, TaxonomyGraph, ancestors_of, relation_between)

SHEET_HEADER = ["Parent", "Relation (same)", "Child", "Child?", "Farther away",
                "Reason if unrelated"]
ISA_ARROW = "←IS-A-"

STRATUM_CHILD = "child"
STRATUM_GRANDPARENT = "grandparent"
STRATUM_UNRELATED = "unrelated"
STRATA = (STRATUM_CHILD, STRATUM_GRANDPARENT, STRATUM_UNRELATED)

#: canned answers for pre-filled training rows
TRAINING_ANSWERS = {
    STRATUM_CHILD: ("Yes", "", ""),
    STRATUM_GRANDPARENT: ("", "Yes", "Linked through an intermediate concept, not directly"),
    STRATUM_UNRELATED: ("No", "", "No hierarchical connection between the concepts"),
}


@dataclass(frozen=True)
class ConceptPair:
    parent_label: str
    child_label: str
    parent_iri: str
    child_iri: str
    stratum: str

    def __post_init__(self):
        if self.stratum not in STRATA:
            raise ValueError(f"unknown stratum: {self.stratum}")


@dataclass(frozen=True)
class PairSheet:
    pairs: tuple[ConceptPair, ...]
    training_prefix: int
    seed: int
    source_ontology: str
    quota: tuple[int, int, int]

    def __post_init__(self):
        if self.training_prefix > len(self.pairs):
            raise ValueError("training prefix exceeds sheet length")

    def strata_counts(self) -> dict[str, int]:
        counts = {s: 0 for s in STRATA}
        for pair in self.pairs:
            counts[pair.stratum] += 1
        return counts


@dataclass(frozen=True)
class Judgment:
    pair_index: int
    is_child: str  # "yes" | "no" | ""
    farther_away: str  # "yes" | ""
    reason: str = ""

    def __post_init__(self):
        if self.is_child not in ("yes", "no", ""):
            raise ValueError(f"bad is_child value: {self.is_child!r}")
        if self.farther_away not in ("yes", ""):
            raise ValueError(f"bad farther_away value: {self.farther_away!r}")
        if self.is_child == "yes" and self.farther_away == "yes":
            raise ValueError("a pair cannot be both a direct child and farther away")

    @property
    def includes(self) -> bool:
        """True when the judge accepted the pair as hierarchically related."""
        return self.is_child == "yes" or self.farther_away == "yes"


class ReasonMissingWarning(UserWarning):
    """'No' verdicts are expected to carry a reason (sheet instructions)."""


def sample_pairs(graph: TaxonomyGraph, quota: tuple[int, int, int], seed: int,
                 training_prefix: int = 0, grandparent_range: tuple[int, int] = (2, 4),
                 source_ontology: str = "") -> PairSheet:
    """Draw exactly ``quota`` = (child, grandparent, unrelated) pairs.

    Sampling is without replacement; every emitted pair's stratum is
    re-verified against relation_between before the sheet is returned.
    Raises QuotaError, naming the available pool sizes, when a stratum
    cannot be filled.
    """
    q_child, q_grand, q_unrel = quota
    nodes = [n for n in sorted(graph.nodes) if n != graph.root]
    node_set = set(nodes)

    child_pool = sorted(
        (parent, child)
        for child, parent in graph.edges
        if parent != graph.root and parent in node_set and child in node_set
    )

    lo, hi = grandparent_range
    ancestor_sets: dict[str, dict[str, int]] = {}
    grand_pool = []
    for node in nodes:
        ancestor_sets[node] = ancestors_of(graph, node)
        for anc, dist in sorted(ancestor_sets[node].items()):
            if lo <= dist <= hi:
                grand_pool.append((anc, node))
    grand_pool.sort()

    n = len(nodes)
    related_ordered = sum(len(a) for a in ancestor_sets.values()) * 2
    unrelated_available = n * (n - 1) - related_ordered

    available = (len(child_pool), len(grand_pool), unrelated_available)
    if q_child > available[0] or q_grand > available[1] or q_unrel > available[2]:
        raise QuotaError(quota, available)

    rng = random.Random(seed)
    chosen: list[tuple[str, str, str]] = []
    chosen.extend((p, c, STRATUM_CHILD) for p, c in rng.sample(child_pool, q_child))
    chosen.extend((p, c, STRATUM_GRANDPARENT) for p, c in rng.sample(grand_pool, q_grand))

    taken = {(p, c) for p, c, _ in chosen}
    unrelated: list[tuple[str, str, str]] = []
    attempts = 0
    max_attempts = max(100_000, 1000 * max(q_unrel, 1))
    while len(unrelated) < q_unrel:
        attempts += 1
        if attempts > max_attempts:
            raise QuotaError(quota, available)
        a = nodes[rng.randrange(n)]
        b = nodes[rng.randrange(n)]
        if a == b or (a, b) in taken:
            continue
        if a in ancestor_sets[b] or b in ancestor_sets[a]:
            continue
        taken.add((a, b))
        unrelated.append((a, b, STRATUM_UNRELATED))
    chosen.extend(unrelated)

    rng.shuffle(chosen)
    if training_prefix:
        chosen = _promote_training(chosen, quota, training_prefix)

    pairs = []
    for parent, child, stratum in chosen:
        relation = relation_between(graph, parent, child)
        expected = {
            STRATUM_CHILD: relation.kind is RelationKind.PARENT_CHILD,
            STRATUM_GRANDPARENT: relation.kind is RelationKind.ANCESTOR,
            STRATUM_UNRELATED: relation.kind is RelationKind.UNRELATED,
        }[stratum]
        if not expected:
            raise AssertionError(
                f"sampled pair ({parent}, {child}) fails re-verification for {stratum}")
        pairs.append(ConceptPair(
            parent_label=graph.labels[parent], child_label=graph.labels[child],
            parent_iri=parent, child_iri=child, stratum=stratum))

    return PairSheet(pairs=tuple(pairs), training_prefix=training_prefix,
                     seed=seed, source_ontology=source_ontology, quota=quota)


def _promote_training(chosen, quota, k):
    """Move a proportional draw of each stratum to the front (training rows)."""
    total = sum(quota)
    shares = [q * k / total for q in quota]
    counts = [int(s) for s in shares]
    remainders = sorted(range(3), key=lambda i: (shares[i] - counts[i], -i), reverse=True)
    for i in remainders:
        if sum(counts) == k:
            break
        counts[i] += 1
    per_stratum = dict(zip(STRATA, counts))

    training, rest = [], []
    for item in chosen:
        stratum = item[2]
        if per_stratum.get(stratum, 0) > 0:
            per_stratum[stratum] -= 1
            training.append(item)
        else:
            rest.append(item)
    return training + rest


def export_sheet(sheet: PairSheet) -> str:
    """Render the sheet as CSV: exact header, constant IS-A arrow column,
    training rows pre-filled, stratum withheld."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(SHEET_HEADER)
    for index, pair in enumerate(sheet.pairs):
        if index < sheet.training_prefix:
            is_child, farther, reason = TRAINING_ANSWERS[pair.stratum]
        else:
            is_child = farther = reason = ""
        writer.writerow([pair.parent_label, ISA_ARROW, pair.child_label,
                         is_child, farther, reason])
    return buffer.getvalue()


def render_completed_sheet(sheet: PairSheet, judgments: dict[int, Judgment]) -> str:
    """Sheet CSV with judgment columns filled in.

    Training rows always carry their canned answers; other rows take the
    supplied judgment or stay blank. Byte-compatible with import_judgments.
    """
    display = {"yes": "Yes", "no": "No", "": ""}
    buffer = io.StringIO()
    writer = csv.writer(buffer, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(SHEET_HEADER)
    for index, pair in enumerate(sheet.pairs):
        if index < sheet.training_prefix:
            is_child, farther, reason = TRAINING_ANSWERS[pair.stratum]
        elif index in judgments:
            judgment = judgments[index]
            is_child = display[judgment.is_child]
            farther = display[judgment.farther_away]
            reason = judgment.reason
        else:
            is_child = farther = reason = ""
        writer.writerow([pair.parent_label, ISA_ARROW, pair.child_label,
                         is_child, farther, reason])
    return buffer.getvalue()


def import_judgments(csv_text: str, sheet: PairSheet) -> list[Judgment]:
    """Parse a completed sheet back into judgments, aligned by row order.

    Verifies the header, the row count, and the pair labels; rejects rows
    answering Yes in both columns; warns when a 'No' has no reason.
    """
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows or rows[0] != SHEET_HEADER:
        raise SheetFormatError(f"header mismatch: expected {SHEET_HEADER}", row=1)
    body = rows[1:]
    if len(body) != len(sheet.pairs):
        raise SheetFormatError(
            f"row count {len(body)} does not match sheet of {len(sheet.pairs)} pairs")

    judgments = []
    for index, row in enumerate(body):
        line = index + 2  # 1-based, after header
        if len(row) != len(SHEET_HEADER):
            raise SheetFormatError(f"expected {len(SHEET_HEADER)} columns", row=line)
        parent, _, child, is_child_raw, farther_raw, reason = row
        pair = sheet.pairs[index]
        if parent != pair.parent_label or child != pair.child_label:
            raise SheetFormatError(
                f"labels ({parent!r}, {child!r}) do not match the sheet", row=line)
        is_child = _verdict(is_child_raw, ("yes", "no", ""), "Child?", line)
        farther = _verdict(farther_raw, ("yes", ""), "Farther away", line)
        if is_child == "yes" and farther == "yes":
            raise SheetFormatError("both Child? and Farther away answered Yes", row=line)
        if is_child == "no" and not reason.strip():
            warnings.warn(ReasonMissingWarning(
                f"row {line}: 'No' without a reason; the sheet instructions ask "
                "for one in 'Reason if unrelated'"))
        judgments.append(Judgment(pair_index=index, is_child=is_child,
                                  farther_away=farther, reason=reason))
    return judgments


def _verdict(raw: str, allowed: tuple, column: str, line: int) -> str:
    value = raw.strip().casefold()
    if value not in allowed:
        raise SheetFormatError(f"bad {column} value {raw!r}", row=line)
    return value


def sheet_manifest(sheet: PairSheet, ontology_sha256: str = "") -> dict:
    return {
        "report": "pair-sheet-manifest",
        "version": 1,
        "seed": sheet.seed,
        "quota": {"child": sheet.quota[0], "grandparent": sheet.quota[1],
                  "unrelated": sheet.quota[2]},
        "training_prefix": sheet.training_prefix,
        "source_ontology": sheet.source_ontology,
        "ontology_sha256": ontology_sha256,
        "rows": [
            {"index": i, "parent_iri": p.parent_iri, "child_iri": p.child_iri,
             "parent_label": p.parent_label, "child_label": p.child_label,
             "stratum": p.stratum}
            for i, p in enumerate(sheet.pairs)
        ],
    }


def sheet_from_manifest(doc: dict) -> PairSheet:
    quota = doc["quota"]
    pairs = tuple(
        ConceptPair(parent_label=r["parent_label"], child_label=r["child_label"],
                    parent_iri=r["parent_iri"], child_iri=r["child_iri"],
                    stratum=r["stratum"])
        for r in sorted(doc["rows"], key=lambda r: r["index"])
    )
    return PairSheet(pairs=pairs, training_prefix=doc.get("training_prefix", 0),
                     seed=doc["seed"], source_ontology=doc.get("source_ontology", ""),
                     quota=(quota["child"], quota["grandparent"], quota["unrelated"]))
