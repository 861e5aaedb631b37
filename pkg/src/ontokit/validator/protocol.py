"""The IS-A concordance protocol and its outcome classification.

A session asserts the pair as a direct IS-A relationship. Affirmation ends
the session. A denial is probed for the claimed relation; when the claim is
"hierarchical but distant" the responder is challenged to enumerate child
concepts of the parent, and the session records whether the child surfaces
in that list. Every turn is persisted before the next prompt is sent, so a
crashed session still leaves a readable partial transcript.

classify_outcome is a pure function of a transcript; replaying a stored
session always reproduces the same outcome.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from ..errors import BackendError, OntokitError
from ..pairs import (ConceptPair, PairSheet, STRATUM_CHILD, STRATUM_GRANDPARENT,
                     STRATUM_UNRELATED)
from . import signals as sig
from .signals import ParsedSignals, extract_signals, match_enumeration

PROTOCOL_VERSION = "isa-concordance-1"

DEFAULT_ASSERTION = ('"{parent}" ←IS-A— "{child}", '
                     "is this a valid IS-A relationship?")
DEFAULT_RELATION_FOLLOWUP = ('How would you describe the relationship between '
                             '"{child}" and "{parent}"?')
DEFAULT_CHALLENGE = ('List {count} concepts that have IS-A relationships to '
                     '"{parent}".')
DEFAULT_CLARIFY = "Please answer Yes or No first: {assertion}"

#: fragment of the challenge prompt used to locate enumeration turns on replay
CHALLENGE_MARKER = "concepts that have IS-A relationships to"


class Outcome:
    AGREED_CHILD = "agreed_child"
    RECOVERED_CHILD = "recovered_child"
    NOT_RECOVERED = "not_recovered"
    PART_OF = "part_of"
    TYPE_OF = "type_of"
    GRANDPARENT_CONFIRMED = "grandparent_confirmed"
    UNRELATED_CONFIRMED = "unrelated_confirmed"
    UNPARSEABLE = "unparseable"

    ALL = (AGREED_CHILD, RECOVERED_CHILD, NOT_RECOVERED, PART_OF, TYPE_OF,
           GRANDPARENT_CONFIRMED, UNRELATED_CONFIRMED, UNPARSEABLE)


@dataclass(frozen=True)
class ProtocolConfig:
    assertion_template: str = DEFAULT_ASSERTION
    relation_template: str = DEFAULT_RELATION_FOLLOWUP
    challenge_template: str = DEFAULT_CHALLENGE
    clarify_template: str = DEFAULT_CLARIFY
    challenge_marker: str = CHALLENGE_MARKER
    max_children_requested: int = 10
    retry_limit: int = 2
    force_challenge: bool = False  # challenge every denial, not just distant claims
    backend: str = "scripted"

    def __post_init__(self):
        for name, slots in (("assertion_template", ("{parent}", "{child}")),
                            ("relation_template", ("{parent}", "{child}")),
                            ("challenge_template", ("{parent}",))):
            template = getattr(self, name)
            for slot in slots:
                if slot not in template:
                    raise OntokitError(f"{name} is missing its {slot} slot")


@dataclass(frozen=True)
class Turn:
    role: str  # "asker" | "responder"
    text: str
    timestamp: float = 0.0

    def __post_init__(self):
        if self.role not in ("asker", "responder"):
            raise ValueError(f"bad turn role: {self.role}")


@dataclass(frozen=True)
class Transcript:
    pair: ConceptPair
    turns: tuple[Turn, ...]
    backend_id: str
    protocol_version: str = PROTOCOL_VERSION
    failed: bool = False  # backend gave up; signals may be partial

    @property
    def prompt_count(self) -> int:
        return sum(1 for t in self.turns if t.role == "asker")

    def signals(self, config: Optional[ProtocolConfig] = None) -> ParsedSignals:
        marker = (config or ProtocolConfig()).challenge_marker
        return extract_signals(self.turns, marker)

    def validate_structure(self):
        """Turns must alternate roles, starting with the asker."""
        for index, turn in enumerate(self.turns):
            expected = "asker" if index % 2 == 0 else "responder"
            if turn.role != expected:
                raise OntokitError(
                    f"turn {index} has role {turn.role}, expected {expected}")


@dataclass(frozen=True)
class SessionResult:
    transcript: Transcript
    outcome: str


def run_session(pair: ConceptPair, config: ProtocolConfig, backend,
                sink: Optional[Callable[[Turn], None]] = None,
                clock: Callable[[], float] = time.time) -> Transcript:
    """Drive one session against a backend exposing ``send(text) -> text``.

    Backend failures past the retry limit mark the transcript as failed and
    keep whatever turns were already exchanged; unparseable responder text
    never raises.
    """
    turns: list[Turn] = []

    def exchange(prompt: str) -> Optional[str]:
        asker = Turn(role="asker", text=prompt, timestamp=clock())
        turns.append(asker)
        if sink:
            sink(asker)
        for attempt in range(config.retry_limit + 1):
            try:
                reply = backend.send(prompt)
                break
            except BackendError:
                if attempt == config.retry_limit:
                    return None
        responder = Turn(role="responder", text=reply, timestamp=clock())
        turns.append(responder)
        if sink:
            sink(responder)
        return reply

    def finish(failed=False):
        return Transcript(pair=pair, turns=tuple(turns),
                          backend_id=config.backend, failed=failed)

    assertion = config.assertion_template.format(parent=pair.parent_label,
                                                 child=pair.child_label)
    reply = exchange(assertion)
    if reply is None:
        return finish(failed=True)

    verdict = sig.parse_verdict(reply)
    retries = 0
    while verdict == sig.VERDICT_UNPARSEABLE and retries < config.retry_limit:
        retries += 1
        reply = exchange(config.clarify_template.format(assertion=assertion))
        if reply is None:
            return finish(failed=True)
        verdict = sig.parse_verdict(reply)

    if verdict != sig.VERDICT_NO:
        return finish()  # affirmative or unparseable: nothing further to probe

    claim = sig.parse_claim(reply)
    if claim is None:
        followup = config.relation_template.format(parent=pair.parent_label,
                                                   child=pair.child_label)
        reply = exchange(followup)
        if reply is None:
            return finish(failed=True)
        claim = sig.parse_claim(reply)

    if claim == sig.CLAIM_GRANDCHILD or (
            config.force_challenge and claim not in (sig.CLAIM_PART_OF,
                                                     sig.CLAIM_TYPE_OF)):
        challenge = config.challenge_template.format(
            parent=pair.parent_label, count=config.max_children_requested)
        if exchange(challenge) is None:
            return finish(failed=True)
    return finish()


def classify_outcome(transcript: Transcript,
                     config: Optional[ProtocolConfig] = None) -> str:
    """Deterministic mapping from a transcript's signals to an outcome.

    Affirmations are agreed_child whatever the stratum (a direct-IS-A claim
    on a grandparent or unrelated pair is a disagreement the per-stratum
    report surfaces). Denials follow the claimed relation; a denied child
    pair whose enumeration covers the child counts as recovered.
    """
    if transcript.failed:
        return Outcome.UNPARSEABLE
    signals = transcript.signals(config)
    if signals.initial_verdict == sig.VERDICT_UNPARSEABLE:
        return Outcome.UNPARSEABLE
    stratum = transcript.pair.stratum
    if signals.initial_verdict == sig.VERDICT_YES:
        return Outcome.AGREED_CHILD

    claim = signals.claimed_relation
    if claim == sig.CLAIM_PART_OF:
        return Outcome.PART_OF
    if claim == sig.CLAIM_TYPE_OF:
        return Outcome.TYPE_OF
    if claim == sig.CLAIM_GRANDCHILD:
        if stratum == STRATUM_GRANDPARENT:
            return Outcome.GRANDPARENT_CONFIRMED
        if signals.enumeration is not None:
            matched = match_enumeration(transcript.pair.child_label,
                                        transcript.pair.parent_label,
                                        signals.enumeration)
            return Outcome.RECOVERED_CHILD if matched else Outcome.NOT_RECOVERED
        return Outcome.NOT_RECOVERED
    # claim is "other" or absent: a plain denial
    if stratum == STRATUM_UNRELATED:
        return Outcome.UNRELATED_CONFIRMED
    return Outcome.NOT_RECOVERED


@dataclass(frozen=True)
class ConcordanceReport:
    counts: dict[str, int]
    by_stratum: dict[str, dict[str, int]]
    prompt_count: int
    pair_count: int

    def to_json(self) -> dict:
        return {
            "report": "concordance",
            "version": 1,
            "protocol_version": PROTOCOL_VERSION,
            "pair_count": self.pair_count,
            "prompt_count": self.prompt_count,
            "counts": dict(self.counts),
            "by_stratum": {s: dict(k) for s, k in self.by_stratum.items()},
            # type-of is reported alongside agreement but never merged into it
            "agreed_or_type_of": self.counts.get(Outcome.AGREED_CHILD, 0)
                                 + self.counts.get(Outcome.TYPE_OF, 0),
        }


def aggregate(results: Sequence[SessionResult], sheet: PairSheet) -> ConcordanceReport:
    """Roll session outcomes up into per-stratum counts.

    Requires exactly one result per sheet pair; the per-stratum totals are
    checked against the sheet's quotas.
    """
    if len(results) != len(sheet.pairs):
        raise OntokitError(
            f"{len(results)} outcomes for a sheet of {len(sheet.pairs)} pairs")
    counts = {kind: 0 for kind in Outcome.ALL}
    by_stratum = {s: {kind: 0 for kind in Outcome.ALL}
                  for s in (STRATUM_CHILD, STRATUM_GRANDPARENT, STRATUM_UNRELATED)}
    prompt_count = 0
    seen_pairs = set()
    for result in results:
        pair = result.transcript.pair
        key = (pair.parent_iri, pair.child_iri)
        if key in seen_pairs:
            raise OntokitError(f"duplicate session for pair {key}")
        seen_pairs.add(key)
        counts[result.outcome] += 1
        by_stratum[pair.stratum][result.outcome] += 1
        prompt_count += result.transcript.prompt_count

    expected = dict(zip((STRATUM_CHILD, STRATUM_GRANDPARENT, STRATUM_UNRELATED),
                        sheet.quota))
    for stratum, quota in expected.items():
        got = sum(by_stratum[stratum].values())
        if got != quota:
            raise OntokitError(
                f"stratum {stratum}: {got} sessions but the sheet quota is {quota}")

    counts = {k: v for k, v in counts.items() if v}
    by_stratum = {s: {k: v for k, v in kinds.items() if v}
                  for s, kinds in by_stratum.items()}
    return ConcordanceReport(counts=counts, by_stratum=by_stratum,
                             prompt_count=prompt_count, pair_count=len(results))
