"""Signal extraction from session transcripts.

Responder text is never trusted beyond a few anchored patterns: the verdict
is read from the first sentence of the first parseable responder turn, the
claimed relation from word-boundary patterns, and enumerations from numbered
or bulleted list lines. Anything ambiguous stays unparseable rather than
guessed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

VERDICT_YES = "yes"
VERDICT_NO = "no"
VERDICT_UNPARSEABLE = "unparseable"

CLAIM_GRANDCHILD = "grandchild"
CLAIM_PART_OF = "part-of"
CLAIM_TYPE_OF = "type-of"
CLAIM_OTHER = "other"

_AFFIRM = re.compile(r"^[\s\"'“]*yes\b", re.IGNORECASE)
_NEGATE = re.compile(r"^[\s\"'“]*no\b", re.IGNORECASE)

#: checked in order; the first hit within a turn wins
_CLAIM_PATTERNS = (
    (CLAIM_PART_OF, re.compile(r"\bpart[- ]of\b|\bmeronym", re.IGNORECASE)),
    (CLAIM_TYPE_OF, re.compile(r"\btype[- ]of\b", re.IGNORECASE)),
    (CLAIM_GRANDCHILD, re.compile(
        r"\bgrand(?:child|parent)\b|\bdistant(?:ly)? hierarchical\b|\bancestor\b",
        re.IGNORECASE)),
    (CLAIM_OTHER, re.compile(
        r"\bnot related\b|\bunrelated\b|\bnot hierarchically related\b"
        r"|\bdo(?:es)? not share\b|\bno hierarchical (?:relationship|connection)\b",
        re.IGNORECASE)),
)

_LIST_ITEM = re.compile(r"^\s*(?:\d+[.)]\s*|[-*•]\s*)(.+?)\s*$")

_STOPWORDS = {"a", "an", "the", "of", "in", "on", "or", "and", "to", "for",
              "with", "at", "by", "from", "due", "into", "as"}


@dataclass(frozen=True)
class ParsedSignals:
    initial_verdict: str  # yes | no | unparseable
    claimed_relation: Optional[str]  # grandchild | part-of | type-of | other
    enumeration: Optional[tuple[str, ...]]


def parse_verdict(text: str) -> str:
    first_sentence = re.split(r"(?<=[.!?])\s", text.strip(), maxsplit=1)[0]
    if _AFFIRM.search(first_sentence):
        return VERDICT_YES
    if _NEGATE.search(first_sentence):
        return VERDICT_NO
    return VERDICT_UNPARSEABLE


def parse_claim(text: str) -> Optional[str]:
    for claim, pattern in _CLAIM_PATTERNS:
        if pattern.search(text):
            return claim
    return None


def parse_enumeration(text: str) -> Optional[tuple[str, ...]]:
    """Numbered/bulleted lines, or a one-line comma list after a colon."""
    items = [m.group(1) for line in text.splitlines() if (m := _LIST_ITEM.match(line))]
    if items:
        return tuple(items)
    _, colon, tail = text.partition(":")
    if colon and "," in tail:
        parts = [p.strip(" .") for p in tail.split(",")]
        parts = [p for p in parts if p]
        if len(parts) >= 2:
            return tuple(parts)
    return None


def extract_signals(turns: Sequence, challenge_marker: str) -> ParsedSignals:
    """Derive the session's signals from responder turns only.

    The verdict comes from the first responder turn that parses at all. The
    claimed relation prefers a specific pattern (part-of / type-of /
    grandchild) over the catch-all "other", because denial phrasing like
    "do not share a strict IS-A relationship" routinely precedes the actual
    claim. ``challenge_marker`` is the stable fragment of the enumeration
    prompt; the enumeration is read from the responder turn that follows it.
    """
    verdict = VERDICT_UNPARSEABLE
    specific_claim = None
    other_seen = False
    enumeration = None
    expect_enumeration = False
    for turn in turns:
        if turn.role == "asker":
            if challenge_marker and challenge_marker in turn.text:
                expect_enumeration = True
            continue
        if expect_enumeration and enumeration is None:
            enumeration = parse_enumeration(turn.text)
            expect_enumeration = False
        if verdict == VERDICT_UNPARSEABLE:
            verdict = parse_verdict(turn.text)
        claim = parse_claim(turn.text)
        if claim == CLAIM_OTHER:
            other_seen = True
        elif claim is not None and specific_claim is None:
            specific_claim = claim
    claim = specific_claim if specific_claim else (CLAIM_OTHER if other_seen else None)
    return ParsedSignals(initial_verdict=verdict, claimed_relation=claim,
                         enumeration=enumeration)


def normalize_tokens(label: str) -> set[str]:
    """Content tokens of a concept label: casefolded, stopword-free, and
    suffix-stripped just enough to make inflection variants collide
    ("infested"/"infestation" -> "infest", "housing"/"house" -> "hous")."""
    tokens = re.findall(r"[a-z0-9]+", label.casefold())
    return {_stem(t) for t in tokens if t not in _STOPWORDS}


def _stem(token: str) -> str:
    for suffix in ("ations", "ation", "ings", "ing", "ied", "ies", "ed", "es", "s"):
        if token.endswith(suffix) and len(token) - len(suffix) >= 3:
            token = token[: -len(suffix)]
            break
    if token.endswith("e") and len(token) > 4:
        token = token[:-1]
    return token


def match_enumeration(child_label: str, parent_label: str,
                      items: Sequence[str]) -> Optional[str]:
    """First enumeration item that covers the child concept.

    The child's distinguishing tokens — content tokens not already present
    in the parent's label — must all appear in a single item. This is what
    lets "pest infested house" under "Poor housing" match the paraphrase
    "insect or pest infestation": "house" is discounted as parent vocabulary.
    """
    child_tokens = normalize_tokens(child_label)
    distinguishing = child_tokens - normalize_tokens(parent_label)
    needed = distinguishing or child_tokens
    if not needed:
        return None
    for item in items:
        if needed <= normalize_tokens(item):
            return item
    return None
