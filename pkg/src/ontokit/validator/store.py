"""Transcript persistence: one JSON-lines file per session.

Line 1 is a session header (pair, backend, protocol version); every
following line is one turn. Appends are per-session files, so concurrent
sessions never contend on a shared handle. A corpus is simply a directory
of such files plus the sheet manifest they were run against.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterator, Optional

from ..errors import OntokitError
from ..pairs import ConceptPair
from .protocol import ProtocolConfig, Transcript, Turn


def transcript_lines(transcript: Transcript) -> Iterator[str]:
    header = {
        "type": "session",
        "protocol_version": transcript.protocol_version,
        "backend_id": transcript.backend_id,
        "failed": transcript.failed,
        "pair": {
            "parent_label": transcript.pair.parent_label,
            "child_label": transcript.pair.child_label,
            "parent_iri": transcript.pair.parent_iri,
            "child_iri": transcript.pair.child_iri,
            "stratum": transcript.pair.stratum,
        },
    }
    yield json.dumps(header, ensure_ascii=False)
    for turn in transcript.turns:
        yield json.dumps({"type": "turn", "role": turn.role, "text": turn.text,
                          "timestamp": turn.timestamp}, ensure_ascii=False)


def write_transcript(transcript: Transcript, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for line in transcript_lines(transcript):
            handle.write(line + "\n")


def read_transcript(path, config: Optional[ProtocolConfig] = None) -> Transcript:
    path = Path(path)
    header = None
    turns: list[Turn] = []
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise OntokitError(f"{path}:{number}: bad JSON: {exc}") from exc
            kind = record.get("type")
            if kind == "session":
                if header is not None:
                    raise OntokitError(f"{path}:{number}: duplicate session header")
                header = record
            elif kind == "turn":
                turns.append(Turn(role=record["role"], text=record["text"],
                                  timestamp=record.get("timestamp", 0.0)))
            else:
                raise OntokitError(f"{path}:{number}: unknown record type {kind!r}")
    if header is None:
        raise OntokitError(f"{path}: missing session header line")
    pair_doc = header["pair"]
    pair = ConceptPair(parent_label=pair_doc["parent_label"],
                       child_label=pair_doc["child_label"],
                       parent_iri=pair_doc["parent_iri"],
                       child_iri=pair_doc["child_iri"],
                       stratum=pair_doc["stratum"])
    transcript = Transcript(pair=pair, turns=tuple(turns),
                            backend_id=header.get("backend_id", "unknown"),
                            protocol_version=header.get("protocol_version", ""),
                            failed=header.get("failed", False))
    transcript.validate_structure()
    return transcript


def read_corpus(directory, config: Optional[ProtocolConfig] = None) -> list[Transcript]:
    """All session files under a corpus directory, in name order."""
    directory = Path(directory)
    paths = sorted(directory.glob("sessions/*.jsonl")) or sorted(directory.glob("*.jsonl"))
    if not paths:
        raise OntokitError(f"no session files (*.jsonl) under {directory}")
    return [read_transcript(p, config) for p in paths]
