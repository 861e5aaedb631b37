from .protocol import (ConcordanceReport, Outcome, ProtocolConfig, SessionResult,
                       Transcript, Turn, aggregate, classify_outcome, run_session)
from .backends import HTTPBackend, ScriptedBackend, load_adapter_manifest
from .signals import ParsedSignals, extract_signals, match_enumeration
from .store import read_corpus, read_transcript, write_transcript

__all__ = [
    "ConcordanceReport", "Outcome", "ProtocolConfig", "SessionResult",
    "Transcript", "Turn", "aggregate", "classify_outcome", "run_session",
    "HTTPBackend", "ScriptedBackend", "load_adapter_manifest",
    "ParsedSignals", "extract_signals", "match_enumeration",
    "read_corpus", "read_transcript", "write_transcript",
]
