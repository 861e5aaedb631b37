"""Concordance protocol: session state machine, signal parsing, outcome
classification, aggregation, and transcript persistence."""

import pytest

from ontokit.errors import BackendError, OntokitError
from ontokit.pairs import ConceptPair, PairSheet
from ontokit.validator import (Outcome, ProtocolConfig, ScriptedBackend,
                               SessionResult, Transcript, Turn, aggregate,
                               classify_outcome, read_transcript, run_session,
                               write_transcript)
from ontokit.validator.signals import (match_enumeration, normalize_tokens,
                                       parse_enumeration, parse_verdict)


def pair(stratum="child", parent="Poor housing", child="Pest infested house"):
    return ConceptPair(parent_label=parent, child_label=child,
                       parent_iri=f"https://x#{parent.replace(' ', '_')}",
                       child_iri=f"https://x#{child.replace(' ', '_')}",
                       stratum=stratum)


CONFIG = ProtocolConfig()


def test_affirmative_stub_is_one_prompt_and_agreed():
    backend = ScriptedBackend(["Yes, this is a valid parent-child relationship."])
    transcript = run_session(pair(), CONFIG, backend)
    assert transcript.prompt_count == 1
    assert transcript.signals().initial_verdict == "yes"
    assert classify_outcome(transcript) == Outcome.AGREED_CHILD
    transcript.validate_structure()


def test_distant_denial_triggers_challenge_and_child_is_recovered():
    backend = ScriptedBackend([
        'No, these concepts do not share a strict IS-A relationship. '
        '"Poor housing" and "pest infested house" can have a distant '
        'hierarchical relationship: poor housing covers many substandard '
        'conditions, and pest infestation could be one of them.',
        'Concepts with IS-A relationships to "Poor housing" include:\n'
        '1. overcrowding in house\n'
        '2. insect or pest infestation\n'
        '3. lack of basic amenities\n'
        '4. exposure to environmental hazards\n'
        '5. lack of ventilation\n'
        '6. homelessness',
    ])
    transcript = run_session(pair(), CONFIG, backend)
    assert transcript.prompt_count == 2  # assertion + enumeration challenge
    signals = transcript.signals()
    assert signals.initial_verdict == "no"
    assert signals.claimed_relation == "grandchild"
    assert signals.enumeration is not None
    assert "insect or pest infestation" in signals.enumeration
    assert classify_outcome(transcript) == Outcome.RECOVERED_CHILD


def test_part_of_denial_skips_the_challenge():
    backend = ScriptedBackend([
        "No. The child concept is a part of the parent concept, a component "
        "rather than a subclass.",
    ])
    transcript = run_session(pair(), CONFIG, backend)
    assert transcript.prompt_count == 1
    assert transcript.signals().claimed_relation == "part-of"
    assert classify_outcome(transcript) == Outcome.PART_OF


def test_bare_denial_gets_a_relation_followup():
    backend = ScriptedBackend([
        "No.",
        "These concepts are not related hierarchically; they belong to "
        "different domains.",
    ])
    transcript = run_session(pair("unrelated"), CONFIG, backend)
    assert transcript.prompt_count == 2
    assert transcript.signals().claimed_relation == "other"
    assert classify_outcome(transcript) == Outcome.UNRELATED_CONFIRMED


def test_unparseable_reply_is_retried_then_marked():
    backend = ScriptedBackend(["Hmm, interesting question.", "Truly fascinating.",
                               "Who can say."])
    transcript = run_session(pair(), CONFIG, backend)
    assert transcript.prompt_count == 3  # assertion + two clarifications
    assert classify_outcome(transcript) == Outcome.UNPARSEABLE


def test_backend_failure_keeps_partial_transcript():
    class FlakyBackend:
        def __init__(self):
            self.calls = 0

        def send(self, prompt):
            self.calls += 1
            if self.calls == 1:
                return "No. It is a grandchild of the parent concept."
            raise BackendError("boom")

    transcript = run_session(pair(), CONFIG, FlakyBackend())
    assert transcript.failed
    assert transcript.prompt_count == 2  # challenge prompt recorded before failure
    assert classify_outcome(transcript) == Outcome.UNPARSEABLE


def test_grandparent_stratum_confirmation():
    backend = ScriptedBackend([
        "No, not as a direct link. The child is better seen as a grandchild "
        "of the parent, with an intermediate concept between them.",
        'Concepts with IS-A relationships to "Trade effects" include:\n1. x\n2. y',
    ])
    transcript = run_session(pair("grandparent"), CONFIG, backend)
    assert classify_outcome(transcript) == Outcome.GRANDPARENT_CONFIRMED


def test_classification_is_deterministic_under_replay(tmp_path):
    backend = ScriptedBackend([
        "No. It is a type of the parent rather than a strict subclass.",
    ])
    transcript = run_session(pair(), CONFIG, backend)
    path = tmp_path / "session.jsonl"
    write_transcript(transcript, path)
    replayed = read_transcript(path)
    assert replayed.pair == transcript.pair
    assert [t.text for t in replayed.turns] == [t.text for t in transcript.turns]
    assert classify_outcome(replayed) == classify_outcome(transcript) == Outcome.TYPE_OF


def test_recovered_child_requires_a_challenge_turn():
    # enumeration present in signals only if a challenge prompt preceded it
    turns = (
        Turn("asker", CONFIG.assertion_template.format(parent="P", child="C")),
        Turn("responder", "No, it is a grandchild of the parent."),
        Turn("asker", "Anything else?"),
        Turn("responder", "1. C\n2. D"),
    )
    transcript = Transcript(pair=pair(parent="P", child="C"), turns=turns,
                            backend_id="fixture")
    assert transcript.signals().enumeration is None
    assert classify_outcome(transcript) == Outcome.NOT_RECOVERED


def test_fuzzy_enumeration_matching_from_the_published_exchange():
    items = ["overcrowding in house", "insect or pest infestation"]
    assert match_enumeration("pest infested house", "Poor housing", items) \
        == "insect or pest infestation"
    assert match_enumeration("heating failures", "Poor housing", items) is None


def test_token_normalization_collides_inflections():
    assert normalize_tokens("Pest infested house") == {"pest", "infest", "hous"}
    assert normalize_tokens("insect or pest infestation") >= {"pest", "infest"}


def test_parse_enumeration_formats():
    assert parse_enumeration("1. alpha\n2) beta\n- gamma") == ("alpha", "beta", "gamma")
    assert parse_enumeration("children include: alpha, beta, gamma") \
        == ("alpha", "beta", "gamma")
    assert parse_enumeration("no list here") is None


def test_parse_verdict_is_anchored_to_the_first_sentence():
    assert parse_verdict('Yes, of course. Although no caveats apply.') == "yes"
    assert parse_verdict('"No, these are different." Yes-adjacent text later.') == "no"
    assert parse_verdict("It depends. Yes in some cases.") == "unparseable"


def sheet_for(pairs_):
    counts = {"child": 0, "grandparent": 0, "unrelated": 0}
    for p in pairs_:
        counts[p.stratum] += 1
    return PairSheet(pairs=tuple(pairs_), training_prefix=0, seed=0,
                     source_ontology="fixture",
                     quota=(counts["child"], counts["grandparent"],
                            counts["unrelated"]))


def transcript_for(p, outcome_flavor):
    scripts = {
        "agree": ["Yes, a valid parent-child relationship."],
        "part_of": ["No. It is a part of the parent concept."],
    }
    backend = ScriptedBackend(scripts[outcome_flavor])
    return run_session(p, CONFIG, backend)


def test_aggregate_counts_and_prompts():
    pairs_ = [pair(child=f"C{i}") for i in range(3)] + [pair(child="D")]
    results = [SessionResult(transcript_for(p, "agree"), Outcome.AGREED_CHILD)
               for p in pairs_[:3]]
    results.append(SessionResult(transcript_for(pairs_[3], "part_of"),
                                 Outcome.PART_OF))
    report = aggregate(results, sheet_for(pairs_))
    assert report.counts == {"agreed_child": 3, "part_of": 1}
    assert report.pair_count == 4
    assert report.prompt_count == 4
    assert sum(report.counts.values()) == len(pairs_)
    assert report.to_json()["agreed_or_type_of"] == 3


def test_aggregate_rejects_count_mismatch():
    pairs_ = [pair(child="C1"), pair(child="C2")]
    results = [SessionResult(transcript_for(pairs_[0], "agree"),
                             Outcome.AGREED_CHILD)]
    with pytest.raises(OntokitError, match="outcomes"):
        aggregate(results, sheet_for(pairs_))


def test_aggregate_empty_is_all_zero():
    report = aggregate([], sheet_for([]))
    assert report.counts == {}
    assert report.prompt_count == 0 and report.pair_count == 0
