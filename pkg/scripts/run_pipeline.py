#!/usr/bin/env python3
"""End-to-end walkthrough over the bundled fixtures.

Runs the whole evaluation pipeline in one process and prints a compact
summary: parse both ontologies and delta their axiom tallies against the
reported totals, audit the merged ontology, rebuild it from its four
sources, score the schema metrics against the reference values, sample a
stratified sheet, compute agreement statistics from the bundled judgment
files, and replay the recorded concordance corpus.

Usage: python scripts/run_pipeline.py [--fixtures DIR]
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from ontokit.agreement import render_stats_table, stats_report  # noqa: E402
from ontokit.cli import load_sheet  # noqa: E402
from ontokit.graph import build_graph, structural_audit  # noqa: E402
from ontokit.ingest import build_model, model_summary  # noqa: E402
from ontokit.merge import MergePolicy, merge  # noqa: E402
from ontokit.metrics import compare_to_reference, schema_metrics  # noqa: E402
from ontokit.pairs import import_judgments, sample_pairs  # noqa: E402
from ontokit.rdfxml import parse_rdfxml  # noqa: E402
from ontokit.validator import (ProtocolConfig, SessionResult,  # noqa: E402
                               aggregate, classify_outcome, read_corpus)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixtures", type=Path, default=REPO / "fixtures")
    args = parser.parse_args()
    fixtures = args.fixtures
    prefixes = json.loads((fixtures / "prefixes.json").read_text())
    reported = {
        name: json.loads(
            (fixtures / "reference" / f"reported_counts_{name}.json").read_text())
        for name in ("cdoh", "ncodh")}

    print("== ingest ==")
    models = {}
    for name in ("cdoh", "sdoh", "home", "teo", "ncodh"):
        started = time.perf_counter()
        models[name] = build_model(
            parse_rdfxml(fixtures / "ontologies" / f"{name}.owl"), prefixes)
        elapsed = time.perf_counter() - started
        tally = models[name].axiom_tally
        print(f"  {name:5s}: {len(models[name].classes):3d} classes, "
              f"{tally.headline:4d} headline axioms ({tally.total} with "
              f"annotations) in {elapsed * 1000:.0f} ms")
    for name in ("cdoh", "ncodh"):
        summary = model_summary(models[name], paper_reference=reported[name])
        axioms = summary["reference_comparison"]["axioms"]
        print(f"  {name}: reported {axioms['reported']}, headline "
              f"{axioms['headline']} (delta {axioms['headline_delta']:+d}), "
              f"all categories {axioms['total_all_categories']}")

    print("== audit ==")
    report = structural_audit(models["ncodh"])
    print(f"  ncodh audit passed: {report.passed}")

    print("== merge (four sources) ==")
    policy = MergePolicy.load(fixtures / "policies" / "ncodh_merge.json")
    merged = merge([models["cdoh"], models["sdoh"], models["home"],
                    models["teo"]], policy)
    print(f"  merged classes: {len(merged.classes)}, audit passed: "
          f"{structural_audit(merged).passed}")

    print("== schema metrics ==")
    table3 = json.loads((fixtures / "reference" / "table3.json").read_text())
    comparison = compare_to_reference(schema_metrics(models["ncodh"]), table3)
    for name, row in comparison["reference_comparison"].items():
        print(f"  {name:24s} ours={row['ours']}  reference={row['reference']}  "
              f"delta={row['delta']:+.5f}")

    print("== pair sheet ==")
    graph = build_graph(models["ncodh"])
    sheet = sample_pairs(graph, quota=(32, 14, 44), seed=41)
    print(f"  sampled {len(sheet.pairs)} pairs: {sheet.strata_counts()}")

    print("== agreement statistics ==")
    sheet90 = load_sheet(fixtures / "sheets" / "sheet90.manifest.json")
    ev1 = import_judgments(
        (fixtures / "judgments" / "evaluator1.csv").read_text(), sheet90)
    ev2 = import_judgments(
        (fixtures / "judgments" / "evaluator2.csv").read_text(), sheet90)
    stats = stats_report(sheet90, ev1, ev2)
    print("  " + render_stats_table(stats).replace("\n", "\n  "))

    print("== concordance replay ==")
    config = ProtocolConfig()
    corpus_sheet = load_sheet(fixtures / "corpus" / "manifest.json")
    transcripts = read_corpus(fixtures / "corpus", config)
    results = [SessionResult(t, classify_outcome(t, config)) for t in transcripts]
    concordance = aggregate(results, corpus_sheet)
    print(f"  sessions: {concordance.pair_count}, prompts: "
          f"{concordance.prompt_count}")
    for kind, count in sorted(concordance.counts.items()):
        print(f"    {kind:22s} {count}")


if __name__ == "__main__":
    main()
