"""Command-line entry point.

Subcommands wrap the library one-to-one: parse / audit / metrics / merge /
pairs / stats / validate / replay / serve. Reports go to stdout as JSON
(--pretty for humans) with the run manifest embedded; --out additionally
writes artifacts and the manifest to a directory.

Exit codes: 0 success (audit passed), 1 audit failed, 2 input error,
3 backend error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import warnings
from pathlib import Path

from . import __version__
from .agreement import render_stats_table, stats_report
from .errors import (AdapterManifestError, BackendError, OntokitError)
from .graph import build_graph, structural_audit
from .ingest import build_model, model_summary
from .manifest import RunManifest, sha256_file
from .merge import MergePolicy, merge, merge_summary
from .metrics import compare_to_reference, schema_metrics
from .pairs import export_sheet, import_judgments, sample_pairs, sheet_from_manifest, \
    sheet_manifest
from .rdfxml import parse_rdfxml
from .validator import (SessionResult, aggregate, classify_outcome, read_corpus,
                        run_session, write_transcript)
from .validator.backends import backend_from_manifest, load_adapter_manifest
from .validator.protocol import ProtocolConfig
from .vocab import CORE_PREFIXES
from .writer import write_rdfxml_file

EXIT_OK = 0
EXIT_AUDIT_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BACKEND_ERROR = 3


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OntokitError, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        if isinstance(exc, (BackendError, AdapterManifestError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BACKEND_ERROR
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontokit",
        description="Ontology taxonomy toolkit: ingest, audit, merge, score, "
                    "and evaluate class hierarchies.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        p.add_argument("--pretty", action="store_true",
                       help="indent the JSON report")
        p.add_argument("--prefix-map", type=Path, default=None,
                       help="JSON file of prefix -> namespace (owl/rdf/rdfs "
                            "are always included)")
        if out:
            p.add_argument("--out", type=Path, default=None,
                           help="directory for artifacts and the run manifest")

    p = sub.add_parser("parse", help="parse an OWL RDF/XML file into a model summary")
    p.add_argument("path", type=Path)
    p.add_argument("--reference", type=Path, default=None,
                   help="JSON file of reported counts to delta against")
    common(p)
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("audit", help="taxonomy-level structural audit")
    p.add_argument("path", type=Path)
    common(p)
    p.set_defaults(handler=cmd_audit)

    p = sub.add_parser("metrics", help="schema quality metrics")
    p.add_argument("path", type=Path)
    p.add_argument("--reference", type=Path, default=None,
                   help="JSON file of reference metric values to delta against")
    common(p)
    p.set_defaults(handler=cmd_metrics)

    p = sub.add_parser("merge", help="merge two or more ontologies under a policy")
    p.add_argument("paths", type=Path, nargs="+")
    p.add_argument("--policy", type=Path, required=True)
    common(p)
    p.set_defaults(handler=cmd_merge)

    p = sub.add_parser("pairs", help="sample a stratified concept-pair sheet")
    p.add_argument("path", type=Path)
    p.add_argument("--quota", required=True,
                   help="child,grandparent,unrelated counts, e.g. 32,14,44")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--training", type=int, default=0,
                   help="pre-filled training rows at the top of the sheet")
    p.add_argument("--grandparent-range", default="2,4",
                   help="ancestor distance bounds for the grandparent stratum")
    common(p)
    p.set_defaults(handler=cmd_pairs)

    p = sub.add_parser("stats", help="agreement statistics over two judgment files")
    p.add_argument("judgments", type=Path, nargs=2)
    p.add_argument("--sheet", type=Path, required=True,
                   help="sheet manifest JSON produced by the pairs command")
    p.add_argument("--include-training", action="store_true")
    common(p)
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("validate", help="run concordance sessions via a backend")
    p.add_argument("--sheet", type=Path, required=True)
    p.add_argument("--adapter", type=Path, required=True,
                   help="backend adapter manifest JSON")
    common(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("replay", help="classify and aggregate a recorded corpus")
    p.add_argument("corpus", type=Path, help="directory with manifest.json and "
                                             "sessions/*.jsonl")
    common(p)
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("serve", help="local JSON API for the review UI")
    p.add_argument("--sheet", type=Path, required=True, help="sheet manifest JSON")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--store", type=Path, default=None,
                   help="judgment store file (default: alongside the sheet)")
    p.add_argument("--ui", type=Path, default=None,
                   help="directory with the built review UI")
    p.add_argument("--token", default=None,
                   help="session token (default: freshly generated)")
    p.set_defaults(handler=cmd_serve)
    return parser


def load_prefixes(path) -> dict:
    prefixes = dict(CORE_PREFIXES)
    if path is not None:
        with open(path, "r", encoding="utf-8") as handle:
            prefixes.update(json.load(handle))
    return prefixes


def load_model(path, prefix_path):
    return build_model(parse_rdfxml(path), load_prefixes(prefix_path))


def emit(args, report: dict, manifest: RunManifest, artifacts=()) -> None:
    report = dict(report)
    report["run"] = manifest.finish().to_json()
    text = json.dumps(report, indent=2 if args.pretty else None,
                      ensure_ascii=False)
    print(text)
    if getattr(args, "out", None):
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(
            json.dumps(report, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8")
        manifest.write(args.out / "manifest.json")
        for name, content in artifacts:
            target = args.out / name
            target.parent.mkdir(parents=True, exist_ok=True)
            if isinstance(content, bytes):
                target.write_bytes(content)
            else:
                target.write_text(content, encoding="utf-8")


def start_manifest(args, command: str, *inputs, seed=None, config=None) -> RunManifest:
    manifest = RunManifest(command=command, seed=seed, config=config or {})
    for path in inputs:
        manifest.add_input(path)
    return manifest


def cmd_parse(args) -> int:
    manifest = start_manifest(args, "parse", args.path)
    model = load_model(args.path, args.prefix_map)
    reference = None
    if args.reference:
        manifest.add_input(args.reference)
        with open(args.reference, "r", encoding="utf-8") as handle:
            reference = json.load(handle)
    emit(args, model_summary(model, paper_reference=reference), manifest)
    return EXIT_OK


def cmd_audit(args) -> int:
    manifest = start_manifest(args, "audit", args.path)
    report = structural_audit(load_model(args.path, args.prefix_map))
    emit(args, report.to_json(), manifest)
    return EXIT_OK if report.passed else EXIT_AUDIT_FAILED


def cmd_metrics(args) -> int:
    manifest = start_manifest(args, "metrics", args.path)
    metrics = schema_metrics(load_model(args.path, args.prefix_map))
    if args.reference:
        manifest.add_input(args.reference)
        with open(args.reference, "r", encoding="utf-8") as handle:
            report = compare_to_reference(metrics, json.load(handle))
    else:
        report = metrics.to_json()
    emit(args, report, manifest)
    return EXIT_OK


def cmd_merge(args) -> int:
    if len(args.paths) < 2:
        raise OntokitError("merge needs at least two ontology files")
    manifest = start_manifest(args, "merge", *args.paths, args.policy)
    policy = MergePolicy.load(args.policy)
    prefixes = load_prefixes(args.prefix_map)
    prefixes.update(policy.curie_prefixes)
    models = [build_model(parse_rdfxml(p), prefixes) for p in args.paths]
    merged = merge(models, policy)
    report = merge_summary(merged, [str(p) for p in args.paths])
    artifacts = []
    if args.out:
        from .writer import write_rdfxml
        artifacts.append(("merged.owl", write_rdfxml(merged)))
        report["merged_file"] = str(args.out / "merged.owl")
    emit(args, report, manifest, artifacts)
    return EXIT_OK


def parse_quota(text: str) -> tuple[int, int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3 or min(parts) < 0:
        raise OntokitError(f"bad quota {text!r}; expected child,grandparent,unrelated")
    return tuple(parts)


def cmd_pairs(args) -> int:
    quota = parse_quota(args.quota)
    lo, hi = (int(x) for x in args.grandparent_range.split(","))
    manifest = start_manifest(args, "pairs", args.path, seed=args.seed,
                              config={"quota": list(quota), "training": args.training,
                                      "grandparent_range": [lo, hi]})
    model = load_model(args.path, args.prefix_map)
    sheet = sample_pairs(build_graph(model), quota=quota, seed=args.seed,
                         training_prefix=args.training, grandparent_range=(lo, hi),
                         source_ontology=str(args.path))
    doc = sheet_manifest(sheet, ontology_sha256=sha256_file(args.path))
    csv_text = export_sheet(sheet)
    report = {"report": "pair-sheet", "version": 1, "rows": len(sheet.pairs),
              "strata": sheet.strata_counts(), "training_prefix": args.training,
              "seed": args.seed}
    emit(args, report, manifest, artifacts=[
        ("sheet.csv", csv_text),
        ("sheet.manifest.json", json.dumps(doc, indent=2, ensure_ascii=False) + "\n"),
    ])
    return EXIT_OK


def load_sheet(path):
    with open(path, "r", encoding="utf-8") as handle:
        return sheet_from_manifest(json.load(handle))


def cmd_stats(args) -> int:
    manifest = start_manifest(args, "stats", args.sheet, *args.judgments)
    sheet = load_sheet(args.sheet)
    judgment_lists = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # reason-missing warnings are advisory here
        for path in args.judgments:
            judgment_lists.append(
                import_judgments(path.read_text(encoding="utf-8"), sheet))
    report = stats_report(sheet, judgment_lists[0], judgment_lists[1],
                          include_training=args.include_training)
    emit(args, report, manifest)
    print(render_stats_table(report), file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    manifest = start_manifest(args, "validate", args.sheet, args.adapter)
    sheet = load_sheet(args.sheet)
    adapter = load_adapter_manifest(args.adapter)
    backend = backend_from_manifest(adapter)
    config = ProtocolConfig(backend=adapter.get("name", adapter.get("backend", "http")))
    results = []
    for index, pair in enumerate(sheet.pairs):
        sink = None
        partial = None
        if args.out:
            path = args.out / "sessions" / f"session_{index:02d}.jsonl"
            path.parent.mkdir(parents=True, exist_ok=True)
            # every turn hits disk before the next prompt goes out; a crash
            # leaves the .partial file behind
            partial = path.with_suffix(".jsonl.partial")
            handle = open(partial, "w", encoding="utf-8", newline="\n")

            def sink(turn, _handle=handle):
                _handle.write(json.dumps({"type": "turn", "role": turn.role,
                                          "text": turn.text,
                                          "timestamp": turn.timestamp},
                                         ensure_ascii=False) + "\n")
                _handle.flush()

        transcript = run_session(pair, config, backend, sink=sink)
        if args.out:
            handle.close()
            write_transcript(transcript, path)
            partial.unlink(missing_ok=True)
        results.append(SessionResult(transcript, classify_outcome(transcript, config)))
    report = aggregate(results, sheet).to_json()
    report["failed_sessions"] = sum(1 for r in results if r.transcript.failed)
    emit(args, report, manifest)
    return EXIT_OK


def cmd_replay(args) -> int:
    corpus = args.corpus
    manifest_path = corpus / "manifest.json"
    manifest = start_manifest(args, "replay", manifest_path)
    sheet = load_sheet(manifest_path)
    config = ProtocolConfig()
    transcripts = read_corpus(corpus, config)
    results = [SessionResult(t, classify_outcome(t, config)) for t in transcripts]
    emit(args, aggregate(results, sheet).to_json(), manifest)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    sheet = load_sheet(args.sheet)
    store = args.store or args.sheet.with_suffix(".judgments.json")
    token = args.token or secrets.token_urlsafe(16)
    app = create_app(sheet, store, token=token, ui_dir=args.ui)
    print(f"serving sheet of {len(sheet.pairs)} pairs on "
          f"http://{args.host}:{args.port}/?token={token}")
    print(f"judgments persisted to {store}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
