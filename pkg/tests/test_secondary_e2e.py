"""Secondary acceptance: judgments collected through the review API (the
UI's only data path) round-trip into the same statistics as
spreadsheet-ingested files.

These tests exercise the server and CSV surfaces only; nothing here needs
the frontend to be built (the UI's own unit tests live under frontend/).
"""

import warnings
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from ontokit.agreement import stats_report
from ontokit.api import create_app
from ontokit.cli import load_sheet
from ontokit.pairs import import_judgments

from conftest import FIXTURES


@pytest.fixture(scope="module")
def sheet90(fixtures_dir):
    return load_sheet(fixtures_dir / "sheets" / "sheet90.manifest.json")


def collect_via_api(sheet, csv_path: Path, store: Path) -> str:
    """Replay a completed judgment file through POST /api/judgment and
    return the server's CSV export."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        judgments = import_judgments(csv_path.read_text(encoding="utf-8"), sheet)
    app = create_app(sheet, store, token="tk")
    with TestClient(app) as client:
        client.headers["X-Session-Token"] = "tk"
        for judgment in judgments:
            response = client.post("/api/judgment", json={
                "pair_index": judgment.pair_index,
                "is_child": judgment.is_child,
                "farther_away": judgment.farther_away,
                "reason": judgment.reason,
            })
            assert response.status_code == 200
        progress = client.get("/api/progress").json()
        assert progress["judged"] == progress["total"] == 90
        return client.get("/api/export").text


def test_api_collected_export_is_byte_identical_and_importable(sheet90, tmp_path):
    for name in ("evaluator1", "evaluator2"):
        fixture = FIXTURES / "judgments" / f"{name}.csv"
        export = collect_via_api(sheet90, fixture, tmp_path / f"{name}.json")
        assert export == fixture.read_text(encoding="utf-8")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            parsed = import_judgments(export, sheet90)
        assert len(parsed) == 90


def test_api_collected_judgments_reproduce_spreadsheet_kappa(sheet90, tmp_path):
    exports = {
        name: collect_via_api(sheet90, FIXTURES / "judgments" / f"{name}.csv",
                              tmp_path / f"{name}.json")
        for name in ("evaluator1", "evaluator2")
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ui = [import_judgments(exports[n], sheet90)
              for n in ("evaluator1", "evaluator2")]
        spreadsheet = [
            import_judgments(
                (FIXTURES / "judgments" / f"{n}.csv").read_text(encoding="utf-8"),
                sheet90)
            for n in ("evaluator1", "evaluator2")
        ]
    via_api = stats_report(sheet90, *ui)
    via_csv = stats_report(sheet90, *spreadsheet)
    assert via_api["cohens_kappa"] == via_csv["cohens_kappa"]
    assert via_api["cohens_kappa"]["kappa_5dp"] == "0.50502"
    assert via_api["percent_agreement"] == via_csv["percent_agreement"]
    assert via_api["evaluators"] == via_csv["evaluators"]
