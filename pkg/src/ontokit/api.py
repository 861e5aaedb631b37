"""Local JSON API serving a pair sheet to the review UI.

Blindness guarantee: the /api/sheet payload never contains stratum
information; strata live only in the sidecar manifest on disk. Judgments
are persisted through a single lock-serialized writer on every POST, so a
refreshing client can always trust GET /api/progress.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import FileResponse, JSONResponse, PlainTextResponse
from pydantic import BaseModel

from .pairs import (Judgment, PairSheet, TRAINING_ANSWERS, render_completed_sheet)


class JudgmentIn(BaseModel):
    pair_index: int
    is_child: str = ""
    farther_away: str = ""
    reason: str = ""


class JudgmentStore:
    """Flat-file persistence; one writer at a time, atomic replace."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._judgments: dict[int, Judgment] = {}
        if self.path.exists():
            doc = json.loads(self.path.read_text(encoding="utf-8"))
            for key, row in doc.get("judgments", {}).items():
                self._judgments[int(key)] = Judgment(
                    pair_index=int(key), is_child=row.get("is_child", ""),
                    farther_away=row.get("farther_away", ""),
                    reason=row.get("reason", ""))

    def put(self, judgment: Judgment) -> None:
        with self._lock:
            self._judgments[judgment.pair_index] = judgment
            payload = {"version": 1, "judgments": {
                str(i): {"is_child": j.is_child, "farther_away": j.farther_away,
                         "reason": j.reason}
                for i, j in sorted(self._judgments.items())}}
            tmp = self.path.with_suffix(".tmp")
            tmp.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
                           encoding="utf-8")
            tmp.replace(self.path)

    def snapshot(self) -> dict[int, Judgment]:
        with self._lock:
            return dict(self._judgments)


def create_app(sheet: PairSheet, store_path, token: Optional[str] = None,
               ui_dir=None) -> FastAPI:
    app = FastAPI(title="ontokit review API", version="1")
    store = JudgmentStore(Path(store_path))
    app.state.sheet = sheet
    app.state.store = store
    app.state.token = token

    def check_token(request: Request):
        if token is None:
            return
        supplied = request.headers.get("x-session-token") \
            or request.query_params.get("token")
        if supplied != token:
            raise HTTPException(status_code=401, detail="missing or bad session token")

    guarded = Depends(check_token)

    @app.get("/api/sheet", dependencies=[guarded])
    def get_sheet():
        rows = []
        for index, pair in enumerate(sheet.pairs):
            row = {
                "index": index,
                "parent": pair.parent_label,
                "child": pair.child_label,
                "training": index < sheet.training_prefix,
            }
            if row["training"]:
                is_child, farther, reason = TRAINING_ANSWERS[pair.stratum]
                row["prefilled"] = {"is_child": is_child.casefold(),
                                    "farther_away": farther.casefold(),
                                    "reason": reason}
            rows.append(row)
        return {"version": 1, "total": len(rows),
                "training_prefix": sheet.training_prefix, "pairs": rows}

    @app.get("/api/progress", dependencies=[guarded])
    def get_progress():
        stored = store.snapshot()
        judged_indices = sorted(i for i in stored if i >= sheet.training_prefix)
        judged = sheet.training_prefix + len(judged_indices)
        next_index = None
        for index in range(sheet.training_prefix, len(sheet.pairs)):
            if index not in stored:
                next_index = index
                break
        return {"judged": judged, "total": len(sheet.pairs),
                "next_index": next_index, "judged_indices": judged_indices}

    @app.post("/api/judgment", dependencies=[guarded])
    def post_judgment(body: JudgmentIn):
        if not 0 <= body.pair_index < len(sheet.pairs):
            raise HTTPException(status_code=404,
                                detail=f"no pair at index {body.pair_index}")
        if body.pair_index < sheet.training_prefix:
            return JSONResponse(status_code=422, content={
                "detail": "training rows are read-only"})
        try:
            judgment = Judgment(pair_index=body.pair_index,
                                is_child=body.is_child.strip().casefold(),
                                farther_away=body.farther_away.strip().casefold(),
                                reason=body.reason)
        except ValueError as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        store.put(judgment)
        return {"ok": True, "pair_index": body.pair_index}

    @app.get("/api/export", dependencies=[guarded])
    def get_export():
        csv_text = render_completed_sheet(sheet, store.snapshot())
        return PlainTextResponse(csv_text, media_type="text/csv; charset=utf-8")

    if ui_dir is not None:
        ui_dir = Path(ui_dir)

        @app.get("/")
        def index():
            index_file = ui_dir / "index.html"
            if not index_file.exists():
                raise HTTPException(status_code=404, detail="UI not built")
            return FileResponse(index_file)

        @app.get("/assets/{name}")
        def asset(name: str):
            target = (ui_dir / "assets" / name).resolve()
            if ui_dir.resolve() not in target.parents or not target.exists():
                raise HTTPException(status_code=404, detail="no such asset")
            media = "text/javascript" if name.endswith(".js") else "text/css" \
                if name.endswith(".css") else "application/octet-stream"
            return FileResponse(target, media_type=media)
    else:
        @app.get("/")
        def index_info():
            return {"service": "ontokit review API", "ui": False,
                    "endpoints": ["/api/sheet", "/api/progress", "/api/judgment",
                                  "/api/export"]}

    return app
