"""HTTP facade for the annotator UI.

JSON field names mirror the structured dataset format. Writes serialize
through a per-dataset lock and snapshot-swap the immutable dataset, so
readers always observe a consistent state and puts to the same record
never interleave. Invalid puts are kept as drafts (with their violations)
so the annotator can come back to them; drafts never enter analysis.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .analysis import AxisOverlapError, EmptyDatasetError, build_report
from .annotation import (
    AnnotationVector,
    Violation,
    applicability_mask,
    group_vector,
    total_score,
    validate_record,
)
from .catalog import CRITERION_COUNT, CriteriaCatalog, Group
from .corpus import (
    CorpusIndex,
    MissingStemsError,
    TooShortError,
    check_inflection,
    check_insertion,
    tokenize,
)
from .dataset import Dataset, record_to_dict, save_dataset_file


@dataclass
class Draft:
    cells: tuple[int | None, ...]
    cell_notes: dict[str, str]
    violations: tuple[Violation, ...]


@dataclass
class ServiceState:
    dataset: Dataset
    catalog: CriteriaCatalog
    corpus_index: CorpusIndex | None = None
    autosave_path: Path | None = None
    read_only: bool = False
    drafts: dict[str, Draft] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)
    dirty: bool = False


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": code, "message": message, **extra})


def _violations_json(violations) -> list[dict]:
    return [
        {"rule": v.rule, "criteria": list(v.criteria), "message": v.message}
        for v in violations
    ]


def _parse_cells(body: dict, catalog: CriteriaCatalog):
    """Extract a (cells, cell_notes) pair from a request body.

    Cells arrive as a 16-long list (null marks an unset cell) or as a
    mapping from criterion code to value. Returns an error string instead
    of raising so the caller can map it to a 400.
    """
    raw = body.get("cells")
    cells: list[int | None]
    if isinstance(raw, list):
        if len(raw) > CRITERION_COUNT:
            return None, None, f"'cells' holds more than {CRITERION_COUNT} values"
        cells = list(raw) + [None] * (CRITERION_COUNT - len(raw))
    elif isinstance(raw, dict):
        unknown = sorted(set(raw) - set(catalog.codes))
        if unknown:
            return None, None, f"unknown criterion codes: {', '.join(unknown)}"
        cells = [raw.get(code) for code in catalog.codes]
    else:
        return None, None, "'cells' must be a list or a code-to-value mapping"

    for value in cells:
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, int):
            return None, None, "cell values must be integers or null"

    notes = body.get("cell_notes") or {}
    if not isinstance(notes, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in notes.items()
    ):
        return None, None, "'cell_notes' must map criterion codes to strings"
    return tuple(cells), dict(notes), None


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="mwe-workbench annotation service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def record_summary(record) -> dict:
        draft = state.drafts.get(record.id)
        summary = {
            "id": record.id,
            "surface": record.surface,
            "gloss": record.gloss,
            "completion": "draft" if draft else "complete",
            "total": None if draft else total_score(record.annotation),
        }
        return summary

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "records": len(state.dataset),
            "corpus_loaded": state.corpus_index is not None,
            "read_only": state.read_only,
        }

    @app.get("/catalog")
    def get_catalog() -> dict:
        return state.catalog.to_dict()

    @app.get("/records")
    def list_records() -> dict:
        return {"records": [record_summary(r) for r in state.dataset.records]}

    @app.get("/records/{record_id}")
    def get_record(record_id: str):
        record = state.dataset.get(record_id)
        if record is None:
            return _error(404, "UnknownId", f"no record {record_id!r}")
        draft = state.drafts.get(record_id)
        payload = {
            "record": record_to_dict(record),
            "completion": "draft" if draft else "complete",
            "applicable": sorted(applicability_mask(record.features, state.catalog)),
            "total": None if draft else total_score(record.annotation),
            "group_vector": None if draft else group_vector(record.annotation, state.catalog).to_dict(),
            "draft": None,
        }
        if draft:
            payload["draft"] = {
                "cells": list(draft.cells),
                "cell_notes": dict(draft.cell_notes),
                "violations": _violations_json(draft.violations),
            }
        return payload

    @app.put("/records/{record_id}/annotation")
    async def put_annotation(record_id: str, request: Request):
        if state.read_only:
            return _error(409, "ReadOnlyMode", "the service is running read-only")
        record = state.dataset.get(record_id)
        if record is None:
            return _error(404, "UnknownId", f"no record {record_id!r}")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "MalformedBody", "request body is not valid JSON")
        if not isinstance(body, dict):
            return _error(400, "MalformedBody", "request body must be a JSON object")
        cells, notes, problem = _parse_cells(body, state.catalog)
        if problem:
            return _error(400, "MalformedBody", problem)

        annotation = AnnotationVector(cells=cells, notes=notes)
        candidate = record.with_annotation(annotation)
        result = validate_record(candidate, state.catalog)
        with state.lock:
            if result.ok:
                state.dataset = state.dataset.with_record(candidate)
                state.drafts.pop(record_id, None)
                if state.autosave_path is not None:
                    save_dataset_file(state.dataset, state.autosave_path, "structured")
                else:
                    state.dirty = True
                return {
                    "ok": True,
                    "id": record_id,
                    "total": total_score(annotation),
                    "group_vector": group_vector(annotation, state.catalog).to_dict(),
                    "violations": [],
                }
            state.drafts[record_id] = Draft(
                cells=annotation.cells,
                cell_notes=dict(notes),
                violations=result.violations,
            )
        return JSONResponse(
            status_code=422,
            content={
                "ok": False,
                "id": record_id,
                "stored": "draft",
                "violations": _violations_json(result.violations),
            },
        )

    @app.post("/records/{record_id}/check/{kind}")
    def run_corpus_check(record_id: str, kind: str):
        record = state.dataset.get(record_id)
        if record is None:
            return _error(404, "UnknownId", f"no record {record_id!r}")
        if kind not in ("insertion", "inflection"):
            return _error(400, "UnknownCheck", f"no corpus check named {kind!r}")
        index = state.corpus_index
        if index is None:
            return _error(409, "NoCorpus", "no corpus index is loaded")
        try:
            if kind == "insertion":
                if record.token_stems:
                    tokens = [tok for tok, _stem in record.token_stems]
                else:
                    tokens = tokenize(record.surface, index.config)
                report = check_insertion(index, tokens)
            else:
                report = check_inflection(index, record)
        except TooShortError as exc:
            return _error(422, "TooShort", str(exc))
        except MissingStemsError as exc:
            return _error(422, "MissingStems", str(exc))
        return {
            "id": record_id,
            "report": report.to_dict(),
            "cells": {
                code: record.annotation.cell(state.catalog.get(code).ordinal)
                for code in state.catalog.codes
            },
        }

    @app.get("/analysis")
    def get_analysis(axes: str = "L,G,O", held_out: str = "R"):
        try:
            axis_groups = tuple(Group.parse(a) for a in axes.split(","))
            held = Group.parse(held_out)
        except ValueError as exc:
            return _error(400, "BadGroups", str(exc))
        if len(axis_groups) != 3:
            return _error(400, "BadGroups", "axes must name exactly three groups")
        complete = [r for r in state.dataset.records if r.id not in state.drafts]
        try:
            report = build_report(complete, state.catalog, axis_groups, held)
        except AxisOverlapError as exc:
            return _error(400, "AxisOverlap", str(exc))
        except EmptyDatasetError:
            return _error(409, "EmptyDataset", "no complete records to analyze")
        return report.to_dict()

    return app


def serve(
    state: ServiceState, host: str = "127.0.0.1", port: int = 8731, log_level: str = "warning"
) -> None:
    import uvicorn

    uvicorn.run(create_app(state), host=host, port=port, log_level=log_level)
