"""Dataset serialization: tabular (TSV) and structured (JSON) formats.

Both serializers are canonical: fixed column order, records sorted by id,
so re-serializing an unchanged dataset is byte-identical. Loading validates
every record against the criteria model and reports all problems at once;
there is no partial silent load.

The tabular format carries the columns below. Per-cell notes and token/stem
pairs exist only in the structured format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .annotation import AnnotationVector, LinguisticFeatures, MweRecord, validate_record
from .catalog import CRITERION_COUNT, CriteriaCatalog

TABULAR = "tabular"
STRUCTURED = "structured"
FORMAT_ALIASES = {"tabular": TABULAR, "tsv": TABULAR, "structured": STRUCTURED, "json": STRUCTURED}

TABULAR_COLUMNS = (
    "id",
    "surface",
    "gloss",
    "source",
    "pos_pattern",
    "is_sentence",
    "headword",
    "phrase_structure",
    *[f"c{i:02d}" for i in range(1, CRITERION_COUNT + 1)],
    "notes",
)

STRUCTURED_FORMAT_NAME = "mwe-dataset"
STRUCTURED_FORMAT_VERSION = 1

ISSUE_PARSE = "ParseError"
ISSUE_VALIDATION = "ValidationError"
ISSUE_DUPLICATE = "DuplicateId"


@dataclass(frozen=True)
class LoadIssue:
    kind: str
    where: str  # "line 7" or "record belyj-grib"
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at {self.where}: {self.detail}"


class DatasetLoadError(Exception):
    """Carries every issue found while loading; nothing was accepted."""

    def __init__(self, issues: list[LoadIssue]):
        self.issues = tuple(issues)
        super().__init__("; ".join(str(i) for i in issues))


@dataclass(frozen=True)
class Dataset:
    """An id-sorted, duplicate-free collection of records."""

    records: tuple[MweRecord, ...]
    notes: tuple[str, ...] = ()
    catalog_version: str = "default-1"

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.records, key=lambda r: r.id))
        ids = [r.id for r in ordered]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValueError(f"duplicate record ids: {', '.join(dupes)}")
        object.__setattr__(self, "records", ordered)

    def __len__(self) -> int:
        return len(self.records)

    def get(self, record_id: str) -> MweRecord | None:
        for record in self.records:
            if record.id == record_id:
                return record
        return None

    def with_record(self, record: MweRecord) -> "Dataset":
        others = tuple(r for r in self.records if r.id != record.id)
        return replace(self, records=others + (record,))


# -- field escaping for the tabular format -----------------------------------

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def _escape(value: str) -> str:
    out = []
    for ch in value:
        out.append(_ESCAPES.get(ch, ch))
    return "".join(out)


def _unescape(value: str) -> str:
    out = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            mapped = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt)
            if mapped is not None:
                out.append(mapped)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _opt(value: str) -> str | None:
    return value if value else None


# -- record <-> dict (the structured format, also the service wire format) ---

def record_to_dict(record: MweRecord) -> dict:
    return {
        "id": record.id,
        "surface": record.surface,
        "gloss": record.gloss,
        "source": record.source,
        "features": {
            "pos_pattern": record.features.pos_pattern,
            "is_sentence": record.features.is_sentence,
            "headword": record.features.headword,
            "phrase_structure": record.features.phrase_structure,
        },
        "cells": list(record.annotation.cells),
        "cell_notes": dict(record.annotation.notes),
        "token_stems": (
            [[tok, stem] for tok, stem in record.token_stems]
            if record.token_stems is not None
            else None
        ),
        "note": record.note,
    }


def record_from_dict(data: dict) -> MweRecord:
    features = data.get("features") or {}
    cells = data.get("cells")
    if not isinstance(cells, list) or len(cells) != CRITERION_COUNT:
        raise ValueError(f"'cells' must be a list of {CRITERION_COUNT} values")
    stems = data.get("token_stems")
    return MweRecord(
        id=str(data["id"]),
        surface=str(data["surface"]),
        gloss=data.get("gloss"),
        source=data.get("source"),
        features=LinguisticFeatures(
            pos_pattern=str(features.get("pos_pattern", "")),
            is_sentence=bool(features.get("is_sentence", False)),
            headword=features.get("headword"),
            phrase_structure=str(features.get("phrase_structure", "other")),
        ),
        annotation=AnnotationVector(
            cells=tuple(cells), notes=dict(data.get("cell_notes") or {})
        ),
        token_stems=tuple((str(t), str(s)) for t, s in stems) if stems is not None else None,
        note=data.get("note"),
    )


# -- loading ------------------------------------------------------------------

def load_dataset(
    text: str | bytes,
    fmt: str,
    catalog: CriteriaCatalog | None = None,
) -> Dataset:
    """Parse and validate a whole dataset; raises DatasetLoadError listing
    every parse issue, duplicate id and constraint violation found."""
    catalog = catalog or CriteriaCatalog.default()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    fmt = FORMAT_ALIASES.get(fmt.lower())
    if fmt == TABULAR:
        records, notes, version, issues = _parse_tabular(text)
    elif fmt == STRUCTURED:
        records, notes, version, issues = _parse_structured(text)
    else:
        raise ValueError(f"unknown dataset format: {fmt!r}")

    seen: set[str] = set()
    unique_records = []
    for record in records:
        if record.id in seen:
            issues.append(
                LoadIssue(ISSUE_DUPLICATE, f"record {record.id}", "id occurs more than once")
            )
            continue
        seen.add(record.id)
        unique_records.append(record)

    for record in unique_records:
        result = validate_record(record, catalog)
        for violation in result.violations:
            issues.append(
                LoadIssue(
                    ISSUE_VALIDATION,
                    f"record {record.id}",
                    f"{violation.rule}: {violation.message}",
                )
            )

    if issues:
        raise DatasetLoadError(issues)
    return Dataset(records=tuple(unique_records), notes=notes, catalog_version=version)


def _parse_tabular(text: str) -> tuple[list[MweRecord], tuple[str, ...], str, list[LoadIssue]]:
    issues: list[LoadIssue] = []
    records: list[MweRecord] = []
    lines = [line.rstrip("\r") for line in text.split("\n")]
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        issues.append(LoadIssue(ISSUE_PARSE, "line 1", "missing header row"))
        return records, (), "default-1", issues
    header = tuple(lines[0].split("\t"))
    if header != TABULAR_COLUMNS:
        expected = ", ".join(TABULAR_COLUMNS)
        issues.append(
            LoadIssue(ISSUE_PARSE, "line 1", f"bad header; expected columns {expected}")
        )
        return records, (), "default-1", issues
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split("\t")
        if len(fields) != len(TABULAR_COLUMNS):
            issues.append(
                LoadIssue(
                    ISSUE_PARSE,
                    f"line {lineno}",
                    f"expected {len(TABULAR_COLUMNS)} columns, got {len(fields)}",
                )
            )
            continue
        row = {col: _unescape(val) for col, val in zip(TABULAR_COLUMNS, fields)}
        ok = True
        if row["is_sentence"] not in ("0", "1"):
            issues.append(
                LoadIssue(ISSUE_PARSE, f"line {lineno}", "is_sentence must be '0' or '1'")
            )
            ok = False
        cells: list[int | None] = []
        for i in range(1, CRITERION_COUNT + 1):
            value = row[f"c{i:02d}"]
            if value in ("0", "1"):
                cells.append(int(value))
            else:
                issues.append(
                    LoadIssue(
                        ISSUE_PARSE,
                        f"line {lineno}",
                        f"c{i:02d} must be '0' or '1', got {value!r}",
                    )
                )
                ok = False
        if not row["id"]:
            issues.append(LoadIssue(ISSUE_PARSE, f"line {lineno}", "empty id"))
            ok = False
        if not ok:
            continue
        records.append(
            MweRecord(
                id=row["id"],
                surface=row["surface"],
                gloss=_opt(row["gloss"]),
                source=_opt(row["source"]),
                features=LinguisticFeatures(
                    pos_pattern=row["pos_pattern"],
                    is_sentence=row["is_sentence"] == "1",
                    headword=_opt(row["headword"]),
                    phrase_structure=row["phrase_structure"] or "other",
                ),
                annotation=AnnotationVector(cells=tuple(cells)),
                note=_opt(row["notes"]),
            )
        )
    return records, (), "default-1", issues


def _parse_structured(text: str) -> tuple[list[MweRecord], tuple[str, ...], str, list[LoadIssue]]:
    issues: list[LoadIssue] = []
    records: list[MweRecord] = []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        issues.append(LoadIssue(ISSUE_PARSE, f"line {exc.lineno}", exc.msg))
        return records, (), "default-1", issues
    if not isinstance(data, dict) or data.get("format") != STRUCTURED_FORMAT_NAME:
        issues.append(LoadIssue(ISSUE_PARSE, "document", "not a structured dataset file"))
        return records, (), "default-1", issues
    notes = tuple(str(n) for n in data.get("notes", []))
    version = str(data.get("catalog_version", "default-1"))
    for i, entry in enumerate(data.get("records", [])):
        try:
            records.append(record_from_dict(entry))
        except (KeyError, TypeError, ValueError) as exc:
            where = entry.get("id", f"#{i}") if isinstance(entry, dict) else f"#{i}"
            issues.append(LoadIssue(ISSUE_PARSE, f"record {where}", str(exc)))
    return records, notes, version, issues


def load_dataset_file(
    path: str | Path, fmt: str | None = None, catalog: CriteriaCatalog | None = None
) -> Dataset:
    path = Path(path)
    if fmt is None:
        fmt = "structured" if path.suffix.lower() == ".json" else "tabular"
    return load_dataset(path.read_text(encoding="utf-8"), fmt, catalog)


# -- saving -------------------------------------------------------------------

def save_dataset(dataset: Dataset, fmt: str) -> str:
    fmt_normalized = FORMAT_ALIASES.get(fmt.lower())
    if fmt_normalized == TABULAR:
        return _dump_tabular(dataset)
    if fmt_normalized == STRUCTURED:
        return _dump_structured(dataset)
    raise ValueError(f"unknown dataset format: {fmt!r}")


def save_dataset_file(dataset: Dataset, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "structured" if path.suffix.lower() == ".json" else "tabular"
    path.write_text(save_dataset(dataset, fmt), encoding="utf-8")


def _dump_tabular(dataset: Dataset) -> str:
    lines = ["\t".join(TABULAR_COLUMNS)]
    for record in dataset.records:  # already sorted by id
        row = [
            record.id,
            record.surface,
            record.gloss or "",
            record.source or "",
            record.features.pos_pattern,
            "1" if record.features.is_sentence else "0",
            record.features.headword or "",
            record.features.phrase_structure,
            *[str(c) for c in record.annotation.cells],
            record.note or "",
        ]
        lines.append("\t".join(_escape(v) for v in row))
    return "\n".join(lines) + "\n"


def _dump_structured(dataset: Dataset) -> str:
    payload = {
        "format": STRUCTURED_FORMAT_NAME,
        "format_version": STRUCTURED_FORMAT_VERSION,
        "catalog_version": dataset.catalog_version,
        "notes": list(dataset.notes),
        "records": [record_to_dict(r) for r in dataset.records],
    }
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


# -- bundled sample -------------------------------------------------------------

def sample_dataset_text() -> str:
    return (
        resources.files("mwe_workbench")
        .joinpath("data/sample.json")
        .read_text(encoding="utf-8")
    )


def sample_dataset(catalog: CriteriaCatalog | None = None) -> Dataset:
    """The six bundled records used throughout the docs and tests."""
    return load_dataset(sample_dataset_text(), STRUCTURED, catalog)
