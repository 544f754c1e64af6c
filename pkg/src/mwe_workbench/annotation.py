"""Annotation vectors, record features, constraint validation and scoring.

Every expression carries 16 binary cells. A cell an annotator could not
apply (headless records) is stored as 0, so vectors stay strictly binary;
applicability is always derivable from the record's features.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .catalog import CRITERION_COUNT, CriteriaCatalog, Group

COORDINATION = "coordination"

# Recommended (open) vocabulary for the phrase_structure feature.
PHRASE_STRUCTURES = (
    "agreement",
    "government",
    "adjoinment",
    "coordination",
    "sentence",
    "other",
)


@dataclass(frozen=True)
class LinguisticFeatures:
    """The four descriptive features annotated alongside the criteria."""

    pos_pattern: str = ""
    is_sentence: bool = False
    headword: str | None = None
    phrase_structure: str = "other"

    @property
    def headless(self) -> bool:
        """True when the record has no headword slot at all."""
        return self.is_sentence or self.phrase_structure == COORDINATION


@dataclass(frozen=True)
class AnnotationVector:
    """16 cells in criterion order plus optional per-cell notes.

    A complete vector holds only 0/1. ``None`` marks a cell not yet filled
    in; anything else is caught by validation, never silently accepted.
    """

    cells: tuple[int | None, ...]
    notes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.cells) != CRITERION_COUNT:
            raise ValueError(f"expected {CRITERION_COUNT} cells, got {len(self.cells)}")
        object.__setattr__(self, "cells", tuple(self.cells))

    def cell(self, ordinal: int) -> int | None:
        return self.cells[ordinal - 1]

    @property
    def complete(self) -> bool:
        return all(c in (0, 1) for c in self.cells)

    @classmethod
    def from_cells(cls, cells: Iterable[int | None], notes: Mapping[str, str] | None = None):
        return cls(cells=tuple(cells), notes=dict(notes or {}))


@dataclass(frozen=True)
class GroupVector:
    """Per-group cell sums; the coordinates of a record in the cube."""

    lexical: int
    grammatical: int
    obsolescence: int
    replacement: int

    @property
    def total(self) -> int:
        return self.lexical + self.grammatical + self.obsolescence + self.replacement

    def get(self, group: Group) -> int:
        return getattr(self, group.value)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.lexical, self.grammatical, self.obsolescence, self.replacement)

    def to_dict(self) -> dict[str, int]:
        return {g.value: self.get(g) for g in Group}


@dataclass(frozen=True)
class MweRecord:
    """One expression: surface form, features, annotation, corpus hooks."""

    id: str
    surface: str
    features: LinguisticFeatures
    annotation: AnnotationVector
    gloss: str | None = None
    source: str | None = None
    token_stems: tuple[tuple[str, str], ...] | None = None
    note: str | None = None

    def with_annotation(self, annotation: AnnotationVector) -> "MweRecord":
        return replace(self, annotation=annotation)


# -- validation -------------------------------------------------------------

RULE_INCOMPLETE = "IncompleteVector"
RULE_NON_BINARY = "NonBinaryValue"
RULE_MUTUAL_EXCLUSION = "MutualExclusion"
RULE_INAPPLICABLE = "InapplicableSet"
RULE_FEATURE_CONFLICT = "FeatureConflict"


@dataclass(frozen=True)
class Violation:
    rule: str
    criteria: tuple[str, ...]
    message: str


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.ok


def applicability_mask(features: LinguisticFeatures, catalog: CriteriaCatalog) -> frozenset[str]:
    """Criterion codes that can be scored for a record with these features.

    Headless records (sentence-like structure or coordination) lose the
    headword-dependent criteria; everything else keeps all 16.
    """
    codes = frozenset(catalog.codes)
    if features.headless:
        return codes - catalog.headless_inapplicable
    return codes


def validate_annotation(
    annotation: AnnotationVector,
    features: LinguisticFeatures,
    catalog: CriteriaCatalog,
) -> tuple[Violation, ...]:
    """All constraint violations, ordered deterministically.

    The checks are independent of each other and of cell order, so the
    result is a set in spirit; it is sorted for stable reporting.
    """
    violations: list[Violation] = []

    if features.is_sentence and features.headword is not None:
        violations.append(
            Violation(
                rule=RULE_FEATURE_CONFLICT,
                criteria=(),
                message="sentence-like records cannot carry a headword",
            )
        )
    if features.phrase_structure == COORDINATION and features.headword is not None:
        violations.append(
            Violation(
                rule=RULE_FEATURE_CONFLICT,
                criteria=(),
                message="coordination records cannot carry a headword",
            )
        )

    missing = tuple(c.code for c in catalog.ordered if annotation.cell(c.ordinal) is None)
    if missing:
        violations.append(
            Violation(
                rule=RULE_INCOMPLETE,
                criteria=missing,
                message=f"cells not filled in: {', '.join(missing)}",
            )
        )

    non_binary = tuple(
        c.code
        for c in catalog.ordered
        if annotation.cell(c.ordinal) not in (0, 1, None)
    )
    if non_binary:
        violations.append(
            Violation(
                rule=RULE_NON_BINARY,
                criteria=non_binary,
                message=f"cells must be 0 or 1: {', '.join(non_binary)}",
            )
        )

    for pair in sorted(sorted(p) for p in catalog.exclusion_pairs):
        a, b = pair
        if annotation.cell(catalog.get(a).ordinal) == 1 and annotation.cell(catalog.get(b).ordinal) == 1:
            violations.append(
                Violation(
                    rule=RULE_MUTUAL_EXCLUSION,
                    criteria=(a, b),
                    message=f"{a} and {b} are mutually exclusive",
                )
            )

    if features.headless:
        offending = tuple(
            code
            for code in sorted(catalog.headless_inapplicable)
            if annotation.cell(catalog.get(code).ordinal) == 1
        )
        if offending:
            violations.append(
                Violation(
                    rule=RULE_INAPPLICABLE,
                    criteria=offending,
                    message=(
                        "inapplicable criteria must be annotated 0 on headless "
                        f"records: {', '.join(offending)}"
                    ),
                )
            )

    violations.sort(key=lambda v: (v.rule, v.criteria))
    return tuple(violations)


def validate_record(record: MweRecord, catalog: CriteriaCatalog) -> ValidationResult:
    violations = validate_annotation(record.annotation, record.features, catalog)
    return ValidationResult(ok=not violations, violations=violations)


def total_score(annotation: AnnotationVector) -> int:
    """Sum of all cells. The annotation must be complete and binary."""
    if not annotation.complete:
        raise ValueError("cannot score an incomplete annotation")
    return sum(annotation.cells)  # type: ignore[arg-type]


def group_vector(annotation: AnnotationVector, catalog: CriteriaCatalog) -> GroupVector:
    """Per-group sums of a valid annotation."""
    if not annotation.complete:
        raise ValueError("cannot score an incomplete annotation")
    sums = {g: 0 for g in Group}
    for criterion in catalog.ordered:
        sums[criterion.group] += annotation.cell(criterion.ordinal)  # type: ignore[operator]
    return GroupVector(
        lexical=sums[Group.LEXICAL],
        grammatical=sums[Group.GRAMMATICAL],
        obsolescence=sums[Group.OBSOLESCENCE],
        replacement=sums[Group.REPLACEMENT],
    )
