"""Criteria catalog: the 16 idiomaticity criteria, their groups and constraints.

The catalog is data-driven. The default shipped in ``data/default_catalog.json``
is the reference layout; alternative groupings can be loaded from a config file
without touching code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from importlib import resources
from pathlib import Path


class Group(str, Enum):
    """The four criterion groups, one per cube axis (or the color)."""

    LEXICAL = "lexical"
    GRAMMATICAL = "grammatical"
    OBSOLESCENCE = "obsolescence"
    REPLACEMENT = "replacement"

    @property
    def letter(self) -> str:
        return self.value[0].upper()

    @property
    def label(self) -> str:
        if self in (Group.LEXICAL, Group.GRAMMATICAL):
            return self.value.capitalize() + " change"
        return self.value.capitalize()

    @classmethod
    def parse(cls, text: str) -> "Group":
        """Accept a single letter (L/G/O/R) or the full name, any case."""
        t = text.strip().lower()
        for g in cls:
            if t in (g.value, g.value[0]):
                return g
        raise ValueError(f"unknown group: {text!r}")


_ROMAN = (
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii",
    "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi",
)

CRITERION_COUNT = 16


@dataclass(frozen=True)
class Criterion:
    ordinal: int
    code: str
    group: Group
    name: str
    headless_inapplicable: bool = False

    @property
    def roman(self) -> str:
        return _ROMAN[self.ordinal - 1]


class CatalogError(ValueError):
    """Raised for a structurally invalid catalog definition."""


@dataclass(frozen=True)
class CriteriaCatalog:
    """Registry of criteria, their groups, and the exclusion constraints.

    ``exclusion_pairs`` holds unordered pairs of criterion codes that can
    never both be annotated 1 in a valid vector.
    """

    version: str
    criteria: tuple[Criterion, ...]
    exclusion_pairs: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        if len(self.criteria) != CRITERION_COUNT:
            raise CatalogError(
                f"catalog must define exactly {CRITERION_COUNT} criteria, "
                f"got {len(self.criteria)}"
            )
        ordinals = sorted(c.ordinal for c in self.criteria)
        if ordinals != list(range(1, CRITERION_COUNT + 1)):
            raise CatalogError("criterion ordinals must be exactly 1..16")
        codes = {c.code for c in self.criteria}
        if len(codes) != CRITERION_COUNT:
            raise CatalogError("criterion codes must be distinct")
        for pair in self.exclusion_pairs:
            if len(pair) != 2 or not pair <= codes:
                raise CatalogError(f"bad exclusion pair: {sorted(pair)}")

    @cached_property
    def by_code(self) -> dict[str, Criterion]:
        return {c.code: c for c in self.criteria}

    @cached_property
    def ordered(self) -> tuple[Criterion, ...]:
        return tuple(sorted(self.criteria, key=lambda c: c.ordinal))

    @property
    def codes(self) -> tuple[str, ...]:
        return tuple(c.code for c in self.ordered)

    def get(self, code: str) -> Criterion:
        return self.by_code[code]

    def group_of(self, code: str) -> Group:
        return self.by_code[code].group

    def group_members(self, group: Group) -> tuple[Criterion, ...]:
        return tuple(c for c in self.ordered if c.group == group)

    def group_max(self, group: Group) -> int:
        """Highest sum the group can reach in a valid vector.

        Group size, minus one per exclusion pair that lies wholly inside
        the group (only one member of such a pair can be 1).
        """
        members = {c.code for c in self.group_members(group)}
        internal = sum(1 for pair in self.exclusion_pairs if pair <= members)
        return len(members) - internal

    @cached_property
    def headless_inapplicable(self) -> frozenset[str]:
        return frozenset(c.code for c in self.criteria if c.headless_inapplicable)

    @property
    def max_total(self) -> int:
        return sum(self.group_max(g) for g in Group)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "criteria": [
                {
                    "ordinal": c.ordinal,
                    "code": c.code,
                    "group": c.group.value,
                    "name": c.name,
                    "headless_inapplicable": c.headless_inapplicable,
                }
                for c in self.ordered
            ],
            "exclusion_pairs": sorted(sorted(p) for p in self.exclusion_pairs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CriteriaCatalog":
        try:
            criteria = tuple(
                Criterion(
                    ordinal=int(c["ordinal"]),
                    code=str(c["code"]),
                    group=Group(c["group"]),
                    name=str(c["name"]),
                    headless_inapplicable=bool(c.get("headless_inapplicable", False)),
                )
                for c in data["criteria"]
            )
            pairs = frozenset(
                frozenset(str(x) for x in pair) for pair in data.get("exclusion_pairs", [])
            )
            return cls(
                version=str(data.get("version", "unversioned")),
                criteria=criteria,
                exclusion_pairs=pairs,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CatalogError):
                raise
            raise CatalogError(f"malformed catalog config: {exc}") from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "CriteriaCatalog":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def save(self, path: str | Path) -> None:
        text = json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)
        Path(path).write_text(text + "\n", encoding="utf-8")

    @classmethod
    def default(cls) -> "CriteriaCatalog":
        return _default_catalog()


_DEFAULT: CriteriaCatalog | None = None


def _default_catalog() -> CriteriaCatalog:
    global _DEFAULT
    if _DEFAULT is None:
        text = (
            resources.files("mwe_workbench")
            .joinpath("data/default_catalog.json")
            .read_text(encoding="utf-8")
        )
        _DEFAULT = CriteriaCatalog.from_dict(json.loads(text))
    return _DEFAULT
