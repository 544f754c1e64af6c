"""Dataset statistics and the 3D cube aggregation behind the cluster plots.

All operations are pure functions over sequences of valid records. Two
"middle" figures are reported for the score distribution because they can
disagree: the standard order-statistic median and the midpoint of the
observed score range. Neither is silently preferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .annotation import GroupVector, MweRecord, group_vector, total_score
from .catalog import CriteriaCatalog, Group


class EmptyDatasetError(ValueError):
    """No records to analyze."""


class AxisOverlapError(ValueError):
    """Cube axes plus the held-out group must cover all four groups exactly."""


class TooFewRecordsError(ValueError):
    """Correlations need at least two records."""


class SameGroupError(ValueError):
    """A joint count needs two distinct groups."""


@dataclass(frozen=True)
class ScoreHistogram:
    counts: tuple[tuple[int, int], ...]  # (total score, record count), ascending
    n: int
    median_standard: float
    range_midpoint: float
    frac_below_median: float
    frac_below_range_midpoint: float

    def to_dict(self) -> dict:
        return {
            "counts": [{"score": s, "count": c} for s, c in self.counts],
            "n": self.n,
            "median_standard": self.median_standard,
            "range_midpoint": self.range_midpoint,
            "frac_below_median": self.frac_below_median,
            "frac_below_range_midpoint": self.frac_below_range_midpoint,
        }


@dataclass(frozen=True)
class CriterionSums:
    counts: dict[str, int]  # criterion code -> number of records scoring 1
    ranked: tuple[str, ...]  # codes by ascending count (ordinal breaks ties)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict:
        return {"counts": dict(self.counts), "ranked": list(self.ranked), "total": self.total}


@dataclass(frozen=True)
class GroupTotals:
    totals: dict[str, int]  # group value -> summed scores
    shares: dict[str, float]
    grand_total: int

    def to_dict(self) -> dict:
        return {
            "totals": dict(self.totals),
            "shares": dict(self.shares),
            "grand_total": self.grand_total,
        }


@dataclass(frozen=True)
class AggregatedPoint:
    key: tuple[int, int, int]
    count: int
    held_out_mean: float
    color_scalar: float
    member_ids: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "key": list(self.key),
            "count": self.count,
            "held_out_mean": self.held_out_mean,
            "color_scalar": self.color_scalar,
            "member_ids": list(self.member_ids),
        }


@dataclass(frozen=True)
class CubeAggregation:
    axes: tuple[Group, Group, Group]
    held_out: Group
    held_out_max: int
    points: tuple[AggregatedPoint, ...]

    def to_dict(self) -> dict:
        return {
            "axes": [g.value for g in self.axes],
            "held_out": self.held_out.value,
            "held_out_max": self.held_out_max,
            "points": [p.to_dict() for p in self.points],
        }


@dataclass(frozen=True)
class GroupCorrelationMatrix:
    groups: tuple[Group, Group, Group, Group]
    matrix: tuple[tuple[float | None, ...], ...]  # None where variance is zero

    def to_dict(self) -> dict:
        return {
            "groups": [g.value for g in self.groups],
            "matrix": [list(row) for row in self.matrix],
        }


@dataclass(frozen=True)
class SubsetSummary:
    count: int
    min: int | None
    max: int | None
    mean: float | None
    median: float | None

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "median": self.median,
        }


def _totals(records: Sequence[MweRecord]) -> list[int]:
    return [total_score(r.annotation) for r in records]


def _group_vectors(records: Sequence[MweRecord], catalog: CriteriaCatalog) -> list[GroupVector]:
    return [group_vector(r.annotation, catalog) for r in records]


def _median(sorted_values: Sequence[int]) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2 == 1:
        return float(sorted_values[mid])
    return (sorted_values[mid - 1] + sorted_values[mid]) / 2


def score_histogram(records: Sequence[MweRecord]) -> ScoreHistogram:
    if not records:
        raise EmptyDatasetError("no records")
    totals = sorted(_totals(records))
    counts: dict[int, int] = {}
    for t in totals:
        counts[t] = counts.get(t, 0) + 1
    n = len(totals)
    median = _median(totals)
    midpoint = (totals[0] + totals[-1]) / 2
    return ScoreHistogram(
        counts=tuple(sorted(counts.items())),
        n=n,
        median_standard=median,
        range_midpoint=midpoint,
        frac_below_median=sum(1 for t in totals if t < median) / n,
        frac_below_range_midpoint=sum(1 for t in totals if t < midpoint) / n,
    )


def criterion_sums(records: Sequence[MweRecord], catalog: CriteriaCatalog) -> CriterionSums:
    if not records:
        raise EmptyDatasetError("no records")
    counts = {c.code: 0 for c in catalog.ordered}
    for record in records:
        for criterion in catalog.ordered:
            counts[criterion.code] += record.annotation.cell(criterion.ordinal)  # type: ignore[operator]
    ranked = tuple(
        sorted(counts, key=lambda code: (counts[code], catalog.get(code).ordinal))
    )
    return CriterionSums(counts=counts, ranked=ranked)


def group_totals(records: Sequence[MweRecord], catalog: CriteriaCatalog) -> GroupTotals:
    if not records:
        raise EmptyDatasetError("no records")
    sums = {g: 0 for g in Group}
    for gv in _group_vectors(records, catalog):
        for g in Group:
            sums[g] += gv.get(g)
    grand = sum(sums.values())
    shares = {g.value: (sums[g] / grand if grand else 0.0) for g in Group}
    return GroupTotals(
        totals={g.value: sums[g] for g in Group}, shares=shares, grand_total=grand
    )


def unique_vectors(records: Sequence[MweRecord]) -> tuple[int, float]:
    """Distinct full annotation vectors in the dataset: (count, count/n)."""
    if not records:
        raise EmptyDatasetError("no records")
    distinct = {r.annotation.cells for r in records}
    return len(distinct), len(distinct) / len(records)


def aggregate_cube(
    records: Sequence[MweRecord],
    catalog: CriteriaCatalog,
    axes: tuple[Group, Group, Group],
    held_out: Group,
) -> CubeAggregation:
    """Group records by their three axis sums; the held-out group gives color.

    Each point carries the mean held-out sum of its members and a color
    scalar normalized by the held-out group's maximum possible sum.
    """
    if set(axes) | {held_out} != set(Group) or len(set(axes)) != 3 or held_out in axes:
        raise AxisOverlapError(
            f"axes {[g.value for g in axes]} with held-out {held_out.value} "
            "must cover all four groups without repeats"
        )
    if not records:
        raise EmptyDatasetError("no records")

    held_out_max = catalog.group_max(held_out)
    buckets: dict[tuple[int, int, int], list[tuple[str, int]]] = {}
    for record, gv in zip(records, _group_vectors(records, catalog)):
        key = (gv.get(axes[0]), gv.get(axes[1]), gv.get(axes[2]))
        buckets.setdefault(key, []).append((record.id, gv.get(held_out)))

    points = []
    for key in sorted(buckets):
        members = buckets[key]
        mean = sum(score for _id, score in members) / len(members)
        points.append(
            AggregatedPoint(
                key=key,
                count=len(members),
                held_out_mean=mean,
                color_scalar=mean / held_out_max if held_out_max else 0.0,
                member_ids=tuple(sorted(_id for _id, _score in members)),
            )
        )
    return CubeAggregation(
        axes=axes, held_out=held_out, held_out_max=held_out_max, points=tuple(points)
    )


def group_correlation(
    records: Sequence[MweRecord], catalog: CriteriaCatalog
) -> GroupCorrelationMatrix:
    """Pearson correlation of per-record group sums.

    Entries touching a zero-variance group are undefined and reported as
    None, never coerced to 0.
    """
    if len(records) < 2:
        raise TooFewRecordsError("correlation needs at least two records")
    groups = tuple(Group)
    data = np.array(
        [[gv.get(g) for g in groups] for gv in _group_vectors(records, catalog)],
        dtype=float,
    )
    variances = data.var(axis=0)
    centered = data - data.mean(axis=0)
    matrix: list[tuple[float | None, ...]] = []
    for i in range(4):
        row: list[float | None] = []
        for j in range(4):
            if variances[i] == 0.0 or variances[j] == 0.0:
                row.append(None)
            elif i == j:
                row.append(1.0)
            else:
                r = float(
                    (centered[:, i] * centered[:, j]).mean()
                    / np.sqrt(variances[i] * variances[j])
                )
                row.append(r)
        matrix.append(tuple(row))
    return GroupCorrelationMatrix(groups=groups, matrix=tuple(matrix))


def joint_low_score_count(
    records: Sequence[MweRecord],
    catalog: CriteriaCatalog,
    group_a: Group,
    group_b: Group,
    threshold: int,
) -> int:
    """Records whose sums in both groups are strictly below ``threshold``."""
    if group_a == group_b:
        raise SameGroupError("joint count needs two distinct groups")
    return sum(
        1
        for gv in _group_vectors(records, catalog)
        if gv.get(group_a) < threshold and gv.get(group_b) < threshold
    )


def subset_summary(
    records: Sequence[MweRecord],
    catalog: CriteriaCatalog,
    predicate: Callable[[GroupVector], bool],
) -> SubsetSummary:
    """Total-score summary over the records whose group sums satisfy ``predicate``."""
    selected = [
        total_score(r.annotation)
        for r, gv in zip(records, _group_vectors(records, catalog))
        if predicate(gv)
    ]
    if not selected:
        return SubsetSummary(count=0, min=None, max=None, mean=None, median=None)
    selected.sort()
    return SubsetSummary(
        count=len(selected),
        min=selected[0],
        max=selected[-1],
        mean=sum(selected) / len(selected),
        median=_median(selected),
    )


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the exporters and the service hand out, in one bundle."""

    n: int
    histogram: ScoreHistogram
    criterion_sums: CriterionSums
    group_totals: GroupTotals
    unique_vector_count: int
    unique_vector_fraction: float
    joint_low: dict
    cube: CubeAggregation
    correlations: GroupCorrelationMatrix | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "histogram": self.histogram.to_dict(),
            "criterion_sums": self.criterion_sums.to_dict(),
            "group_totals": self.group_totals.to_dict(),
            "unique_vectors": {
                "count": self.unique_vector_count,
                "fraction": self.unique_vector_fraction,
            },
            "joint_low": dict(self.joint_low),
            "cube": self.cube.to_dict(),
            "correlations": self.correlations.to_dict() if self.correlations else None,
        }


DEFAULT_AXES = (Group.LEXICAL, Group.GRAMMATICAL, Group.OBSOLESCENCE)
DEFAULT_HELD_OUT = Group.REPLACEMENT
JOINT_LOW_THRESHOLD = 3


def build_report(
    records: Sequence[MweRecord],
    catalog: CriteriaCatalog,
    axes: tuple[Group, Group, Group] = DEFAULT_AXES,
    held_out: Group = DEFAULT_HELD_OUT,
) -> AnalysisReport:
    if not records:
        raise EmptyDatasetError("no records")
    count, fraction = unique_vectors(records)
    joint = joint_low_score_count(
        records, catalog, Group.OBSOLESCENCE, Group.REPLACEMENT, JOINT_LOW_THRESHOLD
    )
    return AnalysisReport(
        n=len(records),
        histogram=score_histogram(records),
        criterion_sums=criterion_sums(records, catalog),
        group_totals=group_totals(records, catalog),
        unique_vector_count=count,
        unique_vector_fraction=fraction,
        joint_low={
            "group_a": Group.OBSOLESCENCE.value,
            "group_b": Group.REPLACEMENT.value,
            "threshold": JOINT_LOW_THRESHOLD,
            "count": joint,
        },
        cube=aggregate_cube(records, catalog, axes, held_out),
        correlations=group_correlation(records, catalog) if len(records) >= 2 else None,
    )
