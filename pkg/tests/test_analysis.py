import random

import pytest

from mwe_workbench.analysis import (
    AxisOverlapError,
    EmptyDatasetError,
    SameGroupError,
    TooFewRecordsError,
    aggregate_cube,
    build_report,
    criterion_sums,
    group_correlation,
    group_totals,
    joint_low_score_count,
    score_histogram,
    subset_summary,
    unique_vectors,
)
from mwe_workbench.annotation import total_score
from mwe_workbench.catalog import Group
from mwe_workbench.dataset import Dataset

from conftest import PENNY_BUN_CELLS, make_record, random_valid_dataset

AXES_LGO = (Group.LEXICAL, Group.GRAMMATICAL, Group.OBSOLESCENCE)

# Sample dataset facts, recomputed by hand from the bundled cell values.
SAMPLE_TOTALS = {
    "belyj-grib": 9,
    "synthetic-a": 6,
    "tak-i-byt": 12,
    "bespokojnyj-chelovek": 4,
    "ni-ryba-ni-myaso": 8,
    "nichtozhe-sumnyashesya": 11,
}


def records_with_group_tuples(*tuples):
    """Records whose group vectors equal the given (L, G, O, R) tuples."""
    out = []
    for i, (l, g, o, r) in enumerate(tuples):
        cells = [0] * 16
        for pos in range(l):
            cells[pos] = 1  # lexical c01..c05
        for pos in range(g):
            cells[5 + pos] = 1  # grammatical c06..c08
        if g == 2:
            cells[5], cells[6], cells[7] = 1, 0, 1  # avoid the exclusion pair
        for pos in range(o):
            cells[8 + pos] = 1
        for pos in range(r):
            cells[11 + pos] = 1
        out.append(make_record(cells, record_id=f"g{i}"))
    return out


class TestHistogram:
    def test_sample_counts(self, sample):
        hist = score_histogram(sample.records)
        assert dict(hist.counts) == {4: 1, 6: 1, 8: 1, 9: 1, 11: 1, 12: 1}
        assert hist.n == 6
        assert hist.median_standard == 8.5
        assert hist.range_midpoint == 8.0
        assert hist.frac_below_median == 0.5
        assert hist.frac_below_range_midpoint == pytest.approx(2 / 6)

    def test_single_record(self):
        hist = score_histogram([make_record(PENNY_BUN_CELLS)])
        assert dict(hist.counts) == {9: 1}
        assert hist.n == 1

    def test_empty_dataset(self):
        with pytest.raises(EmptyDatasetError):
            score_histogram([])

    def test_counts_sum_to_n(self, catalog):
        dataset = random_valid_dataset(random.Random(3), catalog, 77)
        hist = score_histogram(dataset.records)
        assert sum(c for _s, c in hist.counts) == 77


class TestCriterionSums:
    def test_sample_matches_brute_force(self, sample, catalog):
        sums = criterion_sums(sample.records, catalog)
        for i in range(16):
            expected = sum(r.annotation.cells[i] for r in sample.records)
            assert sums.counts[f"c{i + 1:02d}"] == expected
        assert sums.total == sum(SAMPLE_TOTALS.values())

    def test_all_zero_dataset(self, catalog):
        records = [make_record([0] * 16, record_id=f"z{i}") for i in range(3)]
        sums = criterion_sums(records, catalog)
        assert all(v == 0 for v in sums.counts.values())

    def test_penny_bun_alone(self, catalog):
        sums = criterion_sums([make_record(PENNY_BUN_CELLS)], catalog)
        positive = {code for code, count in sums.counts.items() if count == 1}
        assert positive == {"c01", "c02", "c03", "c04", "c05", "c12", "c14", "c15", "c16"}

    def test_ranking_ascending(self, sample, catalog):
        sums = criterion_sums(sample.records, catalog)
        counts = [sums.counts[code] for code in sums.ranked]
        assert counts == sorted(counts)

    def test_double_counting_identity(self, catalog):
        dataset = random_valid_dataset(random.Random(11), catalog, 60)
        sums = criterion_sums(dataset.records, catalog)
        assert sums.total == sum(total_score(r.annotation) for r in dataset.records)


class TestGroupTotals:
    def test_penny_bun_alone(self, catalog):
        totals = group_totals([make_record(PENNY_BUN_CELLS)], catalog)
        assert totals.totals == {
            "lexical": 5,
            "grammatical": 0,
            "obsolescence": 0,
            "replacement": 4,
        }
        assert totals.shares["lexical"] == pytest.approx(5 / 9)
        assert totals.shares["replacement"] == pytest.approx(4 / 9)

    def test_doubling_scales_totals_not_shares(self, catalog):
        one = [make_record(PENNY_BUN_CELLS, record_id="a")]
        two = one + [make_record(PENNY_BUN_CELLS, record_id="b")]
        t1 = group_totals(one, catalog)
        t2 = group_totals(two, catalog)
        assert t2.totals == {k: 2 * v for k, v in t1.totals.items()}
        assert t2.shares == t1.shares

    def test_sample_hand_computed(self, sample, catalog):
        totals = group_totals(sample.records, catalog)
        assert totals.totals == {
            "lexical": 26,
            "grammatical": 5,
            "obsolescence": 6,
            "replacement": 13,
        }
        assert totals.grand_total == 50
        assert sum(totals.shares.values()) == pytest.approx(1.0)


class TestUniqueVectors:
    def test_all_identical(self, catalog):
        records = [make_record(PENNY_BUN_CELLS, record_id=f"r{i}") for i in range(4)]
        assert unique_vectors(records) == (1, 0.25)

    def test_sample_all_distinct(self, sample):
        assert unique_vectors(sample.records) == (6, 1.0)

    def test_empty(self):
        with pytest.raises(EmptyDatasetError):
            unique_vectors([])


class TestCube:
    def test_shared_point_averages_held_out(self, catalog):
        records = records_with_group_tuples((5, 0, 0, 4), (5, 0, 0, 1))
        cube = aggregate_cube(records, catalog, AXES_LGO, Group.REPLACEMENT)
        assert len(cube.points) == 1
        point = cube.points[0]
        assert point.key == (5, 0, 0)
        assert point.count == 2
        assert point.held_out_mean == 2.5
        assert point.color_scalar == 0.5

    def test_single_record(self, catalog):
        records = records_with_group_tuples((2, 1, 0, 3))
        cube = aggregate_cube(records, catalog, AXES_LGO, Group.REPLACEMENT)
        assert cube.points[0].held_out_mean == 3.0
        assert cube.points[0].count == 1

    def test_distinct_keys_make_distinct_points(self, catalog):
        records = records_with_group_tuples((1, 0, 0, 1), (2, 0, 0, 1))
        cube = aggregate_cube(records, catalog, AXES_LGO, Group.REPLACEMENT)
        assert [p.key for p in cube.points] == [(1, 0, 0), (2, 0, 0)]
        assert all(p.count == 1 for p in cube.points)

    def test_axis_overlap_rejected(self, sample, catalog):
        with pytest.raises(AxisOverlapError):
            aggregate_cube(
                sample.records,
                catalog,
                (Group.LEXICAL, Group.GRAMMATICAL, Group.REPLACEMENT),
                Group.REPLACEMENT,
            )

    def test_empty_dataset(self, catalog):
        with pytest.raises(EmptyDatasetError):
            aggregate_cube([], catalog, AXES_LGO, Group.REPLACEMENT)

    def test_permutation_invariant_and_sorted(self, catalog):
        rng = random.Random(23)
        dataset = random_valid_dataset(rng, catalog, 40)
        shuffled = list(dataset.records)
        rng.shuffle(shuffled)
        a = aggregate_cube(dataset.records, catalog, AXES_LGO, Group.REPLACEMENT)
        b = aggregate_cube(shuffled, catalog, AXES_LGO, Group.REPLACEMENT)
        assert a == b
        assert [p.key for p in a.points] == sorted(p.key for p in a.points)

    def test_conservation(self, catalog):
        from mwe_workbench.annotation import group_vector

        dataset = random_valid_dataset(random.Random(31), catalog, 120)
        cube = aggregate_cube(dataset.records, catalog, AXES_LGO, Group.REPLACEMENT)
        assert sum(p.count for p in cube.points) == len(dataset.records)
        weighted = sum(p.count * p.held_out_mean for p in cube.points)
        direct = sum(
            group_vector(r.annotation, catalog).replacement for r in dataset.records
        )
        assert weighted == pytest.approx(direct, abs=1e-9)


class TestCorrelation:
    def test_perfectly_correlated_groups(self, catalog):
        records = records_with_group_tuples((1, 0, 1, 1), (3, 0, 3, 3), (2, 0, 2, 2))
        matrix = group_correlation(records, catalog)
        i, j = 0, 3  # lexical vs replacement
        assert matrix.matrix[i][j] == pytest.approx(1.0)

    def test_mirrored_groups_anticorrelate(self, catalog):
        records = records_with_group_tuples((1, 0, 0, 4), (4, 0, 0, 1), (2, 0, 0, 3))
        matrix = group_correlation(records, catalog)
        assert matrix.matrix[0][3] == pytest.approx(-1.0)

    def test_constant_group_is_undefined(self, catalog):
        records = records_with_group_tuples((1, 0, 0, 1), (2, 0, 0, 2))
        matrix = group_correlation(records, catalog)
        g = 1  # grammatical stays 0 in both records
        assert all(matrix.matrix[g][j] is None for j in range(4))
        assert all(matrix.matrix[i][g] is None for i in range(4))

    def test_symmetric_and_order_invariant(self, catalog):
        rng = random.Random(17)
        dataset = random_valid_dataset(rng, catalog, 50)
        shuffled = list(dataset.records)
        rng.shuffle(shuffled)
        a = group_correlation(dataset.records, catalog)
        b = group_correlation(shuffled, catalog)
        for i in range(4):
            for j in range(4):
                x, y, z = a.matrix[i][j], a.matrix[j][i], b.matrix[i][j]
                assert (x is None) == (y is None) == (z is None)
                if x is not None:
                    assert x == pytest.approx(y)  # symmetric
                    assert x == pytest.approx(z)  # reorder invariant

    def test_too_few_records(self, catalog):
        with pytest.raises(TooFewRecordsError):
            group_correlation([make_record(PENNY_BUN_CELLS)], catalog)


class TestJointLowAndSubsets:
    def test_threshold_zero(self, sample, catalog):
        assert (
            joint_low_score_count(
                sample.records, catalog, Group.OBSOLESCENCE, Group.REPLACEMENT, 0
            )
            == 0
        )

    def test_threshold_sixteen_counts_everything(self, sample, catalog):
        assert (
            joint_low_score_count(
                sample.records, catalog, Group.OBSOLESCENCE, Group.REPLACEMENT, 16
            )
            == 6
        )

    def test_sample_joint_low(self, sample, catalog):
        # Hand count: only synthetic-a (O=0, R=1) and bespokojnyj-chelovek (O=0, R=1).
        assert (
            joint_low_score_count(
                sample.records, catalog, Group.OBSOLESCENCE, Group.REPLACEMENT, 3
            )
            == 2
        )

    def test_same_group_rejected(self, sample, catalog):
        with pytest.raises(SameGroupError):
            joint_low_score_count(
                sample.records, catalog, Group.LEXICAL, Group.LEXICAL, 3
            )

    def test_subset_summary_obsolescence_heavy(self, sample, catalog):
        summary = subset_summary(
            sample.records, catalog, lambda gv: gv.obsolescence == 3
        )
        assert summary.count == 2
        assert summary.min == 11
        assert summary.max == 12
        assert summary.mean == 11.5
        assert summary.median == 11.5

    def test_subset_summary_empty(self, sample, catalog):
        summary = subset_summary(sample.records, catalog, lambda gv: False)
        assert summary.count == 0
        assert summary.mean is None

    def test_subset_summary_everything(self, sample, catalog):
        summary = subset_summary(sample.records, catalog, lambda gv: True)
        assert summary.count == 6
        assert summary.mean == pytest.approx(50 / 6)


class TestBruteForceEquivalence:
    def test_every_statistic_matches_a_raw_vector_pass(self, catalog):
        """Recompute the whole report from raw cells with independent code."""
        rng = random.Random(97)
        dataset = random_valid_dataset(rng, catalog, 300)
        records = dataset.records

        # Raw per-record data derived directly from the cell tuples.
        group_slices = {"lexical": (0, 5), "grammatical": (5, 8),
                        "obsolescence": (8, 11), "replacement": (11, 16)}
        raw_totals = [sum(r.annotation.cells) for r in records]
        raw_groups = [
            {g: sum(r.annotation.cells[a:b]) for g, (a, b) in group_slices.items()}
            for r in records
        ]

        hist = score_histogram(records)
        for score, count in hist.counts:
            assert count == sum(1 for t in raw_totals if t == score)

        sums = criterion_sums(records, catalog)
        for i in range(16):
            assert sums.counts[f"c{i + 1:02d}"] == sum(
                r.annotation.cells[i] for r in records
            )

        totals = group_totals(records, catalog)
        for g in group_slices:
            assert totals.totals[g] == sum(raw[g] for raw in raw_groups)

        count, fraction = unique_vectors(records)
        assert count == len({r.annotation.cells for r in records})
        assert fraction == count / len(records)

        assert joint_low_score_count(
            records, catalog, Group.OBSOLESCENCE, Group.REPLACEMENT, 3
        ) == sum(
            1
            for raw in raw_groups
            if raw["obsolescence"] < 3 and raw["replacement"] < 3
        )

        cube = aggregate_cube(records, catalog, AXES_LGO, Group.REPLACEMENT)
        buckets = {}
        for record, raw in zip(records, raw_groups):
            key = (raw["lexical"], raw["grammatical"], raw["obsolescence"])
            buckets.setdefault(key, []).append(raw["replacement"])
        assert {p.key: (p.count, p.held_out_mean) for p in cube.points} == {
            key: (len(vals), sum(vals) / len(vals)) for key, vals in buckets.items()
        }


class TestReport:
    def test_report_bundles_everything(self, sample, catalog):
        report = build_report(sample.records, catalog)
        data = report.to_dict()
        assert data["n"] == 6
        assert data["unique_vectors"] == {"count": 6, "fraction": 1.0}
        assert data["joint_low"]["count"] == 2
        keys = [tuple(p["key"]) for p in data["cube"]["points"]]
        assert (5, 0, 0) in keys

    def test_single_record_report_has_no_correlations(self, catalog):
        report = build_report([make_record(PENNY_BUN_CELLS)], catalog)
        assert report.correlations is None
