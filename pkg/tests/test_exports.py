import pytest

from mwe_workbench.analysis import EmptyDatasetError, build_report, score_histogram
from mwe_workbench.exports import UnwritableTargetError, export_report, histogram_svg

from conftest import PENNY_BUN_CELLS, make_record


def test_bundle_contents(sample, catalog, tmp_path):
    report = build_report(sample.records, catalog)
    written = export_report(report, tmp_path / "bundle")
    assert {p.name for p in written} == {
        "report.json",
        "cube.tsv",
        "histogram.tsv",
        "criterion_sums.tsv",
        "group_totals.tsv",
        "histogram.svg",
    }
    cube = (tmp_path / "bundle" / "cube.tsv").read_text(encoding="utf-8")
    assert cube.splitlines()[0] == (
        "lexical\tgrammatical\tobsolescence\tcount\theld_out_mean\tcolor_scalar\tmember_ids"
    )
    assert "5\t0\t0\t2\t2.5\t0.5\tbelyj-grib,synthetic-a" in cube


def test_unwritable_target(sample, catalog, tmp_path):
    blocker = tmp_path / "blocked"
    blocker.write_text("a file, not a directory", encoding="utf-8")
    report = build_report(sample.records, catalog)
    with pytest.raises(UnwritableTargetError):
        export_report(report, blocker)


def test_empty_dataset_never_reaches_export(catalog):
    with pytest.raises(EmptyDatasetError):
        build_report([], catalog)


def test_single_score_histogram_exports_one_bar(catalog, tmp_path):
    report = build_report([make_record(PENNY_BUN_CELLS)], catalog)
    export_report(report, tmp_path)
    table = (tmp_path / "histogram.tsv").read_text(encoding="utf-8")
    assert table == "score\tcount\n9\t1\n"
    svg = (tmp_path / "histogram.svg").read_text(encoding="utf-8")
    assert svg.count("<rect") == 1
    assert ">9</text>" in svg


def test_svg_labels_every_score_in_range(sample):
    svg = histogram_svg(score_histogram(sample.records))
    for score in range(4, 13):  # observed range of the sample totals
        assert f">{score}</text>" in svg
