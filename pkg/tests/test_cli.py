import json

import pytest

from mwe_workbench import cli
from mwe_workbench.analysis import build_report
from mwe_workbench.catalog import CriteriaCatalog
from mwe_workbench.dataset import sample_dataset_text, save_dataset

CORPUS_TEXT = "белый гриб тут, белый гриб там, белый большой гриб, белых грибов."


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / "sample.json"
    path.write_text(sample_dataset_text(), encoding="utf-8")
    return path


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text(CORPUS_TEXT, encoding="utf-8")
    return path


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidateAndScore:
    def test_validate_sample(self, capsys, sample_file):
        code, out, err = run(capsys, "validate", sample_file)
        assert code == 0
        assert out.strip() == "6 records valid"

    def test_validate_reports_every_problem(self, capsys, tmp_path, sample):
        text = save_dataset(sample, "tabular")
        lines = text.splitlines()
        fields = lines[1].split("\t")
        fields[13] = fields[14] = "1"  # c06 = c07 = 1
        lines[1] = "\t".join(fields)
        bad = tmp_path / "bad.tsv"
        bad.write_text("\n".join(lines) + "\n", encoding="utf-8")

        code, out, err = run(capsys, "validate", bad)
        assert code == 1
        assert "MutualExclusion" in err

    def test_score_table(self, capsys, sample_file):
        code, out, err = run(capsys, "score", sample_file)
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "id\ttotal\tlexical\tgrammatical\tobsolescence\treplacement"
        assert "belyj-grib\t9\t5\t0\t0\t4" in rows

    def test_score_fails_on_exclusion_violation(self, capsys, tmp_path, sample):
        text = save_dataset(sample, "tabular")
        lines = text.splitlines()
        fields = lines[1].split("\t")
        fields[13] = fields[14] = "1"
        lines[1] = "\t".join(fields)
        bad = tmp_path / "bad.tsv"
        bad.write_text("\n".join(lines) + "\n", encoding="utf-8")

        code, out, err = run(capsys, "score", bad)
        assert code == 1
        assert "MutualExclusion" in err


class TestAnalyzeAndCube:
    def test_cube_contains_shared_point(self, capsys, sample_file):
        code, out, err = run(
            capsys, "cube", sample_file, "--axes", "L,G,O", "--held-out", "R"
        )
        assert code == 0
        assert "5\t0\t0\t2\t2.5\t0.5\tbelyj-grib,synthetic-a" in out

    def test_cube_axis_overlap_is_a_usage_error(self, capsys, sample_file):
        with pytest.raises(SystemExit) as err:
            cli.main(["cube", str(sample_file), "--axes", "L,G,R", "--held-out", "R"])
        assert err.value.code == 2

    def test_unknown_flag_is_a_usage_error(self, sample_file):
        with pytest.raises(SystemExit) as err:
            cli.main(["validate", str(sample_file), "--frobnicate"])
        assert err.value.code == 2

    def test_analyze_writes_deterministic_report(self, capsys, sample_file, tmp_path):
        out1 = tmp_path / "out1"
        out2 = tmp_path / "out2"
        assert run(capsys, "analyze", sample_file, "--out", out1)[0] == 0
        assert run(capsys, "analyze", sample_file, "--out", out2)[0] == 0
        a = (out1 / "report.json").read_bytes()
        b = (out2 / "report.json").read_bytes()
        assert a == b

    def test_analyze_matches_direct_module_composition(
        self, capsys, sample_file, tmp_path, sample, catalog
    ):
        outdir = tmp_path / "out"
        run(capsys, "analyze", sample_file, "--out", outdir)
        from_cli = json.loads((outdir / "report.json").read_text(encoding="utf-8"))
        direct = build_report(sample.records, catalog).to_dict()
        assert from_cli == json.loads(json.dumps(direct))


class TestCorpusCommands:
    def test_index_query_check_pipeline(self, capsys, sample_file, corpus_file, tmp_path):
        cache = tmp_path / "idx.json"
        code, out, err = run(capsys, "corpus-index", corpus_file, "--out", cache)
        assert code == 0
        assert cache.exists()

        code, out, err = run(capsys, "corpus-query", "белый * гриб", "--index", cache)
        assert code == 0
        assert out.startswith("1 hit(s)")

        code, out, err = run(
            capsys,
            "corpus-check",
            sample_file,
            "--record",
            "belyj-grib",
            "--check",
            "insertion",
            "--index",
            cache,
        )
        assert code == 0
        report = json.loads(out)
        assert report["suggestions"]["c05"] == "supports_1"  # single insertion zeroed

    def test_corpus_check_inflection(self, capsys, sample_file, corpus_file, tmp_path):
        cache = tmp_path / "idx.json"
        run(capsys, "corpus-index", corpus_file, "--out", cache)
        code, out, err = run(
            capsys,
            "corpus-check",
            sample_file,
            "--record",
            "belyj-grib",
            "--check",
            "inflection",
            "--index",
            cache,
        )
        assert code == 0
        report = json.loads(out)
        assert report["check"] == "inflection"

    def test_unknown_record_fails(self, capsys, sample_file, corpus_file, tmp_path):
        cache = tmp_path / "idx.json"
        run(capsys, "corpus-index", corpus_file, "--out", cache)
        code, out, err = run(
            capsys,
            "corpus-check",
            sample_file,
            "--record",
            "nope",
            "--check",
            "insertion",
            "--index",
            cache,
        )
        assert code == 1

    def test_query_straight_from_corpus_files(self, capsys, corpus_file):
        code, out, err = run(
            capsys, "corpus-query", "бел* гриб*", "--corpus", corpus_file
        )
        assert code == 0
        assert "hit(s)" in out

    def test_query_needs_a_source(self, corpus_file):
        with pytest.raises(SystemExit) as err:
            cli.main(["corpus-query", "гриб"])
        assert err.value.code == 2

    def test_blank_line_docs_split(self, capsys, tmp_path):
        corpus = tmp_path / "multi.txt"
        corpus.write_text("один два\n\nтри четыре\n", encoding="utf-8")
        cache = tmp_path / "idx.json"
        code, out, err = run(
            capsys, "corpus-index", corpus, "--blank-line-docs", "--out", cache
        )
        assert code == 0
        assert "2 document(s)" in out


class TestExport:
    def test_export_bundle(self, capsys, sample_file, tmp_path):
        outdir = tmp_path / "bundle"
        code, out, err = run(capsys, "export", sample_file, "--out", outdir)
        assert code == 0
        names = {p.name for p in outdir.iterdir()}
        assert names == {
            "report.json",
            "cube.tsv",
            "histogram.tsv",
            "criterion_sums.tsv",
            "group_totals.tsv",
            "histogram.svg",
        }
        cube = (outdir / "cube.tsv").read_text(encoding="utf-8")
        assert "5\t0\t0\t2\t2.5\t0.5" in cube
        svg = (outdir / "histogram.svg").read_text(encoding="utf-8")
        assert svg.startswith("<svg")

    def test_export_is_deterministic(self, capsys, sample_file, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, "export", sample_file, "--out", a)
        run(capsys, "export", sample_file, "--out", b)
        for name in ("report.json", "cube.tsv", "histogram.svg"):
            assert (a / name).read_bytes() == (b / name).read_bytes()


class TestCatalogOption:
    def test_env_var_catalog(self, capsys, sample_file, tmp_path, monkeypatch, catalog):
        path = tmp_path / "catalog.json"
        catalog.save(path)
        monkeypatch.setenv(cli.CATALOG_ENV_VAR, str(path))
        code, out, err = run(capsys, "validate", sample_file)
        assert code == 0

    def test_explicit_catalog_flag(self, capsys, sample_file, tmp_path, catalog):
        path = tmp_path / "catalog.json"
        catalog.save(path)
        code, out, err = run(capsys, "--catalog", path, "validate", sample_file)
        assert code == 0

    def test_default_catalog_reference_file_loads(self):
        assert CriteriaCatalog.default().version == "default-1"
