#!/usr/bin/env python3
"""A guided tour: annotate an expression, double-check it against a corpus,
then look at where it lands in the cube.

Run it directly; it prints every step and writes nothing outside /tmp.
"""

import tempfile
from pathlib import Path

from mwe_workbench.analysis import aggregate_cube, build_report
from mwe_workbench.annotation import (
    AnnotationVector,
    LinguisticFeatures,
    MweRecord,
    group_vector,
    total_score,
    validate_record,
)
from mwe_workbench.catalog import CriteriaCatalog, Group
from mwe_workbench.corpus import CorpusIndex, check_inflection, check_insertion
from mwe_workbench.dataset import sample_dataset
from mwe_workbench.exports import export_report

catalog = CriteriaCatalog.default()

# ----------------------------------------------------------------------------
# 1. The criteria catalog: 16 criteria in 4 groups
# ----------------------------------------------------------------------------
print("catalog", catalog.version)
for group in Group:
    members = catalog.group_members(group)
    codes = ", ".join(c.code for c in members)
    print(f"  {group.label:<20} {codes}  (max sum {catalog.group_max(group)})")
print(f"  highest possible total: {catalog.max_total}")
print()

# ----------------------------------------------------------------------------
# 2. Annotating a record, getting it wrong, then right
# ----------------------------------------------------------------------------
features = LinguisticFeatures(
    pos_pattern="Adj.+Noun",
    is_sentence=False,
    headword="карты",
    phrase_structure="agreement",
)

# First attempt: both "never changes form" (c06) and "only the headword
# changes" (c07) are switched on. They cannot both hold.
clumsy = AnnotationVector(cells=(1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0))
record = MweRecord(
    id="igralnye-karty",
    surface="игральные карты",
    gloss="playing cards",
    features=features,
    annotation=clumsy,
    token_stems=(("игральные", "игральн"), ("карты", "карт")),
)
result = validate_record(record, catalog)
print("first attempt valid?", result.ok)
for violation in result.violations:
    print("  ", violation.rule, violation.message)

# Second attempt: guess that only the headword inflects (keep c07, drop c06).
# Valid now, but the corpus check below will argue with it.
fixed = AnnotationVector(cells=(1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0))
record = record.with_annotation(fixed)
assert validate_record(record, catalog).ok
print("fixed: total", total_score(fixed), "groups", group_vector(fixed, catalog).as_tuple())
print()

# ----------------------------------------------------------------------------
# 3. Double-checking against a corpus
# ----------------------------------------------------------------------------
# A toy corpus: the phrase occurs contiguously and inflected, and exactly one
# writer slipped a word inside it, which the occasional-use rule discards.
corpus = CorpusIndex.build(
    [
        "Игральные карты лежали на столе. Игральные карты были новые.",
        "Колода игральных карт нашлась в ящике, игральных карт там много.",
        "Игральные старые карты никто не трогал.",
    ]
)

insertion = check_insertion(corpus, [tok for tok, _ in record.token_stems])
print("insertion check ->", insertion.suggestion)
for stats in insertion.queries:
    print(f"   {stats.query!r}: raw {stats.raw_hits}, effective {stats.effective_hits}")

inflection = check_inflection(corpus, record)
print("inflection check ->", dict(inflection.suggestions))
for surface_form, count in inflection.realizations:
    print(f"   attested form {surface_form!r} x{count}")

# Both attested forms inflect the adjective as well as the noun, so the
# "only headword changes" guess does not survive the evidence. Suggestions
# never overwrite anything; the revision is an explicit human decision.
final = AnnotationVector(cells=(1, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0))
record = record.with_annotation(final)
assert validate_record(record, catalog).ok
print("revised after evidence: total", total_score(final),
      "groups", group_vector(final, catalog).as_tuple())
print()

# ----------------------------------------------------------------------------
# 4. Dataset statistics and the cube
# ----------------------------------------------------------------------------
sample = sample_dataset(catalog)
records = sample.records + (record,)

report = build_report(records, catalog)
print(f"{report.n} records, score range "
      f"{report.histogram.counts[0][0]}..{report.histogram.counts[-1][0]}, "
      f"median {report.histogram.median_standard:g}")
for group in Group:
    totals = report.group_totals
    print(f"  {group.value:<13} {totals.totals[group.value]:>3} "
          f"({totals.shares[group.value]:.0%} of all scores)")

cube = aggregate_cube(records, catalog, (Group.LEXICAL, Group.GRAMMATICAL, Group.OBSOLESCENCE), Group.REPLACEMENT)
print("cube points (lexical, grammatical, obsolescence) colored by replacement:")
for point in cube.points:
    members = ", ".join(point.member_ids)
    print(f"  {point.key}  x{point.count}  mean {point.held_out_mean:g} "
          f"(color {point.color_scalar:.2f})  [{members}]")
print()

# ----------------------------------------------------------------------------
# 5. Exporting the report bundle
# ----------------------------------------------------------------------------
outdir = Path(tempfile.mkdtemp(prefix="mwe-walkthrough-"))
written = export_report(report, outdir)
print("exported:")
for path in written:
    print("  ", path)
