"""Corpus evidence checks backing the insertion and inflection criteria.

A hit count of 1 is treated as occasional creative use and contributes
nothing: effective hits are zero unless at least two examples are found.
Suggestions are advisory; they never overwrite an annotator's decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..annotation import MweRecord
from .index import CorpusIndex
from .query import AnyToken, Hit, Literal, Prefix, WildcardQuery, find_matches

SUPPORTS_1 = "supports_1"
SUPPORTS_0 = "supports_0"
INCONCLUSIVE = "inconclusive"

# Criterion codes the two checks inform (default catalog numbering).
INSERTION_CODE = "c05"
FIXED_FORM_CODE = "c06"
HEADWORD_INFLECTION_CODE = "c07"

OCCASIONAL_THRESHOLD = 1  # raw hit counts at or below this are zeroed
KWIC_WINDOW = 5
KWIC_LIMIT = 20


class TooShortError(ValueError):
    """The expression has fewer than two tokens; no gap can be probed."""


class MissingStemsError(ValueError):
    """The record carries no token/stem pairs, so prefix queries cannot be built."""


def effective_hits(raw: int, threshold: int = OCCASIONAL_THRESHOLD) -> int:
    return raw if raw > threshold else 0


@dataclass(frozen=True)
class QueryStats:
    query: str
    raw_hits: int
    effective_hits: int


@dataclass(frozen=True)
class KwicLine:
    doc: str
    start: int
    before: str
    match: str
    after: str


@dataclass(frozen=True)
class EvidenceReport:
    check: str
    primary: str
    queries: tuple[QueryStats, ...]
    kwic: tuple[KwicLine, ...]
    suggestions: dict[str, str]
    realizations: tuple[tuple[str, int], ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def suggestion(self) -> str:
        return self.suggestions[self.primary]

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "primary": self.primary,
            "queries": [
                {"query": q.query, "raw_hits": q.raw_hits, "effective_hits": q.effective_hits}
                for q in self.queries
            ],
            "kwic": [
                {
                    "doc": k.doc,
                    "start": k.start,
                    "before": k.before,
                    "match": k.match,
                    "after": k.after,
                }
                for k in self.kwic
            ],
            "suggestions": dict(self.suggestions),
            "realizations": [[surface, count] for surface, count in self.realizations],
            "notes": list(self.notes),
        }


def kwic_lines(index: CorpusIndex, hits: list[Hit], window: int = KWIC_WINDOW) -> list[KwicLine]:
    lines = []
    for hit in hits[:KWIC_LIMIT]:
        tokens = index.docs[hit.doc]
        lo = max(0, hit.start - window)
        hi = min(len(tokens), hit.start + len(hit.tokens) + window)
        lines.append(
            KwicLine(
                doc=index.doc_names[hit.doc],
                start=hit.start,
                before=" ".join(tokens[lo : hit.start]),
                match=" ".join(hit.tokens),
                after=" ".join(tokens[hit.start + len(hit.tokens) : hi]),
            )
        )
    return lines


def check_insertion(
    index: CorpusIndex,
    mwe_tokens: list[str] | tuple[str, ...],
    occasional_threshold: int = OCCASIONAL_THRESHOLD,
) -> EvidenceReport:
    """Probe every adjacent gap of the expression with a one-token wildcard.

    The contiguous phrase is queried first; then, for each adjacent token
    pair, the full phrase with a gap in that position. Attested insertions
    (two or more examples in some gap) suggest 0 for the insertion
    criterion; a phrase never seen contiguously yields no verdict.
    """
    tokens = [index.config.fold(t) for t in mwe_tokens]
    if len(tokens) < 2:
        raise TooShortError("insertion check needs at least two tokens")

    phrase = WildcardQuery(tuple(Literal(t) for t in tokens))
    phrase_hits = find_matches(index, phrase)
    stats = [
        QueryStats(
            query=phrase.text,
            raw_hits=len(phrase_hits),
            effective_hits=effective_hits(len(phrase_hits), occasional_threshold),
        )
    ]
    kwic = kwic_lines(index, phrase_hits)

    notes: list[str] = []
    any_gap_attested = False
    for gap in range(1, len(tokens)):
        elements = [Literal(t) for t in tokens]
        elements.insert(gap, AnyToken())
        query = WildcardQuery(tuple(elements))
        hits = find_matches(index, query)
        eff = effective_hits(len(hits), occasional_threshold)
        stats.append(QueryStats(query=query.text, raw_hits=len(hits), effective_hits=eff))
        kwic.extend(kwic_lines(index, hits))
        if eff > 0:
            any_gap_attested = True
        elif len(hits) > 0:
            notes.append(
                f"{query.text!r} found only {len(hits)} example(s); "
                "treated as occasional use and counted as zero"
            )

    if any_gap_attested:
        suggestion = SUPPORTS_0
    elif len(phrase_hits) >= 1:
        suggestion = SUPPORTS_1
    else:
        suggestion = INCONCLUSIVE
        notes.append("the contiguous phrase itself was not found; no evidence either way")

    return EvidenceReport(
        check="insertion",
        primary=INSERTION_CODE,
        queries=tuple(stats),
        kwic=tuple(kwic[:KWIC_LIMIT]),
        suggestions={INSERTION_CODE: suggestion},
        notes=tuple(notes),
    )


def check_inflection(
    index: CorpusIndex,
    record: MweRecord,
    occasional_threshold: int = OCCASIONAL_THRESHOLD,
) -> EvidenceReport:
    """Probe grammatical variation by replacing every token with its stem prefix.

    Hits of the all-prefix query are grouped by exact surface realization and
    the occasional-use rule is applied per realization. One surviving
    realization suggests a fixed form; several suggest the form does change.
    The headword-only sub-check additionally tests whether the variation is
    confined to the headword position.
    """
    if not record.token_stems:
        raise MissingStemsError(f"record {record.id!r} has no token_stems")

    canonical = tuple(index.config.fold(tok) for tok, _stem in record.token_stems)
    stems = [index.config.fold(stem) for _tok, stem in record.token_stems]
    query = WildcardQuery(tuple(Prefix(s) for s in stems))
    hits = find_matches(index, query)

    by_realization: dict[tuple[str, ...], int] = {}
    for hit in hits:
        by_realization[hit.tokens] = by_realization.get(hit.tokens, 0) + 1
    survivors = {
        realization: count
        for realization, count in by_realization.items()
        if count > occasional_threshold
    }

    notes = [
        f"{' '.join(realization)!r} found only {count} example(s); discarded as occasional use"
        for realization, count in sorted(by_realization.items())
        if realization not in survivors
    ]

    if not survivors:
        fixed_form = INCONCLUSIVE
        notes.append("no realization survived the occasional-use rule")
    elif len(survivors) == 1:
        fixed_form = SUPPORTS_1
    else:
        fixed_form = SUPPORTS_0

    suggestions = {FIXED_FORM_CODE: fixed_form}

    non_canonical = [r for r in survivors if r != canonical]
    if not survivors or not non_canonical:
        suggestions[HEADWORD_INFLECTION_CODE] = INCONCLUSIVE
    else:
        headword = record.features.headword
        if headword is None:
            # Sub-check unavailable; the fixed-form suggestion still stands.
            notes.append("record has no headword; headword-only sub-check skipped")
        else:
            folded_head = index.config.fold(headword)
            try:
                head_pos = canonical.index(folded_head)
            except ValueError:
                notes.append(
                    f"headword {headword!r} is not one of the record's tokens; "
                    "headword-only sub-check skipped"
                )
                head_pos = -1
            if head_pos >= 0:
                confined = all(
                    all(r[i] == canonical[i] for i in range(len(canonical)) if i != head_pos)
                    for r in non_canonical
                )
                suggestions[HEADWORD_INFLECTION_CODE] = SUPPORTS_1 if confined else SUPPORTS_0

    ranked = sorted(survivors.items(), key=lambda kv: (-kv[1], kv[0]))
    return EvidenceReport(
        check="inflection",
        primary=FIXED_FORM_CODE,
        queries=(
            QueryStats(
                query=query.text,
                raw_hits=len(hits),
                effective_hits=effective_hits(len(hits), occasional_threshold),
            ),
        ),
        kwic=tuple(kwic_lines(index, hits)),
        suggestions=suggestions,
        realizations=tuple((" ".join(r), c) for r, c in ranked),
        notes=tuple(notes),
    )
