"""Wildcard phrase queries: literals, single-token gaps, and stem prefixes.

Grammar, whitespace separated:
  ``word``   literal token (folded like the corpus)
  ``*``      any single token
  ``stem*``  any token starting with ``stem`` (the bare stem included)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .index import CorpusIndex
from .tokenizer import DEFAULT_TOKENIZER, TokenizerConfig


class EmptyQueryError(ValueError):
    """Query text contains no elements."""


class MalformedElementError(ValueError):
    """A ``*`` appears anywhere except the final position of an element."""


@dataclass(frozen=True)
class Literal:
    token: str

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class AnyToken:
    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Prefix:
    stem: str

    def __str__(self) -> str:
        return self.stem + "*"


Element = Union[Literal, AnyToken, Prefix]


@dataclass(frozen=True)
class WildcardQuery:
    elements: tuple[Element, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise EmptyQueryError("a query needs at least one element")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def text(self) -> str:
        return " ".join(str(e) for e in self.elements)


def parse_query(text: str, config: TokenizerConfig = DEFAULT_TOKENIZER) -> WildcardQuery:
    """Parse query text, folding literals and stems with the corpus config."""
    parts = text.split()
    if not parts:
        raise EmptyQueryError("empty query")
    elements: list[Element] = []
    for part in parts:
        if part == "*":
            elements.append(AnyToken())
        elif "*" in part[:-1]:
            raise MalformedElementError(
                f"{part!r}: * is only allowed as the final character of an element"
            )
        elif part.endswith("*"):
            elements.append(Prefix(config.fold(part[:-1])))
        else:
            elements.append(Literal(config.fold(part)))
    return WildcardQuery(tuple(elements))


@dataclass(frozen=True)
class Hit:
    doc: int
    start: int
    tokens: tuple[str, ...]


def _matches(element: Element, token: str) -> bool:
    if isinstance(element, Literal):
        return token == element.token
    if isinstance(element, Prefix):
        return token.startswith(element.stem)
    return True


def _candidate_cost(index: CorpusIndex, element: Element) -> int:
    if isinstance(element, Literal):
        return len(index.positions(element.token))
    if isinstance(element, Prefix):
        return sum(len(index.positions(t)) for t in index.vocab_with_prefix(element.stem))
    return index.n_tokens


def _candidate_positions(index: CorpusIndex, element: Element) -> list[tuple[int, int]]:
    if isinstance(element, Literal):
        return index.positions(element.token)
    if isinstance(element, Prefix):
        merged: list[tuple[int, int]] = []
        for token in index.vocab_with_prefix(element.stem):
            merged.extend(index.positions(token))
        merged.sort()
        return merged
    return [(d, p) for d in range(index.n_docs) for p in range(len(index.docs[d]))]


def find_matches(index: CorpusIndex, query: WildcardQuery) -> list[Hit]:
    """All spans matching the query, ordered by (document, start position).

    Every start position is reported; overlapping hits are not suppressed.
    Spans never cross document boundaries.
    """
    n = len(query)
    # Anchor on the most selective element, then verify whole spans directly
    # against the token arrays.
    anchor = min(range(n), key=lambda i: _candidate_cost(index, query.elements[i]))
    hits: list[Hit] = []
    for doc_id, pos in _candidate_positions(index, query.elements[anchor]):
        start = pos - anchor
        if start < 0 or start + n > len(index.docs[doc_id]):
            continue
        span = index.docs[doc_id][start : start + n]
        if all(_matches(e, t) for e, t in zip(query.elements, span)):
            hits.append(Hit(doc=doc_id, start=start, tokens=span))
    hits.sort(key=lambda h: (h.doc, h.start))
    return hits
