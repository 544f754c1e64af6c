"""Corpus tooling: tokenization, positional index, wildcard queries, evidence."""

from .tokenizer import DEFAULT_TOKENIZER, TokenizerConfig, tokenize
from .index import CacheError, CorpusIndex, EmptyCorpusError, read_documents
from .query import (
    AnyToken,
    EmptyQueryError,
    Hit,
    Literal,
    MalformedElementError,
    Prefix,
    WildcardQuery,
    find_matches,
    parse_query,
)
from .evidence import (
    INCONCLUSIVE,
    SUPPORTS_0,
    SUPPORTS_1,
    EvidenceReport,
    KwicLine,
    MissingStemsError,
    QueryStats,
    TooShortError,
    check_inflection,
    check_insertion,
    kwic_lines,
)

__all__ = [
    "AnyToken",
    "CacheError",
    "CorpusIndex",
    "DEFAULT_TOKENIZER",
    "EmptyCorpusError",
    "EmptyQueryError",
    "EvidenceReport",
    "Hit",
    "INCONCLUSIVE",
    "KwicLine",
    "Literal",
    "MalformedElementError",
    "MissingStemsError",
    "Prefix",
    "QueryStats",
    "SUPPORTS_0",
    "SUPPORTS_1",
    "TooShortError",
    "TokenizerConfig",
    "WildcardQuery",
    "check_inflection",
    "check_insertion",
    "find_matches",
    "kwic_lines",
    "parse_query",
    "read_documents",
    "tokenize",
]
