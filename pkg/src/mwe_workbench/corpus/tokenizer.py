"""Deterministic tokenization: maximal alphanumeric runs, folded."""

from __future__ import annotations

import re
from dataclasses import dataclass

# Runs of letters/digits; underscore and all punctuation are separators.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class TokenizerConfig:
    """Folding options. ``normalize_yo`` maps Cyrillic ё to е, which Russian
    corpora write inconsistently."""

    case_fold: bool = True
    normalize_yo: bool = True

    def fold(self, token: str) -> str:
        if self.case_fold:
            token = token.casefold()
        if self.normalize_yo:
            token = token.replace("ё", "е").replace("Ё", "Е")
        return token

    def to_dict(self) -> dict:
        return {"case_fold": self.case_fold, "normalize_yo": self.normalize_yo}

    @classmethod
    def from_dict(cls, data: dict) -> "TokenizerConfig":
        return cls(
            case_fold=bool(data.get("case_fold", True)),
            normalize_yo=bool(data.get("normalize_yo", True)),
        )


DEFAULT_TOKENIZER = TokenizerConfig()


def tokenize(text: str, config: TokenizerConfig = DEFAULT_TOKENIZER) -> list[str]:
    """Split ``text`` into folded tokens. Deterministic for a fixed config."""
    return [config.fold(m.group(0)) for m in _TOKEN_RE.finditer(text)]
