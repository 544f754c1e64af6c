import random

import pytest

from mwe_workbench.annotation import (
    AnnotationVector,
    LinguisticFeatures,
    MweRecord,
    validate_record,
)
from mwe_workbench.catalog import CriteriaCatalog
from mwe_workbench.corpus import Literal, Prefix
from mwe_workbench.dataset import Dataset, sample_dataset

# The reference annotation for "белый гриб" (penny bun).
PENNY_BUN_CELLS = (1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1)


@pytest.fixture(scope="session")
def catalog() -> CriteriaCatalog:
    return CriteriaCatalog.default()


@pytest.fixture(scope="session")
def sample(catalog) -> Dataset:
    return sample_dataset(catalog)


def make_record(
    cells,
    record_id="r",
    surface="слово слово",
    is_sentence=False,
    headword="слово",
    phrase_structure="agreement",
    **kwargs,
) -> MweRecord:
    return MweRecord(
        id=record_id,
        surface=surface,
        features=LinguisticFeatures(
            pos_pattern="X+X",
            is_sentence=is_sentence,
            headword=headword,
            phrase_structure=phrase_structure,
        ),
        annotation=AnnotationVector(cells=tuple(cells)),
        **kwargs,
    )


def random_valid_record(rng: random.Random, catalog: CriteriaCatalog, record_id: str) -> MweRecord:
    """A random record satisfying every constraint."""
    kind = rng.randrange(3)
    if kind == 0:
        features = dict(is_sentence=True, headword=None, phrase_structure="sentence")
    elif kind == 1:
        features = dict(is_sentence=False, headword=None, phrase_structure="coordination")
    else:
        features = dict(is_sentence=False, headword="слово", phrase_structure="agreement")

    cells = [rng.randrange(2) for _ in range(16)]
    headless = kind in (0, 1)
    if headless:
        for code in catalog.headless_inapplicable:
            cells[catalog.get(code).ordinal - 1] = 0
    for pair in catalog.exclusion_pairs:
        a, b = sorted(pair)
        if cells[catalog.get(a).ordinal - 1] == 1 and cells[catalog.get(b).ordinal - 1] == 1:
            cells[catalog.get(rng.choice([a, b])).ordinal - 1] = 0
    record = make_record(cells, record_id=record_id, **features)
    assert validate_record(record, catalog).ok
    return record


def random_valid_dataset(rng: random.Random, catalog: CriteriaCatalog, n: int) -> Dataset:
    return Dataset(
        records=tuple(
            random_valid_record(rng, catalog, f"r{i:04d}") for i in range(n)
        )
    )


def naive_matches(docs, query):
    """Sliding-window matching oracle over raw token sequences."""
    def ok(element, token):
        if isinstance(element, Literal):
            return token == element.token
        if isinstance(element, Prefix):
            return token.startswith(element.stem)
        return True

    out = []
    n = len(query.elements)
    for doc_id, tokens in enumerate(docs):
        for start in range(len(tokens) - n + 1):
            if all(ok(e, tokens[start + i]) for i, e in enumerate(query.elements)):
                out.append((doc_id, start, tuple(tokens[start : start + n])))
    return out
