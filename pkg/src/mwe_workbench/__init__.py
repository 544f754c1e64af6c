"""Workbench for annotating and analyzing multi-word expression idiomaticity.

Sixteen binary criteria in four groups (lexical change, grammatical change,
obsolescence, replacement) describe how far an expression has drifted from
a free word-group. The package provides constraint-checked annotation,
corpus-based double checks, group vectorization, cube aggregation for
cluster plots, dataset IO, a CLI and an HTTP annotation service.
"""

from .catalog import CriteriaCatalog, Criterion, Group
from .annotation import (
    AnnotationVector,
    GroupVector,
    LinguisticFeatures,
    MweRecord,
    ValidationResult,
    Violation,
    applicability_mask,
    group_vector,
    total_score,
    validate_record,
)
from .dataset import Dataset, load_dataset, sample_dataset, save_dataset

__version__ = "0.1.0"

__all__ = [
    "AnnotationVector",
    "CriteriaCatalog",
    "Criterion",
    "Dataset",
    "Group",
    "GroupVector",
    "LinguisticFeatures",
    "MweRecord",
    "ValidationResult",
    "Violation",
    "applicability_mask",
    "group_vector",
    "load_dataset",
    "sample_dataset",
    "save_dataset",
    "total_score",
    "validate_record",
    "__version__",
]
