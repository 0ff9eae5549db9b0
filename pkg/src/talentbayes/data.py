"""CSV ingestion, cleaning, and stratified fold assignment.

Cleaning rules (all surfaced in the cleaning report):
  - cells are trimmed of surrounding whitespace; trims count as coercions
  - "?" or an empty cell is a missing value
  - an unparsable numeric cell drops the whole row (imputation would
    contaminate the Gaussian estimates)
  - in labeled mode a row with a missing or unknown class label is dropped
  - categorical matching is case-sensitive after the trim; values that
    collide case-insensitively are flagged as near-duplicates for review
  - values outside an attribute's declared list are accepted (the observed
    vocabulary is open) and noted
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .errors import DataError
from .rng import SplitMix64
from .schema import CATEGORICAL, NUMERIC, AttributeSchema

#: Missing cells are represented as None throughout the package.
MISSING = None

_MISSING_TOKENS = ("", "?")


@dataclass
class Instance:
    """One personnel record: predictor values plus an optional class label."""

    values: dict
    label: str | None = None


@dataclass
class CleaningReport:
    rows_in: int = 0
    rows_dropped: int = 0
    dropped_numeric: int = 0
    dropped_label: int = 0
    dropped_shape: int = 0
    missing_cells: int = 0
    coerced_values: int = 0
    notes: list[str] = field(default_factory=list)


@dataclass
class Dataset:
    schema: AttributeSchema
    instances: list[Instance]
    cleaning_report: CleaningReport = field(default_factory=CleaningReport)

    def __len__(self) -> int:
        return len(self.instances)


@dataclass
class FoldAssignment:
    k: int
    fold_of: list[int]
    seed: int
    warnings: list[str] = field(default_factory=list)


def validate_instance_values(schema: AttributeSchema, values: dict) -> None:
    """Check a raw value map against the schema; raises DataError."""
    for name, value in values.items():
        if not schema.has_attribute(name):
            raise DataError(f"unknown attribute {name!r}")
        if value is MISSING:
            continue
        kind = schema.attribute(name).kind
        if kind == CATEGORICAL:
            if not isinstance(value, str):
                raise DataError(f"attribute {name!r} is categorical but got {value!r}")
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DataError(f"attribute {name!r} is numeric but got {value!r}")
            if not math.isfinite(value):
                raise DataError(f"attribute {name!r} must be finite, got {value!r}")


def _clean_cell(raw: str, report: CleaningReport):
    cell = raw.strip()
    if cell != raw:
        report.coerced_values += 1
    if cell in _MISSING_TOKENS:
        return MISSING
    return cell


def _read_rows(csv_text: str):
    reader = csv.reader(io.StringIO(csv_text))
    rows = list(reader)
    if not rows:
        raise DataError("missing header row")
    return rows[0], rows[1:]


def load_dataset(csv_text: str, schema: AttributeSchema, labeled: bool = True) -> Dataset:
    """Parse an RFC-4180 CSV into a cleaned Dataset.

    The header must name a subset of the schema's predictors, plus the
    class attribute when `labeled` is set. Surviving row order is preserved.
    """
    header_raw, body = _read_rows(csv_text)
    header = [h.strip() for h in header_raw]

    label_col = None
    for i, name in enumerate(header):
        if name == schema.class_attribute:
            label_col = i
        elif not schema.has_attribute(name):
            raise DataError(f"unknown column {name!r}")
    if labeled and label_col is None:
        raise DataError(f"class column {schema.class_attribute!r} absent from a labeled dataset")

    report = CleaningReport(rows_in=len(body))
    instances: list[Instance] = []
    observed: dict[str, set] = {a.name: set() for a in schema.categorical_attributes()}

    for row in body:
        if len(row) != len(header):
            report.dropped_shape += 1
            report.rows_dropped += 1
            continue
        values: dict = {}
        label = None
        drop_reason = None
        missing_here = 0
        for i, raw in enumerate(row):
            cell = _clean_cell(raw, report)
            name = header[i]
            if i == label_col:
                if cell is MISSING or cell not in schema.class_labels:
                    drop_reason = "label"
                else:
                    label = cell
                continue
            if cell is MISSING:
                values[name] = MISSING
                missing_here += 1
                continue
            if schema.attribute(name).kind == NUMERIC:
                try:
                    values[name] = float(cell)
                except ValueError:
                    drop_reason = drop_reason or "numeric"
            else:
                values[name] = cell
                observed[name].add(cell)
        if drop_reason == "numeric":
            report.dropped_numeric += 1
            report.rows_dropped += 1
            continue
        if drop_reason == "label":
            report.dropped_label += 1
            report.rows_dropped += 1
            continue
        report.missing_cells += missing_here
        instances.append(Instance(values, label))

    if not instances:
        raise DataError("no rows survived cleaning")

    _note_vocabulary_issues(schema, observed, report)
    return Dataset(schema, instances, report)


def _note_vocabulary_issues(schema, observed, report):
    for spec in schema.categorical_attributes():
        seen = observed.get(spec.name, set())
        if spec.declared_values is not None:
            extra = sorted(seen - set(spec.declared_values))
            if extra:
                report.notes.append(
                    f"attribute {spec.name!r}: values outside declared list accepted: {extra}")
        by_fold: dict[str, list[str]] = {}
        for v in seen:
            by_fold.setdefault(v.casefold(), []).append(v)
        for group in by_fold.values():
            if len(group) > 1:
                report.notes.append(
                    f"attribute {spec.name!r}: possible near-duplicate values {sorted(group)}")


def dataset_to_csv(dataset: Dataset) -> str:
    """Render a dataset back to CSV (missing cells as '?'); deterministic bytes."""
    schema = dataset.schema
    labeled = any(inst.label is not None for inst in dataset.instances)
    header = schema.attribute_names + ([schema.class_attribute] if labeled else [])
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for inst in dataset.instances:
        row = []
        for name in schema.attribute_names:
            v = inst.values.get(name, MISSING)
            if v is MISSING:
                row.append("?")
            elif isinstance(v, float):
                row.append(repr(v))
            else:
                row.append(v)
        if labeled:
            row.append(inst.label if inst.label is not None else "?")
        writer.writerow(row)
    return out.getvalue()


def class_histogram(dataset: Dataset) -> dict:
    counts = {c: 0 for c in dataset.schema.class_labels}
    for inst in dataset.instances:
        if inst.label is not None:
            counts[inst.label] += 1
    return counts


def stratified_folds(dataset: Dataset, k: int, seed: int) -> FoldAssignment:
    """Assign instances to k folds, stratified by class label.

    Within each class (classes processed in declared label order) the
    instance indices are shuffled by the seeded generator, then dealt
    round-robin to folds 0..k-1. Deterministic for a fixed
    (dataset order, k, seed).
    """
    if k < 2:
        raise DataError("k must be at least 2")
    counts = class_histogram(dataset)
    for label, count in counts.items():
        if count == 0:
            raise DataError(f"class {label!r} has no instances")
    unlabeled = sum(1 for inst in dataset.instances if inst.label is None)
    if unlabeled:
        raise DataError(f"{unlabeled} instance(s) lack a class label")

    warnings = []
    smallest_label = min(counts, key=lambda c: counts[c])
    if k >= counts[smallest_label]:
        warnings.append(
            f"k={k} is not below the smallest class size "
            f"({counts[smallest_label]} for {smallest_label!r}); folds may lack that class")

    rng = SplitMix64(seed)
    fold_of = [0] * len(dataset.instances)
    for label in dataset.schema.class_labels:
        indices = [i for i, inst in enumerate(dataset.instances) if inst.label == label]
        rng.shuffle(indices)
        for j, idx in enumerate(indices):
            fold_of[idx] = j % k
    return FoldAssignment(k, fold_of, seed, warnings)
