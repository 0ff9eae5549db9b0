"""Accuracy, confusion metrics, and stratified k-fold cross-validation.

Beyond plain accuracy the report carries per-class precision/recall/F1:
staffing mistakes are cost-asymmetric (a false "good" is expensive), so a
single percentage hides what matters. Zero-denominator metrics are 0.0
with a flag rather than NaN, keeping reports machine-readable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .classifier import NaiveBayesModel, TrainConfig, predict, train
from .data import Dataset, stratified_folds
from .errors import DataError


@dataclass
class ConfusionMatrix:
    labels: list[str]
    counts: list[list[int]]  # rows = true class, columns = predicted

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    @property
    def trace(self) -> int:
        return sum(self.counts[i][i] for i in range(len(self.labels)))


@dataclass
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    flags: list[str] = field(default_factory=list)


@dataclass
class EvaluationReport:
    matrix: ConfusionMatrix
    accuracy: float
    per_class: dict
    fold_accuracies: list[float] | None = None
    mean_accuracy: float | None = None
    std_accuracy: float | None = None
    skipped_folds: list[str] = field(default_factory=list)


def _empty_matrix(labels) -> ConfusionMatrix:
    size = len(labels)
    return ConfusionMatrix(list(labels), [[0] * size for _ in range(size)])


def _fill_matrix(matrix: ConfusionMatrix, model: NaiveBayesModel, instances) -> int:
    index = {label: i for i, label in enumerate(matrix.labels)}
    hits = 0
    for inst in instances:
        predicted = predict(model, inst.values).label
        matrix.counts[index[inst.label]][index[predicted]] += 1
        hits += predicted == inst.label
    return hits


def _derive_metrics(matrix: ConfusionMatrix) -> dict:
    per_class = {}
    size = len(matrix.labels)
    for i, label in enumerate(matrix.labels):
        tp = matrix.counts[i][i]
        predicted = sum(matrix.counts[r][i] for r in range(size))
        actual = sum(matrix.counts[i])
        flags = []
        if predicted == 0:
            flags.append("precision_undefined")
        if actual == 0:
            flags.append("recall_undefined")
        precision = tp / predicted if predicted else 0.0
        recall = tp / actual if actual else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[label] = ClassMetrics(precision, recall, f1, flags)
    return per_class


def _check_compatible(model: NaiveBayesModel, dataset: Dataset) -> None:
    if dataset.schema != model.schema:
        raise DataError("dataset schema does not match the model schema")


def evaluate(model: NaiveBayesModel, dataset: Dataset) -> EvaluationReport:
    """Predict every labeled instance (label masked) and tabulate the results."""
    if not dataset.instances:
        raise DataError("cannot evaluate on an empty dataset")
    _check_compatible(model, dataset)
    for inst in dataset.instances:
        if inst.label is None:
            raise DataError("evaluation dataset contains an unlabeled instance")
    matrix = _empty_matrix(model.schema.class_labels)
    hits = _fill_matrix(matrix, model, dataset.instances)
    return EvaluationReport(matrix, hits / len(dataset.instances), _derive_metrics(matrix))


def cross_validate(dataset: Dataset, k: int, seed: int,
                   config: TrainConfig = TrainConfig()) -> EvaluationReport:
    """Stratified k-fold CV: train on folds != i, evaluate on fold i, pool.

    A fold whose training complement lacks a class entirely is skipped and
    reported, as is a fold with no evaluation instances. Deterministic for
    a fixed (dataset order, k, seed).
    """
    assignment = stratified_folds(dataset, k, seed)
    labels = dataset.schema.class_labels
    matrix = _empty_matrix(labels)
    fold_accuracies = []
    skipped = []
    evaluated_any = False

    for fold in range(k):
        test = [inst for i, inst in enumerate(dataset.instances)
                if assignment.fold_of[i] == fold]
        train_rows = [inst for i, inst in enumerate(dataset.instances)
                      if assignment.fold_of[i] != fold]
        if not test:
            skipped.append(f"fold {fold}: no evaluation instances")
            continue
        trained_classes = {inst.label for inst in train_rows}
        missing = [c for c in labels if c not in trained_classes]
        if missing:
            skipped.append(f"fold {fold}: class {missing[0]!r} absent from the training split")
            continue
        model = train(Dataset(dataset.schema, train_rows), config)
        hits = _fill_matrix(matrix, model, test)
        fold_accuracies.append(hits / len(test))
        evaluated_any = True

    if not evaluated_any:
        raise DataError("every fold was skipped; cannot cross-validate")

    mean = math.fsum(fold_accuracies) / len(fold_accuracies)
    if len(fold_accuracies) > 1:
        std = math.sqrt(math.fsum((a - mean) ** 2 for a in fold_accuracies)
                        / (len(fold_accuracies) - 1))
    else:
        std = None
    return EvaluationReport(
        matrix=matrix,
        accuracy=matrix.trace / matrix.total,
        per_class=_derive_metrics(matrix),
        fold_accuracies=fold_accuracies,
        mean_accuracy=mean,
        std_accuracy=std,
        skipped_folds=skipped,
    )


def report_to_doc(report: EvaluationReport) -> dict:
    doc = {
        "labels": list(report.matrix.labels),
        "matrix": [list(row) for row in report.matrix.counts],
        "accuracy": report.accuracy,
        "n": report.matrix.total,
        "per_class": {
            label: {"precision": m.precision, "recall": m.recall,
                    "f1": m.f1, "flags": list(m.flags)}
            for label, m in report.per_class.items()
        },
    }
    if report.fold_accuracies is not None:
        doc["fold_accuracies"] = list(report.fold_accuracies)
        doc["mean_accuracy"] = report.mean_accuracy
        doc["std_accuracy"] = report.std_accuracy
        doc["skipped_folds"] = list(report.skipped_folds)
    return doc


def render_report(report: EvaluationReport) -> str:
    """Human-readable text table."""
    labels = report.matrix.labels
    width = max(len(label) for label in labels) + 2
    lines = [f"accuracy {report.accuracy:.3f}", ""]
    header = " " * width + "".join(f"{label:>{width}}" for label in labels)
    lines.append("confusion matrix (rows=true, cols=predicted)")
    lines.append(header)
    for label, row in zip(labels, report.matrix.counts):
        lines.append(f"{label:>{width}}" + "".join(f"{c:>{width}}" for c in row))
    lines.append("")
    lines.append(f"{'class':>{width}}{'precision':>11}{'recall':>9}{'f1':>8}")
    for label in labels:
        m = report.per_class[label]
        flag = "  [" + ", ".join(m.flags) + "]" if m.flags else ""
        lines.append(f"{label:>{width}}{m.precision:>11.4f}{m.recall:>9.4f}{m.f1:>8.4f}{flag}")
    if report.fold_accuracies is not None:
        lines.append("")
        folds = ", ".join(f"{a:.4f}" for a in report.fold_accuracies)
        lines.append(f"fold accuracies: {folds}")
        std = f"{report.std_accuracy:.4f}" if report.std_accuracy is not None else "n/a"
        lines.append(f"mean {report.mean_accuracy:.4f}  std {std}")
        for note in report.skipped_folds:
            lines.append(f"skipped: {note}")
    return "\n".join(lines)
