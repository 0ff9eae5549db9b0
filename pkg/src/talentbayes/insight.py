"""Descriptive layer: classification rules, attribute influence, what-if.

A rule is the model's own single-evidence posterior: the confidence of
"IF skill=high THEN good" is exactly predict() on an instance where skill
is the only non-missing attribute. That keeps the descriptive output
faithful to the classifier instead of bolting on a separate rule miner.

Attribute influence is mutual information I(A; C) in bits, computed from
unsmoothed empirical frequencies over the rows where A is non-missing.
Numeric attributes are binned into (approximately) equal-frequency
quartile bins for ranking only; classification never bins.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .classifier import NaiveBayesModel, Prediction, predict, prediction_to_doc
from .data import MISSING, Dataset
from .errors import DataError
from .schema import CATEGORICAL, NUMERIC

INFLUENCE_BINS = 4


@dataclass(frozen=True)
class Rule:
    attribute: str
    value: str
    label: str
    confidence: float
    support: int


@dataclass(frozen=True)
class InfluenceRanking:
    """Attributes with their mutual information, descending; ties keep schema order."""

    entries: tuple


@dataclass(frozen=True)
class WhatIfResult:
    before: Prediction
    after: Prediction
    attribute: str
    old_value: object
    new_value: object
    delta: dict


def extract_rules(model: NaiveBayesModel) -> list[Rule]:
    """One rule per (categorical attribute, observed value), confidence-descending."""
    rules = []
    for attr_index, spec in enumerate(model.schema.attributes):
        if spec.kind != CATEGORICAL:
            continue
        for value_index, value in enumerate(model.observed_vocabulary[spec.name]):
            pred = predict(model, {spec.name: value})
            support = sum(per_value.get(value, 0)
                          for per_value in model.categorical_counts[spec.name].values())
            rules.append((
                (-pred.posterior[pred.label], attr_index, value_index),
                Rule(spec.name, value, pred.label, pred.posterior[pred.label], support),
            ))
    rules.sort(key=lambda pair: pair[0])
    return [rule for _, rule in rules]


def render_rule(rule: Rule) -> str:
    return (f"IF {rule.attribute}={rule.value} THEN {rule.label}  "
            f"(confidence={rule.confidence:.4f}, support={rule.support})")


def _mutual_information(joint: dict) -> float:
    """I(A; C) in bits from a joint count table {(a_value, label): count}."""
    n = sum(joint.values())
    if n == 0:
        return 0.0
    marg_a: dict = {}
    marg_c: dict = {}
    for (a, c), k in joint.items():
        marg_a[a] = marg_a.get(a, 0) + k
        marg_c[c] = marg_c.get(c, 0) + k
    # p(a,c) / (p(a) p(c)) == k n / (m_a m_c); the products stay exact ints,
    # and fsum keeps the total independent of table iteration order
    total = math.fsum(
        (k / n) * math.log2((k * n) / (marg_a[a] * marg_c[c]))
        for (a, c), k in joint.items() if k
    )
    return max(total, 0.0)  # clamp float noise; MI is non-negative


def _bin_edges(xs: list[float]) -> list[float]:
    xs = sorted(xs)
    n = len(xs)
    return sorted({xs[(j * n) // INFLUENCE_BINS] for j in range(1, INFLUENCE_BINS)})


def attribute_influence(dataset: Dataset) -> InfluenceRanking:
    """Rank attributes by mutual information with the class label."""
    if not dataset.instances:
        raise DataError("cannot rank attributes of an empty dataset")
    schema = dataset.schema
    scores = []
    for index, spec in enumerate(schema.attributes):
        rows = [(inst.values.get(spec.name, MISSING), inst.label)
                for inst in dataset.instances
                if inst.values.get(spec.name, MISSING) is not MISSING
                and inst.label is not None]
        if spec.kind == NUMERIC and rows:
            edges = _bin_edges([v for v, _ in rows])
            rows = [(bisect.bisect_right(edges, v), label) for v, label in rows]
        joint: dict = {}
        for key in rows:
            joint[key] = joint.get(key, 0) + 1
        scores.append(((-_mutual_information(joint), index), spec.name))
    scores.sort(key=lambda pair: pair[0])
    return InfluenceRanking(tuple((name, -key[0]) for key, name in scores))


def attribute_influence_from_model(model: NaiveBayesModel) -> InfluenceRanking:
    """Influence ranking recomputed from the model's stored count tables.

    The categorical count tables are exactly the empirical joint over
    non-missing rows, so this agrees with attribute_influence() on the
    training data. Numeric attributes are excluded (the model keeps only
    their moments, not a joint).
    """
    scores = []
    for index, spec in enumerate(model.schema.attributes):
        if spec.kind != CATEGORICAL:
            continue
        joint = {
            (value, label): count
            for label, per_value in model.categorical_counts[spec.name].items()
            for value, count in per_value.items()
        }
        scores.append(((-_mutual_information(joint), index), spec.name))
    scores.sort(key=lambda pair: pair[0])
    return InfluenceRanking(tuple((name, -key[0]) for key, name in scores))


def what_if(model: NaiveBayesModel, instance, attribute: str, new_value) -> WhatIfResult:
    """Re-predict with one attribute changed; delta is after minus before."""
    from .classifier import _instance_values

    values = dict(_instance_values(instance))
    spec = model.schema.attribute(attribute)
    if new_value is not MISSING:
        if spec.kind == CATEGORICAL and not isinstance(new_value, str):
            raise DataError(f"attribute {attribute!r} is categorical but got {new_value!r}")
        if spec.kind == NUMERIC and (isinstance(new_value, bool)
                                     or not isinstance(new_value, (int, float))
                                     or not math.isfinite(new_value)):
            raise DataError(f"attribute {attribute!r} is numeric but got {new_value!r}")
    before = predict(model, values)
    old_value = values.get(attribute, MISSING)
    values[attribute] = new_value
    after = predict(model, values)
    delta = {c: after.posterior[c] - before.posterior[c]
             for c in model.schema.class_labels}
    return WhatIfResult(before, after, attribute, old_value, new_value, delta)


def rules_to_doc(rules: list[Rule]) -> dict:
    return {"rules": [
        {"attribute": r.attribute, "value": r.value, "class": r.label,
         "confidence": r.confidence, "support": r.support}
        for r in rules
    ]}


def influence_to_doc(ranking: InfluenceRanking) -> dict:
    return {"influence": [
        {"attribute": name, "mutual_information": mi}
        for name, mi in ranking.entries
    ]}


def whatif_to_doc(result: WhatIfResult) -> dict:
    return {
        "before": prediction_to_doc(result.before),
        "after": prediction_to_doc(result.after),
        "attribute": result.attribute,
        "old_value": result.old_value,
        "new_value": result.new_value,
        "delta": dict(result.delta),
    }
