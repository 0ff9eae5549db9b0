"""Synthetic personnel data with known generative parameters.

The generator IS a naive Bayes model: class from the prior, then every
attribute independently from its class conditional. Convergence checks
against it therefore test the implementation, not the modelling
assumption. A `correlated` switch (robustness demos only) reuses one
uniform and one normal draw per row across attributes, which preserves
every marginal but breaks independence.

Draw order, for reproducibility across implementations (single SplitMix64
stream, see rng.py): per row, one uniform for the class; then per
attribute in schema order, one uniform (categorical, inverse CDF over
declared values) or one Box-Muller normal (numeric); then, only when
missing_rate > 0, one uniform per predictor cell for the missing mask.

Spec document (UTF-8 JSON):

    {
      "schema": {...},                       # as in schema.py, categorical
                                             # attributes need declared values
      "class_priors": {"good": 0.6, ...},
      "categorical": {"skill": {"good": {"high": 0.8, "low": 0.2}, ...}, ...},
      "gaussian": {"loc": {"good": {"mean": 40.0, "variance": 9.0}, ...}, ...},
      "missing_rate": 0.0,
      "seed": 42
    }
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .data import MISSING, CleaningReport, Dataset, Instance
from .errors import DataError
from .rng import SplitMix64
from .schema import CATEGORICAL, AttributeSchema, schema_from_doc

_SUM_TOL = 1e-12
_EXACT_CONFIG_CAP = 1_000_000


@dataclass(frozen=True)
class GenerativeSpec:
    schema: AttributeSchema
    class_priors: dict
    categorical: dict  # attribute -> class -> value -> probability
    gaussian: dict     # attribute -> class -> (mean, variance)
    missing_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        _check_distribution(self.class_priors, self.schema.class_labels, "class_priors")
        for spec in self.schema.attributes:
            if spec.kind == CATEGORICAL:
                if spec.declared_values is None:
                    raise DataError(
                        f"categorical attribute {spec.name!r} needs declared values to generate")
                per_class = self.categorical.get(spec.name)
                if per_class is None:
                    raise DataError(f"no conditional distributions for attribute {spec.name!r}")
                for label in self.schema.class_labels:
                    if label not in per_class:
                        raise DataError(f"attribute {spec.name!r} lacks a distribution for class {label!r}")
                    _check_distribution(per_class[label], spec.declared_values,
                                        f"{spec.name}|{label}")
            else:
                per_class = self.gaussian.get(spec.name)
                if per_class is None:
                    raise DataError(f"no gaussian parameters for attribute {spec.name!r}")
                for label in self.schema.class_labels:
                    try:
                        mean, variance = per_class[label]
                    except (KeyError, TypeError, ValueError):
                        raise DataError(
                            f"attribute {spec.name!r} lacks (mean, variance) for class {label!r}") from None
                    if not (variance > 0 and math.isfinite(variance) and math.isfinite(mean)):
                        raise DataError(f"attribute {spec.name!r}/{label!r}: variance must be positive")
        if not (0.0 <= self.missing_rate < 1.0):
            raise DataError("missing_rate must be in [0, 1)")


def _check_distribution(dist: dict, support, name: str) -> None:
    if set(dist) != set(support):
        raise DataError(f"{name}: distribution must cover exactly {sorted(support)}")
    if any(p < 0 for p in dist.values()):
        raise DataError(f"{name}: probabilities must be non-negative")
    if abs(math.fsum(dist.values()) - 1.0) > _SUM_TOL:
        raise DataError(f"{name}: probabilities must sum to 1")


def parse_generative_spec(text: str) -> GenerativeSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed generator spec: {exc}") from None
    if not isinstance(doc, dict):
        raise DataError("generator spec must be a JSON object")
    try:
        schema = schema_from_doc(doc["schema"])
        gaussian = {
            attr: {label: (float(entry["mean"]), float(entry["variance"]))
                   for label, entry in per_class.items()}
            for attr, per_class in doc.get("gaussian", {}).items()
        }
        return GenerativeSpec(
            schema=schema,
            class_priors=doc["class_priors"],
            categorical=doc.get("categorical", {}),
            gaussian=gaussian,
            missing_rate=float(doc.get("missing_rate", 0.0)),
            seed=int(doc.get("seed", 0)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"malformed generator spec: {exc!r}") from None


def _pick(support, dist: dict, u: float):
    acc = 0.0
    for value in support:
        acc += dist[value]
        if u < acc:
            return value
    return support[-1]  # guards float round-off at the top of the CDF


def generate(spec: GenerativeSpec, n: int, seed: int | None = None,
             correlated: bool = False) -> Dataset:
    """Sample n labeled rows; deterministic for a fixed (spec, n, seed)."""
    if n < 1:
        raise DataError("n must be at least 1")
    rng = SplitMix64(spec.seed if seed is None else seed)
    labels = spec.schema.class_labels
    instances = []
    missing_cells = 0
    for _ in range(n):
        label = _pick(labels, spec.class_priors, rng.uniform())
        if correlated:
            shared_u = rng.uniform()
            shared_z = rng.gauss()
        values = {}
        for attr in spec.schema.attributes:
            if attr.kind == CATEGORICAL:
                u = shared_u if correlated else rng.uniform()
                values[attr.name] = _pick(attr.declared_values,
                                          spec.categorical[attr.name][label], u)
            else:
                z = shared_z if correlated else rng.gauss()
                mean, variance = spec.gaussian[attr.name][label]
                values[attr.name] = mean + math.sqrt(variance) * z
        if spec.missing_rate > 0.0:
            for attr in spec.schema.attributes:
                if rng.uniform() < spec.missing_rate:
                    values[attr.name] = MISSING
                    missing_cells += 1
        instances.append(Instance(values, label))
    report = CleaningReport(rows_in=n, missing_cells=missing_cells)
    return Dataset(spec.schema, instances, report)


@dataclass(frozen=True)
class BayesAccuracy:
    estimate: float
    stderr: float
    method: str  # "exact" or "monte_carlo"


def _joint_configurations(spec: GenerativeSpec) -> int:
    total = 1
    for attr in spec.schema.attributes:
        total *= len(attr.declared_values)
    return total


def bayes_optimal_accuracy(spec: GenerativeSpec, n_mc: int, seed: int,
                           config_cap: int = _EXACT_CONFIG_CAP) -> BayesAccuracy:
    """Best achievable accuracy under the true generative distribution.

    All-categorical specs without missingness are enumerated exactly:
    sum over configurations x of max_c P(c) P(x | c). Anything else falls
    back to Monte Carlo: sample rows (missingness included), score whether
    the true-posterior argmax recovers the sampled class, and report the
    binomial standard error.
    """
    if n_mc < 1:
        raise DataError("n_mc must be at least 1")
    all_categorical = not spec.schema.numeric_attributes()
    if all_categorical and spec.missing_rate == 0.0 \
            and _joint_configurations(spec) <= config_cap:
        return _exact_accuracy(spec)
    return _monte_carlo_accuracy(spec, n_mc, seed)


def _exact_accuracy(spec: GenerativeSpec) -> BayesAccuracy:
    attrs = spec.schema.attributes
    labels = spec.schema.class_labels
    total = 0.0
    for combo in itertools.product(*(a.declared_values for a in attrs)):
        best = 0.0
        for label in labels:
            p = spec.class_priors[label]
            for attr, value in zip(attrs, combo):
                p *= spec.categorical[attr.name][label][value]
            best = max(best, p)
        total += best
    return BayesAccuracy(estimate=total, stderr=0.0, method="exact")


def _true_log_posterior_argmax(spec: GenerativeSpec, values: dict) -> str:
    best_label = spec.schema.class_labels[0]
    best_score = -math.inf
    for label in spec.schema.class_labels:
        score = math.log(spec.class_priors[label]) if spec.class_priors[label] > 0 else -math.inf
        for attr in spec.schema.attributes:
            v = values.get(attr.name, MISSING)
            if v is MISSING:
                continue
            if attr.kind == CATEGORICAL:
                p = spec.categorical[attr.name][label][v]
                score += math.log(p) if p > 0 else -math.inf
            else:
                mean, variance = spec.gaussian[attr.name][label]
                score += -0.5 * math.log(2.0 * math.pi * variance) \
                    - (v - mean) ** 2 / (2.0 * variance)
        if score > best_score:
            best_score = score
            best_label = label
    return best_label


def _monte_carlo_accuracy(spec: GenerativeSpec, n_mc: int, seed: int) -> BayesAccuracy:
    sample = generate(spec, n_mc, seed)
    hits = sum(
        _true_log_posterior_argmax(spec, inst.values) == inst.label
        for inst in sample.instances
    )
    estimate = hits / n_mc
    stderr = math.sqrt(estimate * (1.0 - estimate) / n_mc)
    return BayesAccuracy(estimate=estimate, stderr=stderr, method="monte_carlo")
