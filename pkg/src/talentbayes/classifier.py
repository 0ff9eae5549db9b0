"""Naive Bayes training and prediction.

Estimation conventions:
  - priors are unsmoothed class frequencies (every class must appear in
    training, so smoothing them buys nothing and keeps them interpretable)
  - categorical likelihoods are Laplace-smoothed:
        P(v | c) = (count(v, c) + alpha) / (present(a, c) + alpha * V)
    where present(a, c) counts class-c rows with a non-missing value for
    attribute a and V is the size of the attribute's observed vocabulary.
    A value never seen in training keeps count 0 and the same denominator.
  - numeric attributes get per-class Gaussians with unbiased (n-1)
    variance, floored at config.variance_floor; fewer than two samples
    forces the floor, and a class with no samples at all stores mean 0.0
    (a documented degenerate case).
  - a missing attribute contributes no likelihood factor at all, matching
    the training-side use of present counts in the denominator.

Scores accumulate in natural-log space and are normalized with
max-subtraction, so many-attribute instances cannot underflow. If every
class has zero joint probability (possible only with alpha = 0), the
posterior falls back to the priors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .data import MISSING, Dataset, Instance, validate_instance_values
from .errors import DataError
from .schema import CATEGORICAL, NUMERIC, AttributeSchema


@dataclass(frozen=True)
class TrainConfig:
    alpha: float = 1.0
    variance_floor: float = 1e-9

    def __post_init__(self):
        if not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise DataError("alpha must be a finite value >= 0")
        if not (self.variance_floor > 0.0 and math.isfinite(self.variance_floor)):
            raise DataError("variance_floor must be a finite value > 0")


@dataclass(frozen=True)
class GaussianParams:
    mean: float
    variance: float
    count: int


@dataclass
class NaiveBayesModel:
    """Trained model; immutable by convention and safe to share across threads.

    categorical_counts: attribute -> class -> value -> count
    observed_vocabulary: attribute -> lexicographically sorted value list
    gaussian_params: attribute -> class -> GaussianParams
    train_visits: records visited during the single training scan
    """

    schema: AttributeSchema
    class_counts: dict
    n: int
    categorical_counts: dict
    observed_vocabulary: dict
    gaussian_params: dict
    config: TrainConfig
    train_visits: int = 0
    present_counts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.present_counts:
            self.present_counts = {
                attr: {c: sum(per_value.values()) for c, per_value in per_class.items()}
                for attr, per_class in self.categorical_counts.items()
            }

    def prior(self, label: str) -> float:
        return self.class_counts[label] / self.n

    def predict(self, instance) -> "Prediction":
        return predict(self, instance)


@dataclass(frozen=True)
class Prediction:
    posterior: dict
    label: str
    log_scores: dict


def train(dataset: Dataset, config: TrainConfig = TrainConfig()) -> NaiveBayesModel:
    """Train on a labeled dataset in exactly one scan of its records.

    Numeric values are buffered per (attribute, class) during the scan;
    means and variances use math.fsum (exactly rounded sums), which makes
    the trained model invariant under any permutation of the rows.
    """
    schema = dataset.schema
    if not dataset.instances:
        raise DataError("cannot train on an empty dataset")

    class_counts = {c: 0 for c in schema.class_labels}
    cat_counts = {a.name: {c: {} for c in schema.class_labels}
                  for a in schema.categorical_attributes()}
    num_buffers = {a.name: {c: [] for c in schema.class_labels}
                   for a in schema.numeric_attributes()}

    visits = 0
    for inst in dataset.instances:
        visits += 1
        if inst.label is None:
            raise DataError("dataset contains an unlabeled instance")
        if inst.label not in class_counts:
            raise DataError(f"label {inst.label!r} is not a declared class")
        class_counts[inst.label] += 1
        for spec in schema.attributes:
            v = inst.values.get(spec.name, MISSING)
            if v is MISSING:
                continue
            if spec.kind == CATEGORICAL:
                per_value = cat_counts[spec.name][inst.label]
                per_value[v] = per_value.get(v, 0) + 1
            else:
                num_buffers[spec.name][inst.label].append(float(v))

    for label, count in class_counts.items():
        if count == 0:
            raise DataError(f"class {label!r} has no training instances")

    vocabulary = {
        attr: sorted({v for per_value in per_class.values() for v in per_value})
        for attr, per_class in cat_counts.items()
    }

    gaussians = {}
    for attr, per_class in num_buffers.items():
        gaussians[attr] = {}
        for label, xs in per_class.items():
            k = len(xs)
            mean = math.fsum(xs) / k if k else 0.0
            if k < 2:
                variance = config.variance_floor
            else:
                variance = max(config.variance_floor,
                               math.fsum((x - mean) ** 2 for x in xs) / (k - 1))
            gaussians[attr][label] = GaussianParams(mean, variance, k)

    return NaiveBayesModel(
        schema=schema,
        class_counts=class_counts,
        n=visits,
        categorical_counts=cat_counts,
        observed_vocabulary=vocabulary,
        gaussian_params=gaussians,
        config=config,
        train_visits=visits,
    )


def likelihood_categorical(model: NaiveBayesModel, attribute: str, value: str, label: str) -> float:
    """Smoothed P(value | label) for a categorical attribute.

    An attribute with an empty observed vocabulary (never seen in
    training, or alpha = 0 with no present values) is uninformative and
    returns 1.0 so it cancels across classes.
    """
    spec = model.schema.attribute(attribute)
    if spec.kind != CATEGORICAL:
        raise DataError(f"attribute {attribute!r} is not categorical")
    if label not in model.class_counts:
        raise DataError(f"unknown class label {label!r}")
    count = model.categorical_counts[attribute][label].get(value, 0)
    present = model.present_counts[attribute][label]
    v_size = len(model.observed_vocabulary[attribute])
    denom = present + model.config.alpha * v_size
    if denom == 0.0:
        return 1.0
    return (count + model.config.alpha) / denom


def likelihood_gaussian(model: NaiveBayesModel, attribute: str, x: float, label: str) -> float:
    """Normal density at x under the model's (mean, variance) for (attribute, label)."""
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise DataError(f"numeric value must be finite, got {x!r}")
    return math.exp(_log_gaussian(model, attribute, float(x), label))


def _log_gaussian(model: NaiveBayesModel, attribute: str, x: float, label: str) -> float:
    spec = model.schema.attribute(attribute)
    if spec.kind != NUMERIC:
        raise DataError(f"attribute {attribute!r} is not numeric")
    if label not in model.class_counts:
        raise DataError(f"unknown class label {label!r}")
    params = model.gaussian_params[attribute][label]
    return -0.5 * math.log(2.0 * math.pi * params.variance) \
        - (x - params.mean) ** 2 / (2.0 * params.variance)


def _instance_values(instance) -> dict:
    if isinstance(instance, Instance):
        return instance.values
    if isinstance(instance, dict):
        return instance
    raise DataError(f"expected an Instance or a value map, got {type(instance).__name__}")


def predict(model: NaiveBayesModel, instance) -> Prediction:
    """Posterior over class labels given the instance's non-missing values.

    log score(c) = log prior(c) + sum of log likelihoods; missing
    attributes are skipped. Ties in the argmax go to the earlier class in
    declared order.
    """
    values = _instance_values(instance)
    validate_instance_values(model.schema, values)

    log_scores = {}
    for label in model.schema.class_labels:
        score = math.log(model.prior(label))
        for spec in model.schema.attributes:
            v = values.get(spec.name, MISSING)
            if v is MISSING:
                continue
            if spec.kind == CATEGORICAL:
                p = likelihood_categorical(model, spec.name, v, label)
                score += math.log(p) if p > 0.0 else -math.inf
            else:
                score += _log_gaussian(model, spec.name, float(v), label)
        log_scores[label] = score

    best = max(log_scores.values())
    if best == -math.inf:
        # Evidence has zero probability under every class (alpha = 0 path):
        # fall back to the priors.
        posterior = {c: model.prior(c) for c in model.schema.class_labels}
    else:
        exps = {c: math.exp(s - best) for c, s in log_scores.items()}
        total = math.fsum(exps.values())
        posterior = {c: e / total for c, e in exps.items()}

    label = model.schema.class_labels[0]
    for c in model.schema.class_labels:
        if posterior[c] > posterior[label]:
            label = c
    return Prediction(posterior=posterior, label=label, log_scores=log_scores)


def prediction_to_doc(pred: Prediction) -> dict:
    """JSON-ready prediction document (-inf log scores become null)."""
    return {
        "posterior": dict(pred.posterior),
        "label": pred.label,
        "log_scores": {c: (s if math.isfinite(s) else None)
                       for c, s in pred.log_scores.items()},
    }
