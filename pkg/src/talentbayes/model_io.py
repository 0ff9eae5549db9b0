"""Canonical model persistence.

The model document is UTF-8 JSON with sorted keys and compact separators,
so equal models serialize to byte-equal documents. Counts, not derived
probabilities, are persisted; floats print as their shortest round-trip
decimal (Python's repr), which makes serialize -> deserialize -> predict
bit-identical to the original model.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from .classifier import GaussianParams, NaiveBayesModel, TrainConfig
from .errors import ModelFormatError, TalentBayesError
from .schema import schema_from_doc, schema_to_doc

MODEL_VERSION = 1


def canonical_json(doc) -> str:
    """Deterministic JSON: sorted keys, no whitespace, UTF-8, no NaN/inf."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def model_to_doc(model: NaiveBayesModel) -> dict:
    return {
        "version": MODEL_VERSION,
        "config": {"alpha": model.config.alpha,
                   "variance_floor": model.config.variance_floor},
        "schema": schema_to_doc(model.schema),
        "n": model.n,
        "class_counts": dict(model.class_counts),
        "categorical_counts": {
            attr: {label: dict(per_value) for label, per_value in per_class.items()}
            for attr, per_class in model.categorical_counts.items()
        },
        "gaussian_params": {
            attr: {label: {"mean": p.mean, "variance": p.variance, "count": p.count}
                   for label, p in per_class.items()}
            for attr, per_class in model.gaussian_params.items()
        },
        "vocabulary": {attr: list(values)
                       for attr, values in model.observed_vocabulary.items()},
    }


def serialize_model(model: NaiveBayesModel) -> str:
    return canonical_json(model_to_doc(model))


def model_fingerprint(model: NaiveBayesModel) -> str:
    return hashlib.sha256(serialize_model(model).encode("utf-8")).hexdigest()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ModelFormatError(f"invariant violation on load: {message}")


def deserialize_model(text: str) -> NaiveBayesModel:
    """Parse and validate a model document; raises ModelFormatError."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"malformed model document: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")
    version = doc.get("version")
    if version != MODEL_VERSION:
        raise ModelFormatError(f"unsupported model version {version!r}")
    try:
        schema = schema_from_doc(doc["schema"])
        config = TrainConfig(**doc["config"])
        n = doc["n"]
        class_counts = doc["class_counts"]
        cat_counts = doc["categorical_counts"]
        gauss_doc = doc["gaussian_params"]
        vocabulary = doc["vocabulary"]
    except (KeyError, TypeError, TalentBayesError) as exc:
        raise ModelFormatError(f"malformed model document: {exc!r}") from None

    _require(isinstance(n, int) and n > 0, "n must be a positive integer")
    _require(set(class_counts) == set(schema.class_labels), "class_counts must cover the class labels")
    _require(all(isinstance(c, int) and c >= 0 for c in class_counts.values()),
             "class counts must be non-negative integers")
    _require(sum(class_counts.values()) == n, "class counts must sum to n")

    cat_names = {a.name for a in schema.categorical_attributes()}
    num_names = {a.name for a in schema.numeric_attributes()}
    _require(set(cat_counts) == cat_names, "categorical_counts must cover the categorical attributes")
    _require(set(vocabulary) == cat_names, "vocabulary must cover the categorical attributes")
    _require(set(gauss_doc) == num_names, "gaussian_params must cover the numeric attributes")

    for attr, per_class in cat_counts.items():
        _require(set(per_class) == set(schema.class_labels),
                 f"counts for {attr!r} must cover the class labels")
        vocab = set(vocabulary[attr])
        for label, per_value in per_class.items():
            _require(all(isinstance(k, int) and k >= 0 for k in per_value.values()),
                     f"counts for {attr!r}/{label!r} must be non-negative integers")
            _require(sum(per_value.values()) <= class_counts[label],
                     f"counts for {attr!r}/{label!r} exceed the class count")
            _require(set(per_value) <= vocab,
                     f"vocabulary for {attr!r} must cover every counted value")

    gaussians = {}
    for attr, per_class in gauss_doc.items():
        _require(set(per_class) == set(schema.class_labels),
                 f"gaussian params for {attr!r} must cover the class labels")
        gaussians[attr] = {}
        for label, entry in per_class.items():
            try:
                params = GaussianParams(float(entry["mean"]), float(entry["variance"]),
                                        int(entry["count"]))
            except (KeyError, TypeError, ValueError):
                raise ModelFormatError(
                    f"malformed gaussian params for {attr!r}/{label!r}") from None
            _require(params.variance >= config.variance_floor,
                     f"variance for {attr!r}/{label!r} is below the floor")
            _require(0 <= params.count <= class_counts[label],
                     f"sample count for {attr!r}/{label!r} exceeds the class count")
            gaussians[attr][label] = params

    return NaiveBayesModel(
        schema=schema,
        class_counts=class_counts,
        n=n,
        categorical_counts=cat_counts,
        observed_vocabulary={attr: list(v) for attr, v in vocabulary.items()},
        gaussian_params=gaussians,
        config=config,
        train_visits=n,
    )


def load_model(path: str) -> NaiveBayesModel:
    with open(path, encoding="utf-8") as handle:
        return deserialize_model(handle.read())


def save_model(model: NaiveBayesModel, path: str) -> None:
    write_atomic(path, serialize_model(model) + "\n")
