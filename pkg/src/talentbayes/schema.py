"""Attribute schema: declares the class attribute, labels, and predictors.

The schema document is UTF-8 JSON:

    {
      "class_attribute": "performance",
      "class_labels": ["good", "average", "poor"],
      "attributes": [
        {"name": "skill", "kind": "categorical", "values": ["high", "low"]},
        {"name": "loc_per_day", "kind": "numeric"}
      ]
    }

Declared order matters: class_labels order is the prediction tie-break
order, and attribute order fixes rule/influence tie-breaks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SchemaError

CATEGORICAL = "categorical"
NUMERIC = "numeric"
KINDS = (CATEGORICAL, NUMERIC)


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: str
    declared_values: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.name or not isinstance(self.name, str):
            raise SchemaError("attribute name must be a non-empty string")
        if self.kind not in KINDS:
            raise SchemaError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if self.declared_values is not None:
            if self.kind != CATEGORICAL:
                raise SchemaError(f"attribute {self.name!r}: values only apply to categorical attributes")
            if len(self.declared_values) == 0:
                raise SchemaError(f"attribute {self.name!r}: declared values must be non-empty")
            if len(set(self.declared_values)) != len(self.declared_values):
                raise SchemaError(f"attribute {self.name!r}: duplicate declared value")


@dataclass(frozen=True)
class AttributeSchema:
    class_attribute: str
    class_labels: tuple[str, ...]
    attributes: tuple[AttributeSpec, ...]
    _by_name: dict = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        if not self.class_attribute:
            raise SchemaError("class_attribute must be a non-empty string")
        if len(self.class_labels) < 2:
            raise SchemaError("at least two class labels are required")
        if len(set(self.class_labels)) != len(self.class_labels):
            raise SchemaError("duplicate class label")
        names = [a.name for a in self.attributes]
        seen = set()
        for name in names:
            if name in seen:
                raise SchemaError(f"duplicate attribute {name!r}")
            seen.add(name)
        if self.class_attribute in seen:
            raise SchemaError(f"class attribute {self.class_attribute!r} must not be listed as a predictor")
        object.__setattr__(self, "_by_name", {a.name: a for a in self.attributes})

    def attribute(self, name: str) -> AttributeSpec:
        try:
            return self._by_name[name]
        except KeyError:
            raise SchemaError(f"unknown attribute {name!r}") from None

    def has_attribute(self, name: str) -> bool:
        return name in self._by_name

    @property
    def attribute_names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def categorical_attributes(self) -> list[AttributeSpec]:
        return [a for a in self.attributes if a.kind == CATEGORICAL]

    def numeric_attributes(self) -> list[AttributeSpec]:
        return [a for a in self.attributes if a.kind == NUMERIC]


def schema_from_doc(doc) -> AttributeSchema:
    """Build a schema from an already-parsed JSON object."""
    if not isinstance(doc, dict):
        raise SchemaError("schema document must be a JSON object")
    try:
        class_attribute = doc["class_attribute"]
        class_labels = doc["class_labels"]
        attributes = doc["attributes"]
    except KeyError as exc:
        raise SchemaError(f"schema document missing key {exc.args[0]!r}") from None
    if not isinstance(class_labels, list) or not all(isinstance(c, str) for c in class_labels):
        raise SchemaError("class_labels must be a list of strings")
    if not isinstance(attributes, list):
        raise SchemaError("attributes must be a list")
    specs = []
    for entry in attributes:
        if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
            raise SchemaError("each attribute needs at least 'name' and 'kind'")
        values = entry.get("values")
        if values is not None:
            if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
                raise SchemaError(f"attribute {entry['name']!r}: values must be a list of strings")
            values = tuple(values)
        specs.append(AttributeSpec(entry["name"], entry["kind"], values))
    return AttributeSchema(class_attribute, tuple(class_labels), tuple(specs))


def parse_schema(text: str) -> AttributeSchema:
    """Parse a UTF-8 JSON schema document; declared order is preserved."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed schema document: {exc}") from None
    return schema_from_doc(doc)


def schema_to_doc(schema: AttributeSchema) -> dict:
    """Schema as a plain JSON-ready object (inverse of schema_from_doc)."""
    attributes = []
    for a in schema.attributes:
        entry = {"name": a.name, "kind": a.kind}
        if a.declared_values is not None:
            entry["values"] = list(a.declared_values)
        attributes.append(entry)
    return {
        "class_attribute": schema.class_attribute,
        "class_labels": list(schema.class_labels),
        "attributes": attributes,
    }
