"""Shared generators for randomized tests (plain random.Random, independent
of the package's seeded generator)."""

from __future__ import annotations

import random

from talentbayes import AttributeSchema, AttributeSpec, Dataset, Instance


def random_categorical_dataset(rnd: random.Random, max_attrs: int = 4,
                               max_classes: int = 3, max_rows: int = 12,
                               missing_rate: float = 0.15) -> Dataset:
    """Small labeled dataset with every class present at least once."""
    n_classes = rnd.randint(2, max_classes)
    labels = tuple(f"c{i}" for i in range(n_classes))
    specs = tuple(
        AttributeSpec(f"a{i}", "categorical",
                      tuple(f"v{j}" for j in range(rnd.randint(2, 3))))
        for i in range(rnd.randint(1, max_attrs))
    )
    schema = AttributeSchema("cls", labels, specs)
    n_rows = rnd.randint(n_classes, max_rows)
    label_seq = list(labels) + [rnd.choice(labels) for _ in range(n_rows - n_classes)]
    rnd.shuffle(label_seq)
    instances = []
    for label in label_seq:
        values = {}
        for spec in specs:
            if rnd.random() < missing_rate:
                values[spec.name] = None
            else:
                values[spec.name] = rnd.choice(spec.declared_values)
        instances.append(Instance(values, label))
    return Dataset(schema, instances)


def random_query(rnd: random.Random, schema: AttributeSchema,
                 missing_rate: float = 0.3, unseen_rate: float = 0.15) -> dict:
    """Random instance values, sometimes missing, sometimes unseen."""
    values = {}
    for spec in schema.attributes:
        roll = rnd.random()
        if roll < missing_rate:
            values[spec.name] = None
        elif roll < missing_rate + unseen_rate:
            values[spec.name] = "unseen-value"
        else:
            values[spec.name] = rnd.choice(spec.declared_values)
    return values


def records_of(dataset: Dataset) -> list:
    """Dataset rows in the (values, label) shape the reference oracle takes."""
    return [(inst.values, inst.label) for inst in dataset.instances]
