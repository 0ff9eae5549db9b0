#!/usr/bin/env python3
"""Independent brute-force reference for the naive Bayes pipeline.

Everything here is computed in linear space with exact rational arithmetic
(`fractions.Fraction`), with no shared code with the main package. Tests
import this module and compare the package's log-space results against it;
running it as a script prints the DS-6 golden values that are frozen into
the test suite.

Smoothing convention (must mirror the package, independently re-derived):
    P(v | c) = (count(v, c) + alpha) / (present(a, c) + alpha * V)
where present(a, c) counts class-c rows with a non-missing value for
attribute a, and V is the number of distinct values of a observed anywhere
in training. Missing evidence contributes no factor. Priors are unsmoothed
class frequencies.
"""

from __future__ import annotations

import math
from fractions import Fraction

MISSING = None

# DS-6: the shared six-row fixture. (skill, experience) -> performance.
DS6_CLASS_LABELS = ["good", "poor"]
DS6_ATTRIBUTES = ["skill", "experience"]
DS6_RECORDS = [
    ({"skill": "high", "experience": "senior"}, "good"),
    ({"skill": "high", "experience": "junior"}, "good"),
    ({"skill": "low", "experience": "senior"}, "good"),
    ({"skill": "low", "experience": "junior"}, "poor"),
    ({"skill": "low", "experience": "junior"}, "poor"),
    ({"skill": "high", "experience": "senior"}, "good"),
]


def ref_counts(records, class_labels, attributes):
    """Tally class counts, per-(attribute, class) value counts and vocabularies."""
    class_counts = {c: 0 for c in class_labels}
    value_counts = {a: {c: {} for c in class_labels} for a in attributes}
    vocab = {a: set() for a in attributes}
    for values, label in records:
        class_counts[label] += 1
        for a in attributes:
            v = values.get(a, MISSING)
            if v is MISSING:
                continue
            value_counts[a][label][v] = value_counts[a][label].get(v, 0) + 1
            vocab[a].add(v)
    return class_counts, value_counts, vocab


def ref_categorical_likelihood(value_counts, vocab, class_counts, attr, value, label, alpha):
    """Smoothed P(value | label) for one categorical attribute, as a Fraction."""
    per_class = value_counts[attr][label]
    count = per_class.get(value, 0)
    present = sum(per_class.values())
    v_size = len(vocab[attr])
    if v_size == 0:
        # Attribute never observed in training: uninformative, factor 1.
        return Fraction(1)
    denom = Fraction(present) + Fraction(alpha) * v_size
    if denom == 0:
        return Fraction(1)
    return (Fraction(count) + Fraction(alpha)) / denom


def ref_gaussian_params(records, class_labels, attr, variance_floor):
    """Per-class (mean, variance, count) for one numeric attribute, exact rationals."""
    params = {}
    for c in class_labels:
        xs = [
            Fraction(values[attr])
            for values, label in records
            if label == c and values.get(attr, MISSING) is not MISSING
        ]
        k = len(xs)
        mean = sum(xs) / k if k else Fraction(0)
        if k < 2:
            var = Fraction(variance_floor)
        else:
            var = sum((x - mean) ** 2 for x in xs) / (k - 1)
            var = max(var, Fraction(variance_floor))
        params[c] = (mean, var, k)
    return params


def ref_posterior(records, class_labels, attributes, query, alpha,
                  numeric=(), variance_floor=1e-9):
    """Posterior over class_labels for `query`, by direct normalized product.

    Purely linear-space: prior times the product of smoothed likelihoods
    (and Gaussian densities for numeric attributes), normalized at the end.
    All-categorical evidence stays exact (Fractions); a numeric factor
    switches the product to floats. Returns {label: Fraction|float}.
    """
    class_counts, value_counts, vocab = ref_counts(records, class_labels, attributes)
    n = sum(class_counts.values())
    gauss = {a: ref_gaussian_params(records, class_labels, a, variance_floor)
             for a in numeric}
    joints = {}
    for c in class_labels:
        joint = Fraction(class_counts[c], n)
        for a in attributes:
            v = query.get(a, MISSING)
            if v is MISSING:
                continue
            if a in numeric:
                mean, var, _ = gauss[a][c]
                mu, s2 = float(mean), float(var)
                density = math.exp(-((float(v) - mu) ** 2) / (2.0 * s2)) / math.sqrt(2.0 * math.pi * s2)
                joint = float(joint) * density
            else:
                joint = joint * ref_categorical_likelihood(
                    value_counts, vocab, class_counts, a, v, c, alpha)
        joints[c] = joint
    total = sum(joints.values())
    if total == 0:
        # Zero evidence probability under every class: fall back to priors.
        return {c: Fraction(class_counts[c], n) for c in class_labels}
    return {c: joints[c] / total for c in joints}


def ref_predict_label(records, class_labels, attributes, query, alpha, **kw):
    """Argmax of the reference posterior, ties broken by declared class order."""
    post = ref_posterior(records, class_labels, attributes, query, alpha, **kw)
    best = max(post[c] for c in class_labels)
    for c in class_labels:
        if post[c] == best:
            return c
    raise AssertionError("unreachable")


def ref_mutual_information(pairs):
    """I(A; C) in bits by direct summation over the empirical joint table.

    `pairs` is a list of (attribute_value, class_label) over rows where the
    attribute is non-missing. 0 * log(0) := 0.
    """
    n = len(pairs)
    joint, marg_a, marg_c = {}, {}, {}
    for a, c in pairs:
        joint[(a, c)] = joint.get((a, c), 0) + 1
        marg_a[a] = marg_a.get(a, 0) + 1
        marg_c[c] = marg_c.get(c, 0) + 1
    total = 0.0
    for (a, c), k in joint.items():
        p_ac = k / n
        p_a = marg_a[a] / n
        p_c = marg_c[c] / n
        total += p_ac * math.log2(p_ac / (p_a * p_c))
    return max(total, 0.0)


def _fmt(x):
    if isinstance(x, Fraction):
        return f"{x} = {float(x):.10f}"
    return f"{x:.10f}"


def main():
    labels, attrs, recs = DS6_CLASS_LABELS, DS6_ATTRIBUTES, DS6_RECORDS
    alpha = 1

    class_counts, value_counts, vocab = ref_counts(recs, labels, attrs)
    n = sum(class_counts.values())
    print("== DS-6 golden values (alpha=1) ==")
    for c in labels:
        print(f"prior({c}) = {_fmt(Fraction(class_counts[c], n))}")

    for a, v, c in [("skill", "high", "good"), ("skill", "high", "poor"),
                    ("skill", "medium", "good"), ("skill", "medium", "poor")]:
        p = ref_categorical_likelihood(value_counts, vocab, class_counts, a, v, c, alpha)
        print(f"P({a}={v} | {c}) = {_fmt(p)}")

    for query, tag in [
        ({"skill": "high", "experience": "junior"}, "predict(high, junior)"),
        ({"skill": "high"}, "predict(high, missing)"),
        ({"skill": "low", "experience": "junior"}, "predict(low, junior)"),
    ]:
        post = ref_posterior(recs, labels, attrs, query, alpha)
        rendered = ", ".join(f"{c}: {_fmt(post[c])}" for c in labels)
        print(f"{tag} -> {rendered}")

    print("-- single-evidence rules --")
    for a in attrs:
        for v in sorted(vocab[a]):
            post = ref_posterior(recs, labels, attrs, {a: v}, alpha)
            c = ref_predict_label(recs, labels, attrs, {a: v}, alpha)
            support = sum(value_counts[a][lab].get(v, 0) for lab in labels)
            print(f"IF {a}={v} THEN {c}  confidence={_fmt(post[c])}  support={support}")

    before = ref_posterior(recs, labels, attrs, {"skill": "low", "experience": "junior"}, alpha)
    after = ref_posterior(recs, labels, attrs, {"skill": "high", "experience": "junior"}, alpha)
    delta = float(after["good"]) - float(before["good"])
    print(f"what-if (low, junior) skill->high: delta(good) = {after['good']} - {before['good']} = {delta:.10f}")

    for a in attrs:
        pairs = [(values[a], label) for values, label in recs]
        print(f"I({a}; class) = {ref_mutual_information(pairs):.10f} bits")

    hits = sum(
        ref_predict_label(recs, labels, attrs, values, alpha) == label
        for values, label in recs
    )
    print(f"resubstitution accuracy = {hits}/{n}")


if __name__ == "__main__":
    main()
