import json
import math
from pathlib import Path

import pytest

from talentbayes import DataError, parse_schema, train
from talentbayes.data import MISSING, dataset_to_csv
from talentbayes.synthgen import (BayesAccuracy, GenerativeSpec,
                                  bayes_optimal_accuracy, generate,
                                  parse_generative_spec)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

BINARY_SCHEMA = parse_schema(json.dumps({
    "class_attribute": "c", "class_labels": ["c1", "c2"],
    "attributes": [{"name": "a", "kind": "categorical", "values": ["v1", "v2"]}],
}))


def binary_spec(p1=0.9, p2=0.1, priors=(0.5, 0.5)):
    return GenerativeSpec(
        schema=BINARY_SCHEMA,
        class_priors={"c1": priors[0], "c2": priors[1]},
        categorical={"a": {"c1": {"v1": p1, "v2": 1 - p1},
                           "c2": {"v1": p2, "v2": 1 - p2}}},
        gaussian={},
    )


def test_class_counts_in_binomial_band():
    ds = generate(binary_spec(), 10_000, seed=42)
    counts = {"c1": 0, "c2": 0}
    for inst in ds.instances:
        counts[inst.label] += 1
    # 10,000 * 0.5 +- 3 * sqrt(10,000 * 0.25) = 5,000 +- 150
    assert 4_850 <= counts["c1"] <= 5_150
    assert counts["c1"] + counts["c2"] == 10_000


def test_missing_rate_zero_means_no_missing():
    ds = generate(binary_spec(), 2_000, seed=1)
    assert ds.cleaning_report.missing_cells == 0
    assert all(inst.values["a"] is not MISSING for inst in ds.instances)


def test_missing_rate_is_respected():
    spec = GenerativeSpec(
        schema=BINARY_SCHEMA,
        class_priors={"c1": 0.5, "c2": 0.5},
        categorical={"a": {"c1": {"v1": 0.9, "v2": 0.1},
                           "c2": {"v1": 0.1, "v2": 0.9}}},
        gaussian={},
        missing_rate=0.25,
    )
    ds = generate(spec, 20_000, seed=7)
    rate = ds.cleaning_report.missing_cells / 20_000
    assert rate == pytest.approx(0.25, abs=0.02)


def test_same_seed_gives_byte_identical_csv():
    spec = parse_generative_spec((FIXTURES / "demo.generator.json").read_text())
    a = dataset_to_csv(generate(spec, 500, seed=99))
    b = dataset_to_csv(generate(spec, 500, seed=99))
    assert a == b
    c = dataset_to_csv(generate(spec, 500, seed=100))
    assert c != a


def test_default_seed_comes_from_the_spec():
    spec = binary_spec()
    assert dataset_to_csv(generate(spec, 50)) == dataset_to_csv(generate(spec, 50, seed=0))


def test_bayes_optimal_exact_analytic():
    result = bayes_optimal_accuracy(binary_spec(0.9, 0.1), n_mc=1, seed=0)
    assert result.method == "exact"
    assert result.estimate == 0.9  # 0.5*0.9 + 0.5*0.9
    assert result.stderr == 0.0


def test_bayes_optimal_indistinguishable_classes_is_max_prior():
    result = bayes_optimal_accuracy(binary_spec(0.5, 0.5, priors=(0.7, 0.3)), n_mc=1, seed=0)
    assert result.estimate == pytest.approx(0.7, abs=1e-12)


def test_bayes_optimal_separable_classes_is_one():
    result = bayes_optimal_accuracy(binary_spec(1.0, 0.0), n_mc=1, seed=0)
    assert result.estimate == pytest.approx(1.0, abs=1e-12)


def test_monte_carlo_agrees_with_exact():
    spec = binary_spec(0.8, 0.25)
    exact = bayes_optimal_accuracy(spec, n_mc=1, seed=0)
    mc = bayes_optimal_accuracy(spec, n_mc=60_000, seed=11, config_cap=0)
    assert mc.method == "monte_carlo"
    assert mc.stderr > 0.0
    assert abs(mc.estimate - exact.estimate) <= 4 * mc.stderr + 1e-9


def test_learned_parameters_recover_truth():
    spec = parse_generative_spec((FIXTURES / "demo.generator.json").read_text())
    spec = GenerativeSpec(schema=spec.schema, class_priors=spec.class_priors,
                          categorical=spec.categorical, gaussian=spec.gaussian,
                          missing_rate=0.0, seed=spec.seed)
    ds = generate(spec, 20_000, seed=5)
    model = train(ds)
    from talentbayes import likelihood_categorical
    for attr, per_class in spec.categorical.items():
        for label, dist in per_class.items():
            for value, p_true in dist.items():
                learned = likelihood_categorical(model, attr, value, label)
                assert learned == pytest.approx(p_true, abs=0.035)
    for attr, per_class in spec.gaussian.items():
        for label, (mean, variance) in per_class.items():
            params = model.gaussian_params[attr][label]
            sigma = math.sqrt(variance)
            assert abs(params.mean - mean) <= 0.1 * sigma
            assert params.variance == pytest.approx(variance, rel=0.15)


def test_fresh_sample_accuracy_tracks_bayes_optimal():
    spec = binary_spec(0.85, 0.2, priors=(0.6, 0.4))
    model = train(generate(spec, 20_000, seed=21))
    fresh = generate(spec, 10_000, seed=22)
    from talentbayes import evaluate
    accuracy = evaluate(model, fresh).accuracy
    optimum = bayes_optimal_accuracy(spec, n_mc=1, seed=0)
    assert optimum.method == "exact"
    assert abs(accuracy - optimum.estimate) <= 0.02


def test_gaussian_generation_moments():
    schema = parse_schema(json.dumps({
        "class_attribute": "c", "class_labels": ["a", "b"],
        "attributes": [{"name": "x", "kind": "numeric"}],
    }))
    spec = GenerativeSpec(
        schema=schema,
        class_priors={"a": 0.5, "b": 0.5},
        categorical={},
        gaussian={"x": {"a": (10.0, 4.0), "b": (-5.0, 1.0)}},
    )
    ds = generate(spec, 30_000, seed=3)
    xs = [inst.values["x"] for inst in ds.instances if inst.label == "a"]
    mean = math.fsum(xs) / len(xs)
    var = math.fsum((x - mean) ** 2 for x in xs) / (len(xs) - 1)
    assert mean == pytest.approx(10.0, abs=0.06)
    assert var == pytest.approx(4.0, rel=0.05)


def test_correlated_mode_preserves_marginals_but_not_independence():
    schema = parse_schema(json.dumps({
        "class_attribute": "c", "class_labels": ["a", "b"],
        "attributes": [
            {"name": "f0", "kind": "categorical", "values": ["u", "v"]},
            {"name": "f1", "kind": "categorical", "values": ["u", "v"]},
        ],
    }))
    spec = GenerativeSpec(
        schema=schema,
        class_priors={"a": 0.5, "b": 0.5},
        categorical={
            "f0": {"a": {"u": 0.7, "v": 0.3}, "b": {"u": 0.4, "v": 0.6}},
            "f1": {"a": {"u": 0.7, "v": 0.3}, "b": {"u": 0.4, "v": 0.6}},
        },
        gaussian={},
    )
    ds = generate(spec, 20_000, seed=8, correlated=True)
    rows_a = [inst for inst in ds.instances if inst.label == "a"]
    share_u = sum(1 for inst in rows_a if inst.values["f0"] == "u") / len(rows_a)
    assert share_u == pytest.approx(0.7, abs=0.02)  # marginal intact
    # identical conditionals + shared uniform draw -> attributes move together
    agree = sum(1 for inst in rows_a if inst.values["f0"] == inst.values["f1"])
    assert agree == len(rows_a)


def test_generate_validates_inputs():
    with pytest.raises(DataError, match="n must be at least 1"):
        generate(binary_spec(), 0, seed=0)
    with pytest.raises(DataError, match="n_mc"):
        bayes_optimal_accuracy(binary_spec(), 0, seed=0)


@pytest.mark.parametrize("build, pattern", [
    (lambda: GenerativeSpec(BINARY_SCHEMA, {"c1": 0.6, "c2": 0.6},
                            {"a": {"c1": {"v1": 1.0, "v2": 0.0},
                                   "c2": {"v1": 1.0, "v2": 0.0}}}, {}),
     "sum to 1"),
    (lambda: GenerativeSpec(BINARY_SCHEMA, {"c1": 0.5, "c2": 0.5},
                            {"a": {"c1": {"v1": 1.0}}}, {}),
     "cover exactly"),
    (lambda: GenerativeSpec(BINARY_SCHEMA, {"c1": 0.5, "c2": 0.5}, {}, {}),
     "no conditional distributions"),
    (lambda: GenerativeSpec(BINARY_SCHEMA, {"c1": 0.5, "c2": 0.5},
                            {"a": {"c1": {"v1": 1.0, "v2": 0.0},
                                   "c2": {"v1": 1.0, "v2": 0.0}}}, {},
                            missing_rate=1.0),
     "missing_rate"),
])
def test_invalid_specs_rejected(build, pattern):
    with pytest.raises(DataError, match=pattern):
        build()


def test_gaussian_spec_needs_positive_variance():
    schema = parse_schema(json.dumps({
        "class_attribute": "c", "class_labels": ["a", "b"],
        "attributes": [{"name": "x", "kind": "numeric"}],
    }))
    with pytest.raises(DataError, match="variance must be positive"):
        GenerativeSpec(schema, {"a": 0.5, "b": 0.5}, {},
                       {"x": {"a": (0.0, 0.0), "b": (0.0, 1.0)}})


def test_parse_generative_spec_errors():
    with pytest.raises(DataError, match="malformed generator spec"):
        parse_generative_spec("{oops")
    with pytest.raises(DataError, match="malformed generator spec"):
        parse_generative_spec(json.dumps({"schema": {
            "class_attribute": "c", "class_labels": ["a", "b"], "attributes": []}}))
