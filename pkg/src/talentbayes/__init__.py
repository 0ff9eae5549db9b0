"""talentbayes: naive Bayes decision support for software project staffing.

Train on historical personnel records, read the model back as
classification rules and attribute influence, explore what-if
perturbations, and rank candidate pools into recommended teams.
"""

from .classifier import (NaiveBayesModel, Prediction, TrainConfig,
                         likelihood_categorical, likelihood_gaussian, predict,
                         train)
from .data import (MISSING, Dataset, FoldAssignment, Instance, load_dataset,
                   stratified_folds)
from .errors import DataError, ModelFormatError, SchemaError, TalentBayesError
from .evaluation import EvaluationReport, cross_validate, evaluate
from .insight import (InfluenceRanking, Rule, WhatIfResult,
                      attribute_influence, extract_rules, what_if)
from .model_io import (deserialize_model, load_model, model_fingerprint,
                       save_model, serialize_model)
from .schema import AttributeSchema, AttributeSpec, parse_schema
from .staffing import (Candidate, TeamRecommendation, load_pool,
                       rank_candidates, recommend_team)
from .synthgen import GenerativeSpec, bayes_optimal_accuracy, generate

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema", "AttributeSpec", "Candidate", "DataError", "Dataset",
    "EvaluationReport", "FoldAssignment", "GenerativeSpec", "InfluenceRanking",
    "Instance", "MISSING", "ModelFormatError", "NaiveBayesModel", "Prediction",
    "Rule", "SchemaError", "TalentBayesError", "TeamRecommendation",
    "TrainConfig", "WhatIfResult", "attribute_influence",
    "bayes_optimal_accuracy", "cross_validate", "deserialize_model",
    "evaluate", "extract_rules", "generate", "likelihood_categorical",
    "likelihood_gaussian", "load_dataset", "load_model", "load_pool",
    "model_fingerprint", "parse_schema", "predict", "rank_candidates",
    "recommend_team", "save_model", "serialize_model", "stratified_folds",
    "train", "what_if",
]
