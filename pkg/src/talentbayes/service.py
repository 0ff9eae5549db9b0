"""Read-only HTTP facade over a trained model.

The model is loaded once at startup and never mutated, so any number of
concurrent requests can share it; replacing it means restarting the
process (a wholesale swap). Every response echoes the model fingerprint,
and predict/whatif/recommend responses are the library documents
byte-for-byte (the handlers call straight into the owning modules and
serialize with the same canonical JSON).

Error contract: 400 `malformed_body` / `missing_field` / `unknown_attribute`
/ `invalid_value` for bodies that don't parse or don't fit the schema;
422 `unknown_class` / `duplicate_id` / `invalid_team_size` for semantic
violations; 404 `unknown_route`; 500 `internal_error` only for invariant
breaches.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .classifier import NaiveBayesModel, predict, prediction_to_doc
from .data import MISSING
from .errors import DataError, TalentBayesError
from .insight import (attribute_influence_from_model, extract_rules,
                      influence_to_doc, rules_to_doc, what_if, whatif_to_doc)
from .model_io import canonical_json, model_fingerprint
from .schema import CATEGORICAL, schema_to_doc
from .staffing import Candidate, recommend_team, team_to_doc

API_PREFIX = "/api/v1"


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _json_response(doc: dict, status: int = 200) -> Response:
    return Response(content=canonical_json(doc), status_code=status,
                    media_type="application/json")


async def _read_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise ApiError(400, "malformed_body", "request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise ApiError(400, "malformed_body", "request body must be a JSON object")
    return body


def _require_field(body: dict, name: str):
    if name not in body:
        raise ApiError(400, "missing_field", f"missing required field {name!r}")
    return body[name]


def _coerce_values(model: NaiveBayesModel, raw) -> dict:
    if not isinstance(raw, dict):
        raise ApiError(400, "malformed_body", "'values' must be an object")
    values = {}
    for name, value in raw.items():
        if not model.schema.has_attribute(name):
            raise ApiError(400, "unknown_attribute", f"unknown attribute {name!r}")
        if value is None:
            values[name] = MISSING
            continue
        kind = model.schema.attribute(name).kind
        if kind == CATEGORICAL:
            if not isinstance(value, str):
                raise ApiError(400, "invalid_value",
                               f"attribute {name!r} is categorical but got {value!r}")
        else:
            if isinstance(value, bool) or not isinstance(value, (int, float)) \
                    or not math.isfinite(value):
                raise ApiError(400, "invalid_value",
                               f"attribute {name!r} is numeric but got {value!r}")
            value = float(value)
        values[name] = value
    return values


def create_app(model: NaiveBayesModel) -> FastAPI:
    app = FastAPI(title="talentbayes", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    fingerprint = model_fingerprint(model)

    def stamped(doc: dict, status: int = 200) -> Response:
        return _json_response({**doc, "model_fingerprint": fingerprint}, status)

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return stamped({"error": {"code": exc.code, "message": exc.message}}, exc.status)

    @app.exception_handler(TalentBayesError)
    async def handle_domain_error(request: Request, exc: TalentBayesError):
        return stamped({"error": {"code": "validation_error", "message": str(exc)}}, 400)

    @app.exception_handler(Exception)
    async def handle_internal_error(request: Request, exc: Exception):
        return stamped({"error": {"code": "internal_error",
                                  "message": f"{type(exc).__name__}: {exc}"}}, 500)

    @app.get(API_PREFIX + "/health")
    async def health():
        return stamped({"status": "ok"})

    @app.get(API_PREFIX + "/model")
    async def model_summary():
        return stamped({
            "schema": schema_to_doc(model.schema),
            "priors": {c: model.prior(c) for c in model.schema.class_labels},
            "n": model.n,
            "alpha": model.config.alpha,
            "vocabulary": {attr: list(values)
                           for attr, values in model.observed_vocabulary.items()},
        })

    @app.get(API_PREFIX + "/rules")
    async def rules():
        return stamped(rules_to_doc(extract_rules(model)))

    @app.get(API_PREFIX + "/influence")
    async def influence():
        # From the model's count tables; numeric attributes are excluded
        # because the model persists only their moments.
        return stamped(influence_to_doc(attribute_influence_from_model(model)))

    @app.post(API_PREFIX + "/predict")
    async def predict_route(request: Request):
        body = await _read_body(request)
        values = _coerce_values(model, _require_field(body, "values"))
        return stamped(prediction_to_doc(predict(model, values)))

    @app.post(API_PREFIX + "/whatif")
    async def whatif_route(request: Request):
        body = await _read_body(request)
        values = _coerce_values(model, _require_field(body, "values"))
        attribute = _require_field(body, "attribute")
        if not isinstance(attribute, str) or not model.schema.has_attribute(attribute):
            raise ApiError(400, "unknown_attribute", f"unknown attribute {attribute!r}")
        new_value = _coerce_values(model, {attribute: body.get("new_value")})[attribute]
        try:
            result = what_if(model, values, attribute, new_value)
        except DataError as exc:
            raise ApiError(400, "invalid_value", str(exc)) from None
        return stamped(whatif_to_doc(result))

    @app.post(API_PREFIX + "/recommend")
    async def recommend_route(request: Request):
        body = await _read_body(request)
        raw_pool = _require_field(body, "pool")
        if not isinstance(raw_pool, list) or not raw_pool:
            raise ApiError(400, "malformed_body", "'pool' must be a non-empty array")
        pool = []
        seen = set()
        for entry in raw_pool:
            if not isinstance(entry, dict) or not isinstance(entry.get("id"), str) \
                    or not entry["id"]:
                raise ApiError(400, "malformed_body",
                               "each pool entry needs a non-empty string 'id' and 'values'")
            if entry["id"] in seen:
                raise ApiError(422, "duplicate_id", f"duplicate candidate id {entry['id']!r}")
            seen.add(entry["id"])
            pool.append(Candidate(entry["id"], _coerce_values(model, entry.get("values", {}))))
        team_size = _require_field(body, "team_size")
        if not isinstance(team_size, int) or isinstance(team_size, bool) or team_size < 1:
            raise ApiError(422, "invalid_team_size", "team_size must be an integer >= 1")
        target = body.get("target_class")
        if target is not None and target not in model.schema.class_labels:
            raise ApiError(422, "unknown_class", f"unknown target class {target!r}")
        threshold = body.get("threshold")
        if threshold is not None:
            if isinstance(threshold, bool) or not isinstance(threshold, (int, float)) \
                    or not math.isfinite(threshold):
                raise ApiError(400, "invalid_value", "threshold must be a finite number")
            threshold = float(threshold)
        team = recommend_team(model, pool, team_size, target, threshold)
        return stamped(team_to_doc(team))

    @app.api_route("/{path:path}", methods=["GET", "POST", "PUT", "DELETE"])
    async def fallback(path: str):
        return stamped({"error": {"code": "unknown_route",
                                  "message": f"no such endpoint: /{path}"}}, 404)

    return app


def run_server(model: NaiveBayesModel, port: int) -> None:
    import uvicorn

    uvicorn.run(create_app(model), host="127.0.0.1", port=port, log_level="warning")
