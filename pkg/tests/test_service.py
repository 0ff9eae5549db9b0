import json

import pytest
from fastapi.testclient import TestClient

from talentbayes import model_fingerprint, predict
from talentbayes.classifier import prediction_to_doc
from talentbayes.insight import (attribute_influence_from_model, extract_rules,
                                 influence_to_doc, rules_to_doc, what_if,
                                 whatif_to_doc)
from talentbayes.model_io import canonical_json
from talentbayes.service import create_app
from talentbayes.staffing import Candidate, recommend_team, team_to_doc


@pytest.fixture(scope="module")
def client(ds6_model):
    with TestClient(create_app(ds6_model), raise_server_exceptions=False) as c:
        yield c


@pytest.fixture(scope="module")
def fingerprint(ds6_model):
    return model_fingerprint(ds6_model)


def body_without_fingerprint(response):
    doc = json.loads(response.content)
    doc.pop("model_fingerprint")
    return canonical_json(doc)


def test_health(client, fingerprint):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    doc = response.json()
    assert doc["status"] == "ok"
    assert doc["model_fingerprint"] == fingerprint


def test_model_summary(client, ds6_model):
    doc = client.get("/api/v1/model").json()
    assert doc["schema"]["class_labels"] == ["good", "poor"]
    assert doc["priors"]["good"] == pytest.approx(2 / 3)
    assert doc["n"] == 6
    assert doc["vocabulary"]["skill"] == ["high", "low"]


def test_predict_matches_library_bytes(client, ds6_model):
    response = client.post("/api/v1/predict",
                           json={"values": {"skill": "high", "experience": "junior"}})
    assert response.status_code == 200
    assert response.headers["content-type"] == "application/json"
    expected = prediction_to_doc(predict(ds6_model, {"skill": "high", "experience": "junior"}))
    assert body_without_fingerprint(response) == canonical_json(expected)
    assert response.json()["posterior"]["good"] == pytest.approx(0.7033, abs=1e-4)


def test_whatif_matches_library_bytes(client, ds6_model):
    payload = {"values": {"skill": "low", "experience": "junior"},
               "attribute": "skill", "new_value": "high"}
    response = client.post("/api/v1/whatif", json=payload)
    assert response.status_code == 200
    expected = whatif_to_doc(what_if(ds6_model, {"skill": "low", "experience": "junior"},
                                     "skill", "high"))
    assert body_without_fingerprint(response) == canonical_json(expected)


def test_recommend_matches_library_bytes(client, ds6_model):
    payload = {"pool": [{"id": "P1", "values": {"skill": "high", "experience": "junior"}},
                        {"id": "P2", "values": {"skill": "low", "experience": "junior"}}],
               "team_size": 1}
    response = client.post("/api/v1/recommend", json=payload)
    assert response.status_code == 200
    pool = [Candidate("P1", {"skill": "high", "experience": "junior"}),
            Candidate("P2", {"skill": "low", "experience": "junior"})]
    expected = team_to_doc(recommend_team(ds6_model, pool, 1))
    assert body_without_fingerprint(response) == canonical_json(expected)


def test_rules_and_influence(client, ds6_model):
    rules = client.get("/api/v1/rules")
    assert body_without_fingerprint(rules) == canonical_json(rules_to_doc(extract_rules(ds6_model)))
    influence = client.get("/api/v1/influence")
    assert body_without_fingerprint(influence) == canonical_json(
        influence_to_doc(attribute_influence_from_model(ds6_model)))


def test_unknown_attribute_is_400(client):
    response = client.post("/api/v1/predict", json={"values": {"charisma": "high"}})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "unknown_attribute"


def test_malformed_body_is_400(client):
    response = client.post("/api/v1/predict", content=b"{not json",
                           headers={"content-type": "application/json"})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "malformed_body"

    response = client.post("/api/v1/predict", json=[1, 2, 3])
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "malformed_body"


def test_missing_field_is_400(client):
    response = client.post("/api/v1/predict", json={})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "missing_field"


def test_invalid_value_is_400(client):
    response = client.post("/api/v1/predict", json={"values": {"skill": 42}})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "invalid_value"


def test_unknown_class_is_422(client):
    payload = {"pool": [{"id": "P1", "values": {}}], "team_size": 1,
               "target_class": "stellar"}
    response = client.post("/api/v1/recommend", json=payload)
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "unknown_class"


def test_duplicate_ids_is_422(client):
    payload = {"pool": [{"id": "P1", "values": {}}, {"id": "P1", "values": {}}],
               "team_size": 1}
    response = client.post("/api/v1/recommend", json=payload)
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "duplicate_id"


def test_bad_team_size_is_422(client):
    payload = {"pool": [{"id": "P1", "values": {}}], "team_size": 0}
    response = client.post("/api/v1/recommend", json=payload)
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "invalid_team_size"


def test_unknown_route_is_404(client):
    response = client.get("/api/v1/nothing-here")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "unknown_route"


def test_replay_is_byte_identical(client):
    payload = {"values": {"skill": "high", "experience": "junior"}}
    first = client.post("/api/v1/predict", json=payload)
    second = client.post("/api/v1/predict", json=payload)
    assert first.content == second.content


def test_every_response_carries_the_fingerprint(client, fingerprint):
    probes = [
        client.get("/api/v1/health"),
        client.get("/api/v1/model"),
        client.get("/api/v1/rules"),
        client.get("/api/v1/influence"),
        client.post("/api/v1/predict", json={"values": {}}),
        client.post("/api/v1/predict", json={"values": {"charisma": "x"}}),
        client.get("/api/v1/nowhere"),
    ]
    for response in probes:
        assert response.json()["model_fingerprint"] == fingerprint


def test_internal_error_is_500(ds6_model, monkeypatch):
    import talentbayes.service as service_module

    monkeypatch.setattr(service_module, "extract_rules",
                        lambda model: (_ for _ in ()).throw(RuntimeError("boom")))
    with TestClient(create_app(ds6_model), raise_server_exceptions=False) as c:
        response = c.get("/api/v1/rules")
    assert response.status_code == 500
    assert response.json()["error"]["code"] == "internal_error"
