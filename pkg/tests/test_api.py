import pytest
from fastapi.testclient import TestClient
from app.main import app

from tests.conftest import THREE_STATE, TWO_STATE

client = TestClient(app)

TWO_STATE_CHAIN = {"states": ["state0", "state1"], "P": TWO_STATE, "U": ["state0"]}
THREE_STATE_CHAIN = {"P": THREE_STATE, "U": [0, 2]}


def test_dist_endpoint():
    """
    Test that the dist endpoint returns the dp table wrapped in APIResponse.
    """
    response = client.post("/api/dist", params={"n": 2}, json=TWO_STATE_CHAIN)
    assert response.status_code == 200
    resp_data = response.json()
    assert resp_data["success"]
    assert resp_data["data"]["route"] == "dp"
    assert resp_data["data"]["table"]["state0"] == pytest.approx([0.12, 0.24, 0.64])


def test_dist_missing_horizon():
    """
    Test that omitting the horizon is a request validation error.
    """
    response = client.post("/api/dist", json=TWO_STATE_CHAIN)
    assert response.status_code == 422
    assert "detail" in response.json()


def test_dist_invalid_matrix():
    """
    Test that a row not summing to 1 is rejected with 422 and an error envelope.
    """
    payload = {"P": [[0.8, 0.2], [0.4, 0.5]], "U": [0]}
    response = client.post("/api/dist", params={"n": 2}, json=payload)
    assert response.status_code == 422
    resp_data = response.json()
    assert not resp_data["success"]
    assert "RowSumOutOfToleranceError" in resp_data["errors"]


def test_closed_route_on_three_states():
    """
    Test that a route that cannot serve the chain answers 409.
    """
    response = client.post("/api/dist", params={"n": 3, "route": "closed"}, json=THREE_STATE_CHAIN)
    assert response.status_code == 409
    resp_data = response.json()
    assert not resp_data["success"]
    assert "2-state" in resp_data["errorMessage"]


def test_mean_endpoint():
    """
    Test that the mean endpoint returns e(n) and Var(N_n).
    """
    response = client.post("/api/mean", params={"n": 1}, json=TWO_STATE_CHAIN)
    resp_data = response.json()
    assert resp_data["success"]
    assert resp_data["data"]["mean"] == pytest.approx({"state0": 0.8, "state1": 0.4})
    assert resp_data["data"]["variance"] == pytest.approx({"state0": 0.16, "state1": 0.24})


def test_compare_endpoint():
    """
    Test that dp, gf and vw agree on a three-state chain.
    """
    response = client.post("/api/compare", params={"n": 15, "routes": "dp,gf,vw"}, json=THREE_STATE_CHAIN)
    resp_data = response.json()
    assert resp_data["success"]
    assert resp_data["data"]["passed"]
    assert len(resp_data["data"]["pairs"]) == 3


def test_compare_single_route():
    """
    Test that a comparison needs at least two routes.
    """
    response = client.post("/api/compare", params={"n": 5, "routes": "dp"}, json=THREE_STATE_CHAIN)
    assert response.status_code == 422
    assert not response.json()["success"]


def test_simulate_endpoint():
    """
    Test that the simulate endpoint tallies every sample and reports the seed.
    """
    params = {"n": 4, "samples": 2000, "seed": 3, "start": "state1"}
    response = client.post("/api/simulate", params=params, json=TWO_STATE_CHAIN)
    resp_data = response.json()
    assert resp_data["success"]
    assert sum(resp_data["data"]["counts"]) == 2000
    assert resp_data["data"]["start"] == "state1"
    assert resp_data["data"]["seed"] == 3
