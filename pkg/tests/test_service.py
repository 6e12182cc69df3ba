import json

import pytest
from fastapi.testclient import TestClient

from trustkit.scenario import load_fixture
from trustkit.service import build_app
from trustkit.session import SessionStore

P_UNIFORM = 0.33926345893551424
P_ELIM_M2 = 0.45235127858068563

REPORT = {"competence": 7, "predictability": 6, "reliability": 8, "faith": 5, "overall": 7}


@pytest.fixture
def client(tmp_path):
    store = SessionStore(tmp_path / "sessions")
    app = build_app(store)
    return TestClient(app)


def test_scenario_listing(client):
    response = client.get("/scenarios")
    assert response.status_code == 200
    listing = response.json()
    assert [s["name"] for s in listing] == ["box", "coffee", "door"]
    coffee = listing[1]
    assert "coffee" in coffee["narrative"]
    assert {m["id"] for m in coffee["models"]} == {"M1", "M2", "M3", "M4"}


def test_create_session_by_name(client):
    response = client.post("/sessions", json={"scenario_name": "coffee"})
    assert response.status_code == 200
    body = response.json()
    assert body["state"]["assessment"]["p_contract"] == pytest.approx(P_UNIFORM, abs=1e-12)
    assert body["session_id"]


def test_create_session_inline(client):
    document = load_fixture("door").document
    response = client.post("/sessions", json={"scenario": document})
    assert response.status_code == 200
    assert response.json()["state"]["scenario_name"] == "door"


def test_create_session_unknown_name_is_400(client):
    response = client.post("/sessions", json={"scenario_name": "teapot"})
    assert response.status_code == 400
    assert "teapot" in response.json()["error"]


def test_observe_flow(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(
        f"/sessions/{session_id}/observe",
        json={"observation": {"type": "explanation", "eliminate": ["M2"]}},
    )
    assert response.status_code == 200
    state = response.json()["state"]
    assert state["weights"]["M2"] == 0.0
    assert state["assessment"]["p_contract"] == pytest.approx(P_ELIM_M2, abs=1e-12)
    read = client.get(f"/sessions/{session_id}").json()
    assert read["weights"] == state["weights"]


def test_whatif_then_read_shows_original(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(
        f"/sessions/{session_id}/whatif",
        json={"observation": {"type": "explanation", "eliminate": ["M2"]}},
    )
    assert response.status_code == 200
    assert response.json()["projected"]["weights"]["M2"] == 0.0
    read = client.get(f"/sessions/{session_id}").json()
    assert read["weights"]["M2"] == 0.25
    assert read["observations"] == []


def test_report_round_trip(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(f"/sessions/{session_id}/report", json={"responses": REPORT})
    assert response.status_code == 200
    body = response.json()
    assert body["reported_mean"] == pytest.approx(6.6, abs=1e-12)
    assert body["predicted_trust"] == pytest.approx(10 * P_UNIFORM, abs=1e-12)
    read = client.get(f"/sessions/{session_id}").json()
    assert len(read["reports"]) == 1
    assert read["reports"][0]["responses"]["reliability"] == 8.0


def test_report_bare_body_accepted(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(f"/sessions/{session_id}/report", json=REPORT)
    assert response.status_code == 200


def test_validation_errors_are_400(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(
        f"/sessions/{session_id}/observe",
        json={"observation": {"type": "explanation", "eliminate": []}},
    )
    assert response.status_code == 400
    response = client.post(f"/sessions/{session_id}/report", json={"responses": {"competence": 3}})
    assert response.status_code == 400
    response = client.post("/sessions", json={})
    assert response.status_code == 400


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope").status_code == 404
    response = client.post(
        "/sessions/nope/observe", json={"observation": {"type": "outcome", "success": True}}
    )
    assert response.status_code == 404


def test_contradiction_is_409_and_state_unchanged(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    response = client.post(
        f"/sessions/{session_id}/observe",
        json={"observation": {"type": "explanation", "eliminate": ["M1", "M2", "M3", "M4"]}},
    )
    assert response.status_code == 409
    read = client.get(f"/sessions/{session_id}").json()
    assert read["weights"]["M1"] == 0.25
    assert read["observations"] == []


def test_session_log_endpoint(client):
    session_id = client.post("/sessions", json={"scenario_name": "coffee"}).json()["session_id"]
    client.post(
        f"/sessions/{session_id}/observe",
        json={"observation": {"type": "explanation", "eliminate": ["M2"]}},
    )
    response = client.get(f"/sessions/{session_id}/log")
    assert response.status_code == 200
    lines = [json.loads(line) for line in response.text.strip().split("\n")]
    assert lines[0]["kind"] == "open"
    assert lines[1] == {"kind": "observe", "observation": {"type": "explanation", "eliminate": ["M2"]}}


def test_static_console_mount(tmp_path):
    static = tmp_path / "static"
    static.mkdir()
    (static / "index.html").write_text("<html><body>console</body></html>")
    store = SessionStore(tmp_path / "sessions")
    client = TestClient(build_app(store, static_dir=str(static)))
    response = client.get("/")
    assert response.status_code == 200
    assert "console" in response.text
    # API routes still take precedence over the static mount.
    assert client.get("/scenarios").status_code == 200
