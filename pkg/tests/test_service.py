"""HTTP session service: the client as the unfair scheduler."""

import pytest
from fastapi.testclient import TestClient

from trielect.service import create_app

TWO_STACKED = '{"particles": [{"nodes": [[0, 0]]}, {"nodes": [[0, 1]]}]}'
SINGLE = '{"particles": [{"nodes": [[0, 0]]}]}'


@pytest.fixture()
def client():
    return TestClient(create_app())


def _create(client, body=TWO_STACKED):
    response = client.post("/sessions", content=body)
    assert response.status_code == 200, response.text
    return response.json()


def test_create_single_particle_session(client):
    state = _create(client, SINGLE)
    assert state["final"] is True
    assert state["leaders"] == [0]
    assert state["activable"] == []
    assert state["progress"] == [0, 0, 0, 0, 0]
    assert state["step_count"] == 0
    assert state["occupancy"] == {"0,0": 0}


def test_create_two_stacked_session(client):
    state = _create(client)
    assert state["final"] is False
    assert [(m["pid"], m["condition"]) for m in state["activable"]] == [(0, "C1")]
    assert state["activable"][0]["resulting_nodes"] == [[0, 0], [-1, 1]]
    assert state["boundaries"] == {"r_max": 1, "q_max": 0}


def test_create_rejects_disconnected(client):
    response = client.post(
        "/sessions", content='{"particles": [{"nodes": [[0,0]]}, {"nodes": [[9,9]]}]}'
    )
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "not-connected"
    assert "message" in body


def test_create_rejects_malformed(client):
    response = client.post("/sessions", content="{nope")
    assert response.status_code == 400
    assert response.json()["code"] == "invalid-config"


def test_activate_advances_and_reports_check(client):
    state = _create(client)
    sid = state["id"]
    response = client.post(f"/sessions/{sid}/activate", json={"pid": 0})
    assert response.status_code == 200
    body = response.json()
    assert body["event"]["condition"] == "C1"
    assert body["check"]["passed"] is True
    new_state = body["state"]
    assert new_state["step_count"] == 1
    assert new_state["progress"][0] == 0  # first component dropped from 1
    assert sorted(map(tuple, body["event"]["nodes_after"])) == [(-1, 1), (0, 0)]


def test_activate_rejects_inert_pid_and_keeps_state(client):
    state = _create(client)
    sid = state["id"]
    response = client.post(f"/sessions/{sid}/activate", json={"pid": 1})
    assert response.status_code == 409
    body = response.json()
    assert body["code"] == "not-activable"
    assert body["detail"]["activable"] == [0]
    unchanged = client.get(f"/sessions/{sid}").json()
    assert unchanged == state


def test_activate_unknown_pid(client):
    sid = _create(client)["id"]
    assert client.post(f"/sessions/{sid}/activate", json={"pid": 7}).status_code == 404


def test_activate_to_completion_elects_unique_leader(client):
    sid = _create(client)["id"]
    state = client.get(f"/sessions/{sid}").json()
    steps = 0
    while not state["final"]:
        pid = state["activable"][0]["pid"]
        state = client.post(f"/sessions/{sid}/activate", json={"pid": pid}).json()["state"]
        steps += 1
        assert steps < 10
    assert state["leaders"] == [1]
    assert steps == 2


def test_auto_zero_steps_keeps_state(client):
    sid = _create(client)["id"]
    before = client.get(f"/sessions/{sid}").json()
    body = client.post(
        f"/sessions/{sid}/auto", json={"strategy": "random", "steps": 0, "seed": 1}
    ).json()
    assert body["events"] == []
    assert body["state"] == before


def test_auto_runs_to_final(client):
    sid = _create(client)["id"]
    body = client.post(
        f"/sessions/{sid}/auto", json={"strategy": "random", "steps": 100, "seed": 1}
    ).json()
    assert body["state"]["final"] is True
    assert len(body["events"]) == 2
    assert len(body["state"]["leaders"]) == 1


def test_auto_is_deterministic_across_equal_sessions(client):
    sid_a = _create(client)["id"]
    sid_b = _create(client)["id"]
    payload = {"strategy": "random", "steps": 50, "seed": 42}
    events_a = client.post(f"/sessions/{sid_a}/auto", json=payload).json()["events"]
    events_b = client.post(f"/sessions/{sid_b}/auto", json=payload).json()["events"]
    assert events_a == events_b


def test_auto_unknown_strategy(client):
    sid = _create(client)["id"]
    response = client.post(f"/sessions/{sid}/auto", json={"strategy": "psychic"})
    assert response.status_code == 400


def test_undo_restores_previous_state(client):
    state0 = _create(client)
    sid = state0["id"]
    client.post(f"/sessions/{sid}/activate", json={"pid": 0})
    undone = client.post(f"/sessions/{sid}/undo").json()
    assert undone == state0


def test_undo_empty_history_rejected(client):
    sid = _create(client)["id"]
    assert client.post(f"/sessions/{sid}/undo").status_code == 409


def test_two_activates_one_undo_matches_single_step(client):
    sid = _create(client)["id"]
    first = client.post(f"/sessions/{sid}/activate", json={"pid": 0}).json()["state"]
    client.post(f"/sessions/{sid}/activate", json={"pid": 0})
    undone = client.post(f"/sessions/{sid}/undo").json()
    assert undone == first


def test_delete_session(client):
    sid = _create(client)["id"]
    assert client.delete(f"/sessions/{sid}").status_code == 204
    assert client.get(f"/sessions/{sid}").status_code == 404
    assert client.delete(f"/sessions/{sid}").status_code == 404


def test_unknown_session_is_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/activate", json={"pid": 0}).status_code == 404
    assert client.post("/sessions/nope/undo").status_code == 404


def test_static_dir_mounting(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>playground</body></html>")
    app = create_app(static_dir=str(tmp_path))
    c = TestClient(app)
    assert c.get("/").status_code == 200
    assert "playground" in c.get("/").text
    # API routes keep precedence over the static mount
    assert c.post("/sessions", content=SINGLE).status_code == 200


def test_concurrent_activations_serialize_per_session(client):
    import threading

    # a column of six: many interleaved clicks race on one session
    column = '{"particles": [' + ", ".join(
        f'{{"nodes": [[0, {r}]]}}' for r in range(6)
    ) + "]}"
    sid = _create(client, column)["id"]
    outcomes = []

    def hammer():
        for _ in range(12):
            state = client.get(f"/sessions/{sid}").json()
            if state["final"]:
                return
            for move in state["activable"]:
                response = client.post(
                    f"/sessions/{sid}/activate", json={"pid": move["pid"]}
                )
                outcomes.append(response.status_code)

    threads = [threading.Thread(target=hammer) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    state = client.get(f"/sessions/{sid}").json()
    # every accepted activation is one serialized step; rejected races got 409
    assert state["step_count"] == outcomes.count(200)
    assert set(outcomes) <= {200, 409}
    report_progress = state["progress"]
    assert len(report_progress) == 5
