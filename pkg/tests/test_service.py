"""HTTP session service: stage walkthroughs, feedback purity, error codes,
idempotency, journal replay, and async analyses."""

import json
import time

import pytest
from fastapi.testclient import TestClient

from hetprior.session_service import create_app

CHIPS_BODY = {
    "lower": 1.0,
    "upper": 10.0,
    "nbins": 9,
    "chips": [4, 5, 6, 6, 5, 4, 2, 1, 1],
    "total_chips": 34,
}
FAST_MCMC = {"burn_in": 400, "keep": 400, "chains": 2, "seed": 2}


@pytest.fixture()
def client(tmp_path):
    app = create_app(journal_path=tmp_path / "journal.jsonl")
    with TestClient(app) as c:
        yield c


def create_session(client, scale="LogOR", **extra):
    r = client.post("/sessions", json={"scale": scale, **extra})
    assert r.status_code == 201
    return r.json()["session"]["id"]


def walk_to_stage3(client, r_max=10.0):
    sid = create_session(client)
    assert client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False}).status_code == 200
    assert client.post(f"/sessions/{sid}/stage2", json={"r_max": r_max}).status_code == 200
    return sid


def poll_analysis(client, run_id, until=("done", "failed"), timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        r = client.get(f"/analyses/{run_id}")
        assert r.status_code == 200
        body = r.json()
        if body["status"] in until:
            return body
        time.sleep(0.05)
    raise AssertionError("analysis did not finish in time")


def test_full_walkthrough_without_conflicts(client):
    r = client.post("/sessions", json={"scale": "LogOR"})
    assert r.status_code == 201
    envelope = r.json()
    sid = envelope["session"]["id"]
    assert envelope["question"]  # stage 1 prompt travels with the state

    r = client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False})
    assert r.status_code == 200
    assert r.json()["session"]["stage"] == "Stage2"

    r = client.post(f"/sessions/{sid}/stage2", json={"r_max": 10.0})
    assert r.status_code == 200
    assert r.json()["session"]["stage"] == "Stage3"

    r = client.put(f"/sessions/{sid}/chips", json=CHIPS_BODY)
    assert r.status_code == 200

    r = client.get(f"/sessions/{sid}/feedback")
    assert r.status_code == 200
    feedback = r.json()
    assert feedback["n_draws"] == 100_000
    assert set(feedback["bands"]) == {"low", "moderate", "high", "extreme"}
    assert feedback["bands"]["moderate"] == pytest.approx(0.85, abs=0.03)
    assert feedback["fit"]["family"] == "GammaOnRminus1"
    assert len(feedback["tau_sample"]) <= 4096

    r = client.post(f"/sessions/{sid}/finalize", json={})
    assert r.status_code == 200
    result = r.json()["session"]["result"]
    assert result["model"] == "RandomEffects"
    assert result["prior"]["variant"] == "ElicitedRatio"

    r = client.get(f"/sessions/{sid}")
    assert r.status_code == 200
    assert r.json()["session"]["stage"] == "Finalized"


def test_feedback_is_pure(client):
    sid = walk_to_stage3(client)
    client.put(f"/sessions/{sid}/chips", json=CHIPS_BODY)
    first = client.get(f"/sessions/{sid}/feedback")
    second = client.get(f"/sessions/{sid}/feedback")
    assert first.content == second.content


def test_feedback_works_on_partial_chips(client):
    sid = walk_to_stage3(client)
    partial = dict(CHIPS_BODY, chips=[0, 2, 1, 0, 0, 0, 0, 0, 0])
    assert client.put(f"/sessions/{sid}/chips", json=partial).status_code == 200
    r = client.get(f"/sessions/{sid}/feedback")
    assert r.status_code == 200
    assert r.json()["fit"]["family"] in ("GammaOnRminus1", "LogNormalOnRminus1")


def test_feedback_before_judgments_conflicts(client):
    sid = create_session(client)
    assert client.get(f"/sessions/{sid}/feedback").status_code == 409
    sid3 = walk_to_stage3(client)
    assert client.get(f"/sessions/{sid3}/feedback").status_code == 409  # no chips yet


def test_finalized_sessions_serve_feedback_from_the_result(client):
    sid = walk_to_stage3(client)
    client.post(f"/sessions/{sid}/finalize", json={"decline": True})
    r = client.get(f"/sessions/{sid}/feedback")
    assert r.status_code == 200
    assert r.json()["fit"] is None  # declined, so the prior is the truncated default
    assert r.json()["bands"]["extreme"] == 0.0


def test_stage_conflicts_are_409(client):
    sid = create_session(client)
    client.post(f"/sessions/{sid}/stage1", json={"certain_identical": True})
    r = client.post(f"/sessions/{sid}/stage1", json={"certain_identical": True})
    assert r.status_code == 409
    assert r.json()["error"]["type"] == "StageError"
    r = client.put(f"/sessions/{sid}/chips", json=CHIPS_BODY)
    assert r.status_code == 409


def test_unknown_session_is_404(client):
    for call in (
        lambda: client.get("/sessions/ghost"),
        lambda: client.post("/sessions/ghost/stage1", json={"certain_identical": True}),
        lambda: client.get("/sessions/ghost/feedback"),
    ):
        r = call()
        assert r.status_code == 404
        assert r.json()["error"]["type"] == "UnknownSession"


def test_validation_errors_are_422(client):
    assert client.post("/sessions", json={"scale": "Weibull"}).status_code == 422
    assert client.post("/sessions", json={"scale": "MeanDifference"}).status_code == 422

    sid = create_session(client)
    client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False})
    assert client.post(f"/sessions/{sid}/stage2", json={"r_max": 0.5}).status_code == 422

    sid2 = walk_to_stage3(client)
    bad_grid = dict(CHIPS_BODY, upper=8.0)
    assert client.put(f"/sessions/{sid2}/chips", json=bad_grid).status_code == 422


def test_unsupported_default_is_422(client):
    sid = create_session(client, scale="LogHR")
    client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False})
    r = client.post(f"/sessions/{sid}/stage2", json={"r_max": None})
    assert r.status_code == 422
    assert r.json()["error"]["type"] == "UnsupportedDefaultError"


def test_decline_paths(client):
    sid = create_session(client)
    client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False})
    r = client.post(f"/sessions/{sid}/stage2", json={"r_max": None})
    assert r.status_code == 200
    assert r.json()["session"]["result"]["prior"]["variant"] == "LogNormalTauSq"

    sid2 = walk_to_stage3(client)
    r = client.post(f"/sessions/{sid2}/finalize", json={"decline": True})
    assert r.status_code == 200
    prior = r.json()["session"]["result"]["prior"]
    assert prior["variant"] == "TruncatedLogNormalTauSq"
    assert prior["params"]["upper"] == pytest.approx(0.345, abs=5e-4)


def test_mean_difference_scale_carries_sigma(client):
    r = client.post("/sessions", json={"scale": "MeanDifference", "sigma": 2.61})
    assert r.status_code == 201
    assert r.json()["session"]["scale"] == {"kind": "MeanDifference", "sigma": 2.61}


def test_idempotent_session_creation(client):
    key = {"Idempotency-Key": "abc-123"}
    first = client.post("/sessions", json={"scale": "LogOR"}, headers=key)
    second = client.post("/sessions", json={"scale": "LogOR"}, headers=key)
    assert first.json() == second.json()
    other = client.post("/sessions", json={"scale": "LogOR"}, headers={"Idempotency-Key": "xyz"})
    assert other.json()["session"]["id"] != first.json()["session"]["id"]


def test_idempotent_stage_posts_do_not_double_apply(client):
    sid = create_session(client)
    key = {"Idempotency-Key": "stage1-once"}
    first = client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False}, headers=key)
    replay = client.post(f"/sessions/{sid}/stage1", json={"certain_identical": False}, headers=key)
    assert replay.status_code == first.status_code
    assert replay.json() == first.json()
    audit = client.get(f"/sessions/{sid}").json()["session"]["audit_log"]
    assert len(audit) == 1


def test_journal_replay_preserves_sessions_and_feedback(tmp_path):
    journal = tmp_path / "journal.jsonl"
    with TestClient(create_app(journal_path=journal)) as client:
        sid = walk_to_stage3(client)
        client.put(f"/sessions/{sid}/chips", json=CHIPS_BODY)
        before = client.get(f"/sessions/{sid}/feedback").content

    with TestClient(create_app(journal_path=journal)) as revived:
        r = revived.get(f"/sessions/{sid}")
        assert r.status_code == 200
        assert r.json()["session"]["stage"] == "Stage3"
        assert revived.get(f"/sessions/{sid}/feedback").content == before
        assert revived.post(f"/sessions/{sid}/finalize", json={}).status_code == 200


def test_analysis_roundtrip(client):
    r = client.post("/analyses", json={"dataset": "ta163", "effect": "FixedEffect", "mcmc": FAST_MCMC})
    assert r.status_code == 202
    run_id = r.json()["run_id"]
    body = poll_analysis(client, run_id)
    assert body["status"] == "done"
    summary = body["result"]["summary"]
    assert summary["effect"] == "FixedEffect"
    assert "2" in summary["treatment_effects"] or 2 in summary["treatment_effects"]


def test_analysis_with_inline_dataset_and_session_prior(client, ta163):
    sid = walk_to_stage3(client)
    client.put(f"/sessions/{sid}/chips", json=CHIPS_BODY)
    client.post(f"/sessions/{sid}/finalize", json={})
    r = client.post(
        "/analyses",
        json={
            "dataset": ta163.to_dict(),
            "effect": "RandomEffects",
            "prior": {"from_session": sid},
            "mcmc": FAST_MCMC,
        },
    )
    assert r.status_code == 202
    body = poll_analysis(client, r.json()["run_id"])
    assert body["status"] == "done"
    assert body["result"]["summary"]["tau"]["bands"]["moderate"] > 0.5


def test_analysis_prior_from_unfinished_session_conflicts(client):
    sid = walk_to_stage3(client)
    r = client.post(
        "/analyses",
        json={"dataset": "ta163", "effect": "RandomEffects", "prior": {"from_session": sid}, "mcmc": FAST_MCMC},
    )
    assert r.status_code == 409


def test_analysis_failure_is_reported(client):
    # scale/likelihood mismatch passes submission and fails inside the run
    prior = {
        "variant": "UniformTau",
        "params": {"lower": 0.0, "upper": 5.0},
        "scale": {"kind": "LogOR", "sigma": None},
        "omega": 1.0,
    }
    r = client.post(
        "/analyses",
        json={"dataset": "ta336", "effect": "RandomEffects", "prior": prior, "mcmc": FAST_MCMC},
    )
    assert r.status_code == 202
    body = poll_analysis(client, r.json()["run_id"])
    assert body["status"] == "failed"
    assert "difference-type scale" in body["error"]


def test_analysis_rejects_unknown_mcmc_fields(client):
    r = client.post(
        "/analyses",
        json={"dataset": "ta163", "effect": "FixedEffect", "mcmc": {"burnin": 10}},
    )
    assert r.status_code == 422


def test_unknown_run_is_404(client):
    assert client.get("/analyses/ghost").status_code == 404


def test_interpretation_endpoint(client):
    r = client.get("/interpretation", params={"scale": "LogOR"})
    assert r.status_code == 200
    body = r.json()
    assert body["scale"] == "LogOR"
    assert len(body["rows"]) == 14
    r = client.get("/interpretation", params={"scale": "MeanDifference", "sigma": 2.61})
    assert r.status_code == 200
    assert r.json()["rows"][2]["tau_scaled"] == pytest.approx(0.1 * 2.61 * 0.5513, abs=1e-3)
    assert client.get("/interpretation", params={"scale": "MeanDifference"}).status_code == 422
