"""Acceptance gate for the sidecar: schema conformance, slot counts,
record/replay round trips and determinism, printed as one PASS line."""

from fastapi.testclient import TestClient

from uslt_sidecar.app import create_app
from uslt_sidecar.schemas import FillResponse, LossResponse


def test_criterion_10_sidecar_conformance(engine, tmp_path):
    record_dir = tmp_path / "recordings"
    record_client = TestClient(create_app(engine=engine, record_dir=record_dir))

    fill_request = {
        "original": "the court granted the injunction.",
        "masked": "the court granted the [MASK].",
        "top_n": 76,
    }
    loss_request = {"sentence": "the court granted the order.", "position": 3}

    fill_raw = record_client.post("/v1/fill", json=fill_request)
    loss_raw = record_client.post("/v1/loss", json=loss_request)
    assert fill_raw.status_code == 200 and loss_raw.status_code == 200

    # responses validate against the shared wire schemas
    fill_body = FillResponse(**fill_raw.json())
    LossResponse(**loss_raw.json())

    # slot count equals mask count; probabilities descending, <= top_n
    assert len(fill_body.slots) == fill_request["masked"].count("[MASK]")
    for slot in fill_body.slots:
        assert len(slot) <= 76
        probs = [c.prob for c in slot]
        assert probs == sorted(probs, reverse=True)

    # determinism across repeated identical requests
    assert record_client.post("/v1/fill", json=fill_request).content == fill_raw.content
    assert record_client.post("/v1/loss", json=loss_request).content == loss_raw.content

    # record/replay round-trips bit-identically
    replay_client = TestClient(create_app(replay_dir=record_dir))
    assert replay_client.post("/v1/fill", json=fill_request).content == fill_raw.content
    assert replay_client.post("/v1/loss", json=loss_request).content == loss_raw.content

    # recordings feed the toolkit's directory provider unchanged
    from uslt.candidates import FixtureProvider

    provider = FixtureProvider(record_dir)
    slots = provider.fill(fill_request["original"], fill_request["masked"], 76)
    assert slots[0][0] == (fill_body.slots[0][0].token, fill_body.slots[0][0].prob)

    print("ACCEPTANCE 10 PASS - sidecar schema conformance, determinism, record/replay round trip")
