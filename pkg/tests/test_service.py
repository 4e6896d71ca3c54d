from __future__ import annotations

import logging

import pytest
from fastapi.testclient import TestClient

from wiregen.generation import mock_generate
from wiregen.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app(backend="mock"), raise_server_exceptions=False)


def _generate_body(description="a login page", seed=7, **config):
    merged = {"backend": "mock", "seed": seed, **config}
    return {"description": description, "config": merged}


def test_healthz(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_generate_returns_full_payload(client):
    response = client.post("/api/generate", json=_generate_body())
    assert response.status_code == 200
    payload = response.json()
    assert set(payload) >= {"raw_dsl", "beautified_dsl", "svg", "findings", "report", "request_id"}
    assert payload["svg"].startswith("<svg")
    assert payload["raw_dsl"].endswith("</html>")
    assert payload["beautified_dsl"].endswith("</html>")


def test_generate_deterministic_modulo_request_id(client):
    first = client.post("/api/generate", json=_generate_body()).json()
    second = client.post("/api/generate", json=_generate_body()).json()
    assert first["request_id"] != second["request_id"]
    for payload in (first, second):
        payload.pop("request_id")
    assert first == second


def test_generate_empty_description_is_400(client):
    response = client.post("/api/generate", json={"description": "  "})
    assert response.status_code == 400


def test_generate_bad_temperature_is_rejected(client):
    response = client.post("/api/generate", json=_generate_body(temperature=3.5))
    assert response.status_code in (400, 422)


def test_generate_remote_without_url_is_502(client):
    response = client.post("/api/generate", json=_generate_body(backend="remote"))
    assert response.status_code == 502
    assert "backend" in response.json()["detail"].lower()


def test_generate_unreachable_remote_is_502(monkeypatch):
    import wiregen.generation as generation

    monkeypatch.setattr(generation.RemoteBackend, "RETRIES", 1)
    app = create_app(backend="http://127.0.0.1:9/nothing-here")
    client = TestClient(app, raise_server_exceptions=False)
    response = client.post("/api/generate", json=_generate_body(backend="remote"))
    assert response.status_code == 502
    assert response.json()["detail"]


def test_beautify_endpoint_round_trip(client):
    raw = mock_generate("a settings page", 3)
    response = client.post("/api/beautify", json={"dsl": raw})
    assert response.status_code == 200
    payload = response.json()
    assert payload["svg"].startswith("<svg")
    assert payload["beautified_dsl"].endswith("</html>")
    assert isinstance(payload["findings"], list)


def test_beautify_rejects_garbage_as_422(client):
    response = client.post("/api/beautify", json={"dsl": "plain words, no markup"})
    assert response.status_code == 422


def test_icons_endpoint_serves_ten_entries(client):
    response = client.get("/api/icons")
    assert response.status_code == 200
    entries = response.json()
    assert len(entries) == 10
    assert entries[0]["glyph"] == "back_arrow"
    assert all({"icon_id", "glyph", "semantics"} <= set(e) for e in entries)


def test_api_key_never_leaks_into_logs_or_payload(monkeypatch, caplog, client):
    secret = "sk-wiregen-test-supersecret-9281"
    monkeypatch.setenv("WIREGEN_API_KEY", secret)
    with caplog.at_level(logging.DEBUG):
        generate_response = client.post("/api/generate", json=_generate_body())
        icons_response = client.get("/api/icons")
    assert generate_response.status_code == 200
    for record in caplog.records:
        assert secret not in record.getMessage()
    assert secret not in generate_response.text
    assert secret not in icons_response.text


def test_static_mount_serves_ui(tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>studio</title>", encoding="utf-8")
    client = TestClient(create_app(backend="mock", static_dir=str(tmp_path)))
    response = client.get("/")
    assert response.status_code == 200
    assert "studio" in response.text
    assert client.get("/healthz").status_code == 200
