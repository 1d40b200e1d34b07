"""HTTP service endpoints."""

from fastapi.testclient import TestClient

from optiprint.service import app

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_format_json():
    r = client.post("/format", json={"content": '{"a": [1, 2]}'})
    assert r.status_code == 200
    body = r.json()
    assert body["text"] == '{"a": [1, 2]}'
    assert body["lines"] == 1
    assert body["tainted"] is False


def test_format_sexp_narrow():
    r = client.post(
        "/format",
        json={"content": "(a b)", "syntax": "sexp", "page_width": 3},
    )
    assert r.status_code == 200
    assert r.json()["text"] == "(a\n b)"


def test_format_tainted():
    r = client.post(
        "/format",
        json={"content": '(text "hello")', "syntax": "docir", "computation_width": 3},
    )
    assert r.status_code == 200
    assert r.json()["tainted"] is True


def test_format_invalid_input():
    r = client.post("/format", json={"content": "{nope}"})
    assert r.status_code == 422


def test_format_no_layout():
    r = client.post("/format", json={"content": "(fail)", "syntax": "docir"})
    assert r.status_code == 422


def test_check_factory_pass():
    r = client.post("/check-factory", json={"name": "linear", "trials": 2000})
    assert r.status_code == 200
    assert r.json()["ok"] is True


def test_check_factory_counterexample():
    r = client.post("/check-factory", json={"name": "invalid-maxlex"})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is False
    assert body["contract"] == "translation-invariance"


def test_check_factory_unknown():
    r = client.post("/check-factory", json={"name": "nope"})
    assert r.status_code == 404
