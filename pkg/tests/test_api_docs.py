"""Error-code contract: the documented (endpoint, code) pairs are exactly
the ones this suite can elicit, and docs/api.md matches the generator."""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from socle.api import ERROR_CONTRACT, _STATUS_BY_CODE, create_app, generate_api_reference
from socle.config import ServiceConfig
from socle.seeds import SMOKING_MAIN_ID, smoking_corpus
from socle.store import Store

DOCS_PATH = Path(__file__).resolve().parent.parent / "docs" / "api.md"


def test_docs_file_matches_generator():
    assert DOCS_PATH.read_text(encoding="utf-8") == generate_api_reference()


def test_every_code_has_a_status():
    for _, _, _, codes in ERROR_CONTRACT:
        for code in codes:
            assert code in _STATUS_BY_CODE


@pytest.fixture
def env():
    counter = itertools.count(1_800_000_000_000, 1000)
    store = Store(clock=lambda: next(counter))
    store.import_corpus(smoking_corpus())
    client = TestClient(create_app(store, ServiceConfig()))

    def register(name):
        response = client.post(
            "/api/v1/auth/register",
            json={"username": name, "credential": "long-enough-pass"},
        )
        return {"Authorization": f"Bearer {response.json()['token']}"}

    user = register("contract-user")
    mod = register("contract-mod")
    store.make_moderator("contract-mod")

    draft = client.post(
        "/api/v1/statements",
        json={"text_normal": "Contract draft statement"},
        headers=user,
    ).json()

    # A notification owned by contract-user (not by contract-mod).
    client.put(
        f"/api/v1/statements/{SMOKING_MAIN_ID}/belief",
        json={"form": "normal"},
        headers=user,
    )
    client.post(
        f"/api/v1/statements/{SMOKING_MAIN_ID}/comments",
        json={"body": "Contract comment"},
        headers=mod,
    )
    inbox = client.get("/api/v1/inbox", headers=user).json()
    notification_id = inbox["notifications"][0]["id"]

    return {
        "client": client,
        "user": user,
        "mod": mod,
        "draft_id": draft["id"],
        "notification_id": notification_id,
    }


def relation_body(**overrides):
    body = {
        "child": 651,
        "child_form": "normal",
        "parent": 650,
        "parent_form": "normal",
        "polarity": "support",
    }
    body.update(overrides)
    return body


def build_triggers(env):
    c = env["client"]
    user, mod = env["user"], env["mod"]
    draft = env["draft_id"]
    sid = SMOKING_MAIN_ID

    return {
        ("GET", "/statement/{id}[/{slug}]", "unknown_statement"):
            lambda: c.get("/statement/999999"),
        ("POST", "/api/v1/auth/register", "invalid_username"):
            lambda: c.post("/api/v1/auth/register", json={"username": "al", "credential": "long-enough-pass"}),
        ("POST", "/api/v1/auth/register", "username_taken"):
            lambda: c.post("/api/v1/auth/register", json={"username": "contract-user", "credential": "long-enough-pass"}),
        ("POST", "/api/v1/auth/register", "invalid_credential"):
            lambda: c.post("/api/v1/auth/register", json={"username": "valid-name", "credential": "short"}),
        ("POST", "/api/v1/auth/login", "invalid_login"):
            lambda: c.post("/api/v1/auth/login", json={"username": "contract-user", "credential": "wrong-wrong"}),
        ("POST", "/api/v1/auth/logout", "unauthenticated"):
            lambda: c.post("/api/v1/auth/logout"),
        ("GET", "/api/v1/me", "unauthenticated"): lambda: c.get("/api/v1/me"),
        ("GET", "/api/v1/stats/me", "unauthenticated"): lambda: c.get("/api/v1/stats/me"),
        ("GET", "/api/v1/statements/{id}", "unknown_statement"):
            lambda: c.get("/api/v1/statements/999999"),
        ("GET", "/api/v1/statements/{id}", "invalid_form"):
            lambda: c.get(f"/api/v1/statements/{sid}", params={"form": "sideways"}),
        ("POST", "/api/v1/statements", "unauthenticated"):
            lambda: c.post("/api/v1/statements", json={"text_normal": "Hello claim"}),
        ("POST", "/api/v1/statements", "lint_failed"):
            lambda: c.post("/api/v1/statements", json={"text_normal": "Any questions?"}, headers=user),
        ("POST", "/api/v1/statements", "review_duplicates"):
            lambda: c.post("/api/v1/statements", json={"text_normal": "Governments should ban smoking today"}, headers=user),
        ("POST", "/api/v1/relations", "unauthenticated"):
            lambda: c.post("/api/v1/relations", json=relation_body()),
        ("POST", "/api/v1/relations", "unknown_statement"):
            lambda: c.post("/api/v1/relations", json=relation_body(child=999999), headers=mod),
        ("POST", "/api/v1/relations", "self_relation"):
            lambda: c.post("/api/v1/relations", json=relation_body(child=650), headers=mod),
        ("POST", "/api/v1/relations", "duplicate_relation"):
            lambda: c.post("/api/v1/relations", json=relation_body(child=650, parent=657), headers=mod),
        ("POST", "/api/v1/relations", "draft_endpoint"):
            lambda: c.post("/api/v1/relations", json=relation_body(child=draft), headers=mod),
        ("POST", "/api/v1/relations", "invalid_form"):
            lambda: c.post("/api/v1/relations", json=relation_body(child_form="sideways"), headers=mod),
        ("PUT", "/api/v1/statements/{id}/belief", "unauthenticated"):
            lambda: c.put(f"/api/v1/statements/{sid}/belief", json={"form": "normal"}),
        ("PUT", "/api/v1/statements/{id}/belief", "unknown_statement"):
            lambda: c.put("/api/v1/statements/999999/belief", json={"form": "normal"}, headers=user),
        ("PUT", "/api/v1/statements/{id}/belief", "draft_statement"):
            lambda: c.put(f"/api/v1/statements/{draft}/belief", json={"form": "normal"}, headers=user),
        ("PUT", "/api/v1/statements/{id}/belief", "inverse_view_required"):
            lambda: c.put(f"/api/v1/statements/{sid}/belief", json={"form": "negated"}, headers=user),
        ("PUT", "/api/v1/statements/{id}/belief", "invalid_form"):
            lambda: c.put(f"/api/v1/statements/{sid}/belief", json={"form": "sideways"}, headers=user),
        ("DELETE", "/api/v1/statements/{id}/belief", "unauthenticated"):
            lambda: c.delete(f"/api/v1/statements/{sid}/belief"),
        ("DELETE", "/api/v1/statements/{id}/belief", "unknown_statement"):
            lambda: c.delete("/api/v1/statements/999999/belief", headers=user),
        ("GET", "/api/v1/search", "empty_query"):
            lambda: c.get("/api/v1/search", params={"q": " "}),
        ("GET", "/api/v1/statements/{id}/comments", "unknown_statement"):
            lambda: c.get("/api/v1/statements/999999/comments"),
        ("POST", "/api/v1/statements/{id}/comments", "unauthenticated"):
            lambda: c.post(f"/api/v1/statements/{sid}/comments", json={"body": "Hi"}),
        ("POST", "/api/v1/statements/{id}/comments", "unknown_statement"):
            lambda: c.post("/api/v1/statements/999999/comments", json={"body": "Hi"}, headers=user),
        ("POST", "/api/v1/statements/{id}/comments", "empty_body"):
            lambda: c.post(f"/api/v1/statements/{sid}/comments", json={"body": "  "}, headers=user),
        ("POST", "/api/v1/statements/{id}/comments", "body_too_long"):
            lambda: c.post(f"/api/v1/statements/{sid}/comments", json={"body": "x" * 2001}, headers=user),
        ("GET", "/api/v1/inbox", "unauthenticated"): lambda: c.get("/api/v1/inbox"),
        ("POST", "/api/v1/inbox/{id}/read", "unauthenticated"):
            lambda: c.post("/api/v1/inbox/1/read"),
        ("POST", "/api/v1/inbox/{id}/read", "unknown_notification"):
            lambda: c.post("/api/v1/inbox/999999/read", headers=user),
        ("POST", "/api/v1/inbox/{id}/read", "not_recipient"):
            lambda: c.post(f"/api/v1/inbox/{env['notification_id']}/read", headers=mod),
        ("POST", "/api/v1/statements/{id}/approve", "unauthenticated"):
            lambda: c.post(f"/api/v1/statements/{draft}/approve"),
        ("POST", "/api/v1/statements/{id}/approve", "not_moderator"):
            lambda: c.post(f"/api/v1/statements/{draft}/approve", headers=user),
        ("POST", "/api/v1/statements/{id}/approve", "unknown_statement"):
            lambda: c.post("/api/v1/statements/999999/approve", headers=mod),
        ("POST", "/api/v1/statements/{id}/approve", "wrong_status"):
            lambda: c.post(f"/api/v1/statements/{sid}/approve", headers=mod),
        ("POST", "/api/v1/statements/{id}/demote", "unauthenticated"):
            lambda: c.post(f"/api/v1/statements/{sid}/demote"),
        ("POST", "/api/v1/statements/{id}/demote", "not_moderator"):
            lambda: c.post(f"/api/v1/statements/{sid}/demote", headers=user),
        ("POST", "/api/v1/statements/{id}/demote", "unknown_statement"):
            lambda: c.post("/api/v1/statements/999999/demote", headers=mod),
        ("POST", "/api/v1/statements/{id}/demote", "wrong_status"):
            lambda: c.post(f"/api/v1/statements/{draft}/demote", headers=mod),
        ("GET", "/api/v1/moderation/drafts", "unauthenticated"):
            lambda: c.get("/api/v1/moderation/drafts"),
        ("GET", "/api/v1/moderation/drafts", "not_moderator"):
            lambda: c.get("/api/v1/moderation/drafts", headers=user),
        ("GET", "/api/v1/statements/{id}/share-link", "unknown_statement"):
            lambda: c.get("/api/v1/statements/999999/share-link"),
        ("GET", "/api/v1/statements/{id}/share-link", "invalid_target"):
            lambda: c.get(f"/api/v1/statements/{sid}/share-link", params={"target": "usenet"}),
        ("GET", "/api/v1/export/graph", "invalid_form"):
            lambda: c.get("/api/v1/export/graph", params={"format": "xml"}),
    }


def test_contract_is_fully_exercised(env):
    triggers = build_triggers(env)
    documented = {
        (method, path, code)
        for method, path, _, codes in ERROR_CONTRACT
        for code in codes
    }
    assert set(triggers) == documented

    for (method, path, code), trigger in triggers.items():
        response = trigger()
        assert response.status_code == _STATUS_BY_CODE[code], (method, path, code)
        assert response.json()["error"]["code"] == code, (method, path, code)


def test_malformed_body_yields_invalid_request(env):
    response = env["client"].post(
        "/api/v1/statements", json={"wrong_key": 1}, headers=env["user"]
    )
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "invalid_request"
