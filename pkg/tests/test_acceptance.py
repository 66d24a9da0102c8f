"""Acceptance suite: one test per criterion, each at its stated tolerance.

The conftest prints one [PASS]/[FAIL] line per criterion in the terminal
summary. Criteria for the web client live in its own test harness under
frontend/; everything here runs with no client built.
"""

from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from socle.api import create_app
from socle.config import ServiceConfig
from socle.errors import (
    DraftEndpoint,
    DuplicateRelation,
    LintFailed,
    SelfRelation,
)
from socle.graph import ArgumentGraph
from socle.lint import LintError, lint_statement_text
from socle.model import Form, Kind, Polarity, Status
from socle.seeds import SMOKING_MAIN_ID, build_seed_corpus, smoking_corpus
from socle.slug import slugify
from socle.store import Store

# ---------------------------------------------------------------------------
# Criterion: duality over randomized graphs

GRAPH_COUNT = 100
MUTATIONS_PER_GRAPH = 1000
DUALITY_BUDGET_SECONDS = 60.0


def mutate_graph(graph: ArgumentGraph, rng: random.Random, steps: int) -> None:
    statements: list[int] = []
    for step in range(steps):
        roll = rng.random()
        if roll < 0.30 or len(statements) < 4:
            statement = graph.create_statement(
                1,
                f"Claim {step} marker {rng.randint(0, 99999)}",
                status=Status.APPROVED,
                created_at=step,
            )
            statements.append(statement.id)
        elif roll < 0.72:
            child, parent = rng.sample(statements, 2)
            try:
                _, relation = graph.add_relation(
                    child,
                    rng.choice((Form.NORMAL, Form.NEGATED)),
                    parent,
                    rng.choice((Form.NORMAL, Form.NEGATED)),
                    rng.choice((Polarity.SUPPORT, Polarity.OPPOSE)),
                    created_at=step,
                )
                if relation is not None:
                    statements.append(relation.id)
            except (DuplicateRelation, SelfRelation, DraftEndpoint):
                pass
        elif roll < 0.9:
            graph.adjust_belief_count(
                rng.choice(statements), rng.choice((Form.NORMAL, Form.NEGATED)), 1
            )
        else:
            sid = rng.choice(statements)
            target = graph.statement(sid)
            if target.kind is Kind.PLAIN:
                graph.set_status(
                    sid,
                    Status.DRAFT if target.status is Status.APPROVED else Status.APPROVED,
                )


@pytest.mark.acceptance("duality-suite")
def test_duality_over_randomized_graphs():
    started = time.perf_counter()
    violations = 0
    for seed in range(GRAPH_COUNT):
        graph = ArgumentGraph()
        mutate_graph(graph, random.Random(seed), MUTATIONS_PER_GRAPH)
        for sid in graph.statements:
            normal = graph.view(sid, Form.NORMAL)
            negated = graph.view(sid, Form.NEGATED)
            if {e.edge_id for e in normal.supporting} != {
                e.edge_id for e in negated.opposing
            }:
                violations += 1
            if {e.edge_id for e in normal.opposing} != {
                e.edge_id for e in negated.supporting
            }:
                violations += 1
    elapsed = time.perf_counter() - started
    assert violations == 0
    assert elapsed < DUALITY_BUDGET_SECONDS, f"duality suite took {elapsed:.1f}s"


# ---------------------------------------------------------------------------
# Criterion: canonicalization matches the brute-force oracle

FLIP_ORACLE = {
    (Form.NORMAL, Polarity.SUPPORT): Polarity.SUPPORT,
    (Form.NORMAL, Polarity.OPPOSE): Polarity.OPPOSE,
    (Form.NEGATED, Polarity.SUPPORT): Polarity.OPPOSE,
    (Form.NEGATED, Polarity.OPPOSE): Polarity.SUPPORT,
}


@pytest.mark.acceptance("canonicalization-oracle")
def test_creation_variants_collapse_to_two_canonical_edges():
    for child_form in Form:  # the child's form is content, never canonicalized
        canonical_edges = set()
        for parent_form, polarity in itertools.product(Form, Polarity):
            graph = ArgumentGraph()
            child = graph.create_statement(
                1, "Fixture child claim", status=Status.APPROVED, created_at=0
            )
            parent = graph.create_statement(
                1, "Fixture parent claim", status=Status.APPROVED, created_at=0
            )
            edge, _ = graph.add_relation(
                child.id, child_form, parent.id, parent_form, polarity, created_at=0
            )
            assert edge.polarity is FLIP_ORACLE[(parent_form, polarity)]
            canonical_edges.add(
                (edge.child, edge.child_form, edge.parent, edge.polarity)
            )
        assert len(canonical_edges) == 2


# ---------------------------------------------------------------------------
# Criterion: smoking-dialog fixture

@pytest.mark.acceptance("smoking-dialog-fixture")
def test_smoking_dialog_views_and_stalk():
    store = Store()
    store.import_corpus(smoking_corpus())
    freedom_text = "Governments should defend freedom of choice of its citizens"

    normal = store.view(SMOKING_MAIN_ID, Form.NORMAL)
    in_opposing = [e for e in normal.opposing if e.rendered_text == freedom_text]
    assert len(in_opposing) == 1

    negated = store.view(SMOKING_MAIN_ID, Form.NEGATED)
    in_supporting = [e for e in negated.supporting if e.rendered_text == freedom_text]
    assert len(in_supporting) == 1

    stalk = store.graph.statement(in_opposing[0].relation_statement)
    assert stalk.kind is Kind.RELATION
    assert stalk.text_normal == (
        f"{freedom_text} opposes Governments should ban smoking"
    )


# ---------------------------------------------------------------------------
# Criterion: corpus scale

IMPORT_BUDGET_SECONDS = 5.0


@pytest.mark.acceptance("corpus-scale")
def test_corpus_import_speed_and_exact_counts(tmp_path):
    corpus = build_seed_corpus()
    store = Store(tmp_path)
    started = time.perf_counter()
    store.import_corpus(corpus)
    elapsed = time.perf_counter() - started
    assert elapsed < IMPORT_BUDGET_SECONDS, f"import took {elapsed:.2f}s"

    exported = store.graph.export_json()
    plain = [s for s in exported["statements"] if s["kind"] == "plain"]
    assert len(plain) == 374
    assert len(exported["edges"]) == 371

    degrees: dict[int, int] = {}
    for edge in exported["edges"]:
        degrees[edge["child"]] = degrees.get(edge["child"], 0) + 1
    assert sum(1 for d in degrees.values() if d > 1) == 45
    store.close()


# ---------------------------------------------------------------------------
# Criterion: lint contract

@pytest.mark.acceptance("lint-contract")
def test_lint_contract_and_corpus_relint():
    assert lint_statement_text("x" * 121).errors == [LintError.TOO_LONG]
    assert lint_statement_text("Is smoke harmless?").errors == [LintError.IS_QUESTION]

    store = Store()
    with pytest.raises(LintFailed):
        store.graph.create_statement(1, "y" * 121, status=Status.APPROVED, created_at=0)

    corpus = build_seed_corpus()
    for record in corpus["statements"]:
        report = lint_statement_text(record["text_normal"])
        errors = set(report.errors)
        if record["overlong_exempt"]:
            errors.discard(LintError.TOO_LONG)
        assert not errors, f"statement {record['id']} fails re-lint"
        if not record["overlong_exempt"]:
            assert len(record["text_normal"]) <= 120
        if record["kind"] == "plain":
            assert len(record["text_normal"]) <= 120


# ---------------------------------------------------------------------------
# Criterion: draft state machine

@pytest.mark.acceptance("draft-state-machine")
def test_threshold_walk_and_demote_edge_rules():
    store = Store(draft_threshold=3)
    moderator = store.register("walk-moderator", "long-enough-pass")
    store.make_moderator(moderator.username)
    author = store.register("walk-author", "long-enough-pass")
    anchor = store.submit_statement(moderator.id, "Anchor for edge attempts")

    first_three = []
    for index in range(3):
        statement = store.submit_statement(author.id, f"Walk claim number {index}")
        assert statement.status is Status.DRAFT
        # Drafts are unusable as either endpoint.
        with pytest.raises(DraftEndpoint):
            store.add_relation(
                moderator.id, anchor.id, Form.NORMAL, statement.id,
                Form.NORMAL, Polarity.SUPPORT,
            )
        with pytest.raises(DraftEndpoint):
            store.add_relation(
                moderator.id, statement.id, Form.NORMAL, anchor.id,
                Form.NORMAL, Polarity.SUPPORT,
            )
        first_three.append(statement)

    for statement in first_three:
        store.approve(moderator.id, statement.id)

    fourth = store.submit_statement(author.id, "Walk claim number three plus one")
    assert fourth.status is Status.APPROVED

    # Demote: existing edges survive, new ones are blocked.
    store.add_relation(
        moderator.id, fourth.id, Form.NORMAL, first_three[0].id,
        Form.NORMAL, Polarity.SUPPORT,
    )
    edges_before = len(store.graph.edges_with_parent(first_three[0].id))
    store.demote(moderator.id, first_three[0].id)
    assert len(store.graph.edges_with_parent(first_three[0].id)) == edges_before
    with pytest.raises(DraftEndpoint):
        store.add_relation(
            moderator.id, first_three[1].id, Form.NORMAL, first_three[0].id,
            Form.NORMAL, Polarity.SUPPORT,
        )


# ---------------------------------------------------------------------------
# Criterion: belief exclusivity and the inverse-view gate

@pytest.mark.acceptance("belief-exclusivity-and-gate")
def test_belief_switch_and_api_gate():
    store = Store()
    store.import_corpus(smoking_corpus())
    client = TestClient(create_app(store, ServiceConfig()))
    response = client.post(
        "/api/v1/auth/register",
        json={"username": "gate-user", "credential": "long-enough-pass"},
    )
    headers = {"Authorization": f"Bearer {response.json()['token']}"}
    user_id = response.json()["user"]["id"]

    base = store.graph.belief_counts(SMOKING_MAIN_ID)
    base_counts = (base.normal, base.negated)

    ok = client.put(
        f"/api/v1/statements/{SMOKING_MAIN_ID}/belief",
        json={"form": "normal"},
        headers=headers,
    )
    assert ok.status_code == 200

    rejected = client.put(
        f"/api/v1/statements/{SMOKING_MAIN_ID}/belief",
        json={"form": "negated"},
        headers=headers,
    )
    assert rejected.status_code == 422
    assert rejected.json()["error"]["code"] == "inverse_view_required"

    accepted = client.put(
        f"/api/v1/statements/{SMOKING_MAIN_ID}/belief",
        json={"form": "negated", "viewed_form": "negated"},
        headers=headers,
    )
    assert accepted.status_code == 200

    held = [b for (u, _), b in store.beliefs.items() if u == user_id]
    assert len(held) == 1 and held[0].form is Form.NEGATED
    counts = store.graph.belief_counts(SMOKING_MAIN_ID)
    assert (counts.normal, counts.negated) == (base_counts[0], base_counts[1] + 1)


# ---------------------------------------------------------------------------
# Criterion: notification fan-out equals believers minus actor

FAN_OUT_ROUNDS = 40


@pytest.mark.acceptance("notification-fan-out")
def test_fan_out_matches_subscriber_oracle():
    rng = random.Random(99)
    store = Store()
    moderator = store.register("fan-moderator", "long-enough-pass")
    store.make_moderator(moderator.username)
    users = [store.register(f"fan-user-{i:02d}", "long-enough-pass") for i in range(8)]
    everyone = [moderator] + users

    discrepancies = 0
    for round_index in range(FAN_OUT_ROUNDS):
        parent = store.submit_statement(
            moderator.id, f"Fan-out parent {round_index}"
        )
        child = store.submit_statement(moderator.id, f"Fan-out child {round_index}")
        believers = rng.sample(users, rng.randint(0, len(users)))
        for believer in believers:
            store.set_belief(believer.id, parent.id, rng.choice(list(Form)))
        actor = rng.choice(everyone)

        seen_before = set(store.notifications)
        if round_index % 2 == 0:
            store.add_relation(
                actor.id, child.id, Form.NORMAL, parent.id, Form.NORMAL,
                Polarity.SUPPORT,
            )
            kind = "child_added"
        else:
            store.add_comment(actor.id, parent.id, f"Fan-out remark {round_index}")
            kind = "comment_added"

        oracle = {
            user for (user, statement) in store.beliefs if statement == parent.id
        } - {actor.id}
        delivered = {
            n.recipient
            for n in store.notifications.values()
            if n.id not in seen_before and n.kind == kind and n.subject == parent.id
        }
        if delivered != oracle:
            discrepancies += 1
    assert discrepancies == 0


# ---------------------------------------------------------------------------
# Criterion: slug bit-exactness and representative-URL routing

@pytest.mark.acceptance("slug-and-deep-link")
def test_slug_value_and_route_semantics():
    assert slugify("Governments should ban smoking") == "governments-should-ban-smoking"

    store = Store()
    store.import_corpus(smoking_corpus())
    client = TestClient(create_app(store, ServiceConfig()))

    ok = client.get("/statement/657/governments-should-ban-smoking")
    assert ok.status_code == 200
    assert ok.json()["statement"] == 657

    wrong = client.get("/statement/657/wrong-slug", follow_redirects=False)
    assert wrong.status_code == 301
    assert wrong.headers["location"] == "/statement/657/governments-should-ban-smoking"


# ---------------------------------------------------------------------------
# Criterion: durability across a crash

@pytest.mark.acceptance("durability-kill-and-reload")
def test_kill_and_reload_yields_identical_canonical_export(tmp_path):
    store_dir = tmp_path / "data"
    store_dir.mkdir()
    expected_file = tmp_path / "expected.json"
    child = Path(__file__).resolve().parent / "_durability_child.py"
    subprocess.run(
        [sys.executable, str(child), str(store_dir), str(expected_file), "424242"],
        check=True,
        timeout=120,
    )
    expected = expected_file.read_bytes()
    assert expected  # the child got as far as exporting

    with Store(store_dir) as reloaded:
        assert reloaded.canonical_export_bytes() == expected
