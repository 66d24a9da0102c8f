from __future__ import annotations

import json

from socle.graph import ArgumentGraph
from socle.model import Form, Polarity, Status
from socle.seeds import smoking_corpus
from socle.store import Store


def test_empty_graph_exports_two_empty_arrays():
    assert ArgumentGraph().export_json() == {"statements": [], "edges": []}


def corpus_counts(corpus):
    """Recompute expected node/edge counts from the fixture data itself."""
    plain = sum(1 for s in corpus["statements"] if s["kind"] == "plain")
    relation = sum(1 for s in corpus["statements"] if s["kind"] == "relation")
    return plain, relation, len(corpus["edges"])


def test_smoking_fixture_counts():
    corpus = smoking_corpus()
    plain, relation, edges = corpus_counts(corpus)
    assert (plain, relation, edges) == (8, 7, 7)

    store = Store()
    store.import_corpus(corpus)
    exported = store.graph.export_json()
    assert len(exported["statements"]) == plain + relation
    assert len(exported["edges"]) == edges


def test_json_export_fields_and_belief_counts():
    store = Store()
    store.import_corpus(smoking_corpus())
    exported = store.graph.export_json()
    by_id = {s["id"]: s for s in exported["statements"]}
    ban = by_id[657]
    assert ban["text_normal"] == "Governments should ban smoking"
    assert ban["text_negated"] == "Governments should not ban smoking"
    assert ban["kind"] == "plain"
    assert ban["status"] == "approved"
    assert ban["belief_counts"] == {"normal": 1, "negated": 0}
    assert "author" not in ban

    edge = exported["edges"][0]
    assert set(edge) == {"id", "child", "child_form", "parent", "polarity",
                         "relation_statement"}


def test_json_export_deterministic_and_sorted():
    store = Store()
    store.import_corpus(smoking_corpus())
    first = json.dumps(store.graph.export_json(), sort_keys=True)
    second = json.dumps(store.graph.export_json(), sort_keys=True)
    assert first == second
    ids = [s["id"] for s in store.graph.export_json()["statements"]]
    assert ids == sorted(ids)


def test_dot_export_classes_and_labels():
    graph = ArgumentGraph()
    child = graph.create_statement(1, "Bikes cut noise", status=Status.APPROVED, created_at=0)
    parent = graph.create_statement(1, "Cities should add bike lanes", status=Status.APPROVED, created_at=0)
    graph.add_relation(child.id, Form.NORMAL, parent.id, Form.NORMAL, Polarity.SUPPORT, created_at=0)
    dot = graph.export_dot()
    assert dot.startswith("digraph statements {")
    assert dot.rstrip().endswith("}")
    assert 'class="plain"' in dot
    assert 'class="relation"' in dot
    assert f"s{child.id} -> s{parent.id} [label=\"support\"];" in dot
    # One node line per statement (2 plain + 1 relation) and one edge line.
    assert dot.count("shape=box") == 2
    assert dot.count("shape=note") == 1
    assert dot.count("->") == 1


def test_dot_escapes_quotes_in_labels():
    graph = ArgumentGraph()
    graph.create_statement(1, 'The word "organic" is unregulated', status=Status.APPROVED, created_at=0)
    dot = graph.export_dot()
    assert '\\"organic\\"' in dot
