from __future__ import annotations

import copy
import json

import pytest

from socle.errors import IntegrityViolation, SchemaMismatch, StoreNotEmpty
from socle.lint import LintError, lint_statement_text
from socle.model import Form, Polarity
from socle.seeds import SMOKING_MAIN_ID, build_seed_corpus, smoking_corpus
from socle.store import Store


@pytest.fixture(scope="module")
def seed_corpus():
    return build_seed_corpus()


@pytest.fixture(scope="module")
def seeded():
    store = Store()
    store.import_corpus(build_seed_corpus())
    return store


def recount(corpus):
    plain = sum(1 for s in corpus["statements"] if s["kind"] == "plain")
    degrees = {}
    for edge in corpus["edges"]:
        degrees[edge["child"]] = degrees.get(edge["child"], 0) + 1
    reused = sum(1 for d in degrees.values() if d > 1)
    return plain, len(corpus["edges"]), reused


class TestSmokingCorpus:
    def test_freedom_of_choice_placement(self):
        store = Store()
        store.import_corpus(smoking_corpus())
        normal = store.view(SMOKING_MAIN_ID, Form.NORMAL)
        opposing_texts = [e.rendered_text for e in normal.opposing]
        assert (
            "Governments should defend freedom of choice of its citizens"
            in opposing_texts
        )
        negated = store.view(SMOKING_MAIN_ID, Form.NEGATED)
        supporting_texts = [e.rendered_text for e in negated.supporting]
        assert (
            "Governments should defend freedom of choice of its citizens"
            in supporting_texts
        )

    def test_stalk_resolves_to_template_text(self):
        store = Store()
        store.import_corpus(smoking_corpus())
        view = store.view(SMOKING_MAIN_ID, Form.NORMAL)
        entry = next(
            e for e in view.opposing if "freedom of choice" in e.rendered_text
        )
        relation = store.graph.statement(entry.relation_statement)
        assert relation.text_normal == (
            "Governments should defend freedom of choice of its citizens "
            "opposes Governments should ban smoking"
        )
        assert relation.relation.polarity is Polarity.OPPOSE

    def test_comment_and_beliefs_present(self):
        store = Store()
        store.import_corpus(smoking_corpus())
        assert store.view(SMOKING_MAIN_ID, Form.NORMAL).comment_count == 1
        counts = store.graph.belief_counts(SMOKING_MAIN_ID)
        assert counts.normal == 1


class TestSyntheticCorpus:
    def test_totals_via_independent_recount(self, seed_corpus):
        assert recount(seed_corpus) == (374, 371, 45)

    def test_statement_lengths_within_limit(self, seed_corpus):
        lengths = [
            len(s["text_normal"])
            for s in seed_corpus["statements"]
            if not s["overlong_exempt"]
        ]
        assert max(lengths) <= 120
        plain_lengths = [
            len(s["text_normal"])
            for s in seed_corpus["statements"]
            if s["kind"] == "plain"
        ]
        assert max(plain_lengths) <= 120

    def test_relint_clean(self, seed_corpus):
        for record in seed_corpus["statements"]:
            report = lint_statement_text(record["text_normal"])
            errors = set(report.errors)
            if record["overlong_exempt"]:
                errors.discard(LintError.TOO_LONG)
            assert not errors, record["id"]

    def test_edges_onto_relation_statements_exist(self, seed_corpus):
        kinds = {s["id"]: s["kind"] for s in seed_corpus["statements"]}
        hidden_stalks = [
            e for e in seed_corpus["edges"] if kinds[e["parent"]] == "relation"
        ]
        assert hidden_stalks
        assert all(e["relation_statement"] is None for e in hidden_stalks)

    def test_both_forms_and_polarities_used(self, seed_corpus):
        forms = {e["child_form"] for e in seed_corpus["edges"]}
        polarity = {e["polarity"] for e in seed_corpus["edges"]}
        assert forms == {"normal", "negated"}
        assert polarity == {"support", "oppose"}

    def test_users_pseudonymized(self, seed_corpus):
        names = [u["username"] for u in seed_corpus["users"]]
        assert all(name == f"user-{u['id']}" for name, u in zip(names, seed_corpus["users"]))
        assert len(seed_corpus["users"]) == 19
        comment_names = {c["author_username"] for c in seed_corpus["comments"]}
        assert all(name.startswith("user-") for name in comment_names)

    def test_no_credentials_in_export(self, seed_corpus):
        assert all("credential_digest" not in u for u in seed_corpus["users"])


class TestRoundTrip:
    def test_export_import_export_byte_equality(self, seed_corpus):
        first = Store()
        first.import_corpus(seed_corpus)
        bytes_one = first.canonical_export_bytes()
        second = Store()
        second.import_corpus(json.loads(bytes_one.decode("utf-8")))
        assert second.canonical_export_bytes() == bytes_one

    def test_import_requires_empty_store(self, seed_corpus, store):
        store.register("occupant", "long-enough-pass")
        with pytest.raises(StoreNotEmpty):
            store.import_corpus(seed_corpus)


class TestImportValidation:
    def corrupt(self, corpus):
        return copy.deepcopy(corpus)

    def test_schema_version_checked(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["schema_version"] = 99
        with pytest.raises(SchemaMismatch):
            Store().import_corpus(corpus)

    def test_edge_with_missing_endpoint_names_id(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["edges"][0]["child"] = 4040
        with pytest.raises(IntegrityViolation) as excinfo:
            Store().import_corpus(corpus)
        assert "4040" in str(excinfo.value)

    def test_relint_failure_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["statements"][0]["text_normal"] = "Is this actually a question?"
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_nonexempt_overlong_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["statements"][0]["text_normal"] = "z" * 121
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_duplicate_pair_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        duplicate = copy.deepcopy(corpus["edges"][0])
        duplicate["id"] = 99
        corpus["edges"].append(duplicate)
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_self_relation_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["edges"][0]["child"] = corpus["edges"][0]["parent"]
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_relation_payload_mismatch_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["edges"][0]["polarity"] = "support"  # statement says oppose
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_belief_on_missing_statement_rejected(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["beliefs"].append(
            {"user": 1, "statement": 12345, "form": "normal", "created_at": 0}
        )
        with pytest.raises(IntegrityViolation) as excinfo:
            Store().import_corpus(corpus)
        assert "12345" in str(excinfo.value)

    def test_edge_onto_plain_parent_requires_relation_statement(self):
        corpus = self.corrupt(smoking_corpus())
        corpus["edges"][0]["relation_statement"] = None
        with pytest.raises(IntegrityViolation):
            Store().import_corpus(corpus)

    def test_failed_import_leaves_store_empty(self, store):
        corpus = self.corrupt(smoking_corpus())
        corpus["edges"][0]["child"] = 4040
        with pytest.raises(IntegrityViolation):
            store.import_corpus(corpus)
        assert store.is_empty
