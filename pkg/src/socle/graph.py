"""The in-memory argument-graph engine.

A passive state container: statements, canonical edges, per-statement
belief/comment counters, plus the derivations built on them (views,
search, export). All mutations funnel through the store's transaction
boundary; every operation here is deterministic and safe for concurrent
readers over a consistent snapshot.
"""

from __future__ import annotations

import json
from typing import Optional

from socle.errors import (
    DraftEndpoint,
    DuplicateRelation,
    EmptyQuery,
    LintFailed,
    SelfRelation,
    UnknownStatement,
)
from socle.lint import lint_statement_text
from socle.model import (
    MAX_NEGATED_TEXT_LEN,
    MAX_TEXT_LEN,
    BeliefCounts,
    Edge,
    Form,
    Kind,
    Polarity,
    RelationPayload,
    SearchHit,
    Statement,
    Status,
    UsedIn,
    View,
    ViewEntry,
    relation_text_negated,
    relation_text_normal,
)


def _tokens(text: str) -> set[str]:
    out: set[str] = set()
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        elif current:
            out.add("".join(current))
            current = []
    if current:
        out.add("".join(current))
    return out


class ArgumentGraph:
    def __init__(self) -> None:
        self.statements: dict[int, Statement] = {}
        self.edges: dict[int, Edge] = {}
        self._edges_by_parent: dict[int, list[int]] = {}
        self._edges_by_child: dict[int, list[int]] = {}
        self._edge_by_pair: dict[tuple[int, int], int] = {}
        self._belief_counts: dict[int, BeliefCounts] = {}
        self._comment_counts: dict[int, int] = {}
        self._next_statement_id = 1
        self._next_edge_id = 1

    # ------------------------------------------------------------------
    # Accessors

    def statement(self, statement_id: int) -> Statement:
        try:
            return self.statements[statement_id]
        except KeyError:
            raise UnknownStatement(f"no statement {statement_id}") from None

    def has_statement(self, statement_id: int) -> bool:
        return statement_id in self.statements

    def edges_with_parent(self, statement_id: int) -> list[Edge]:
        return [self.edges[e] for e in self._edges_by_parent.get(statement_id, [])]

    def edges_with_child(self, statement_id: int) -> list[Edge]:
        return [self.edges[e] for e in self._edges_by_child.get(statement_id, [])]

    def belief_counts(self, statement_id: int) -> BeliefCounts:
        counts = self._belief_counts.get(statement_id)
        return counts if counts is not None else BeliefCounts()

    def comment_count(self, statement_id: int) -> int:
        return self._comment_counts.get(statement_id, 0)

    def underlying_count(self, statement_id: int) -> int:
        """Number of statements directly attached under this one."""
        return len(self._edges_by_parent.get(statement_id, []))

    def has_edge_between(self, child: int, parent: int) -> bool:
        return (child, parent) in self._edge_by_pair

    @property
    def next_statement_id(self) -> int:
        return self._next_statement_id

    @property
    def next_edge_id(self) -> int:
        return self._next_edge_id

    # ------------------------------------------------------------------
    # Mutations (called by the store inside its write transaction)

    def create_statement(
        self,
        author: int,
        text_normal: str,
        text_negated_custom: Optional[str] = None,
        *,
        status: Status = Status.DRAFT,
        created_at: int = 0,
    ) -> Statement:
        text_normal = text_normal.strip()
        report = lint_statement_text(text_normal)
        if not report.ok:
            raise LintFailed(report)
        if text_negated_custom is not None:
            text_negated_custom = text_negated_custom.strip()
            # The custom negated text may run as long as the default
            # "(not) "-prefixed rendering could.
            negated_report = lint_statement_text(
                text_negated_custom, max_len=MAX_NEGATED_TEXT_LEN
            )
            if not negated_report.ok:
                raise LintFailed(negated_report)
        statement = Statement(
            id=self._next_statement_id,
            kind=Kind.PLAIN,
            text_normal=text_normal,
            text_negated_custom=text_negated_custom,
            status=status,
            author=author,
            created_at=created_at,
        )
        self._insert_statement(statement)
        return statement

    def add_relation(
        self,
        child: int,
        child_form: Form,
        parent: int,
        parent_form: Form,
        polarity: Polarity,
        *,
        actor: int = 0,
        created_at: int = 0,
    ) -> tuple[Edge, Optional[Statement]]:
        if child == parent:
            raise SelfRelation(f"statement {child} cannot relate to itself")
        child_statement = self.statement(child)
        parent_statement = self.statement(parent)
        if child_statement.status is not Status.APPROVED:
            raise DraftEndpoint(f"statement {child} is a draft")
        if parent_statement.status is not Status.APPROVED:
            raise DraftEndpoint(f"statement {parent} is a draft")
        if (child, parent) in self._edge_by_pair:
            raise DuplicateRelation(f"{child} already relates to {parent}")

        canonical = polarity if parent_form is Form.NORMAL else polarity.flipped()

        relation_statement: Optional[Statement] = None
        if parent_statement.kind is Kind.PLAIN:
            child_text = child_statement.text_in(child_form)
            parent_text = parent_statement.text_normal
            text_normal = relation_text_normal(child_text, canonical, parent_text)
            text_negated = relation_text_negated(child_text, canonical, parent_text)
            relation_statement = Statement(
                id=self._next_statement_id,
                kind=Kind.RELATION,
                text_normal=text_normal,
                text_negated_custom=text_negated,
                status=Status.APPROVED,
                author=actor,
                created_at=created_at,
                overlong_exempt=(
                    len(text_normal) > MAX_TEXT_LEN
                    or len(text_negated) > MAX_NEGATED_TEXT_LEN
                ),
                relation=RelationPayload(child, child_form, parent, canonical),
            )
            self._insert_statement(relation_statement)

        edge = Edge(
            id=self._next_edge_id,
            child=child,
            child_form=child_form,
            parent=parent,
            polarity=canonical,
            relation_statement=relation_statement.id if relation_statement else None,
            created_at=created_at,
        )
        self._insert_edge(edge)
        return edge, relation_statement

    def set_status(self, statement_id: int, status: Status) -> Statement:
        statement = self.statement(statement_id)
        statement.status = status
        return statement

    def adjust_belief_count(self, statement_id: int, form: Form, delta: int) -> None:
        counts = self._belief_counts.setdefault(statement_id, BeliefCounts())
        if form is Form.NORMAL:
            counts.normal += delta
        else:
            counts.negated += delta

    def bump_comment_count(self, statement_id: int) -> None:
        self._comment_counts[statement_id] = self.comment_count(statement_id) + 1

    # ------------------------------------------------------------------
    # Load path (corpus import; caller has already checked integrity)

    def load_statement(self, statement: Statement) -> None:
        if statement.id in self.statements:
            raise ValueError(f"statement id {statement.id} already present")
        self._insert_statement(statement, explicit_id=True)

    def load_edge(self, edge: Edge) -> None:
        if edge.id in self.edges:
            raise ValueError(f"edge id {edge.id} already present")
        if (edge.child, edge.parent) in self._edge_by_pair:
            raise ValueError(f"duplicate pair ({edge.child}, {edge.parent})")
        self._insert_edge(edge, explicit_id=True)

    # ------------------------------------------------------------------
    # Derivations

    def view(self, statement_id: int, form: Form = Form.NORMAL) -> View:
        statement = self.statement(statement_id)
        counts = self.belief_counts(statement_id)

        supporting: list[ViewEntry] = []
        opposing: list[ViewEntry] = []
        if statement.status is Status.APPROVED:
            for edge in self.edges_with_parent(statement_id):
                entry = self._view_entry(edge)
                # Stored polarity is canonical against the normal form; the
                # negated view swaps the two lists, nothing else.
                shown_as_support = (edge.polarity is Polarity.SUPPORT) == (
                    form is Form.NORMAL
                )
                (supporting if shown_as_support else opposing).append(entry)
            for entries in (supporting, opposing):
                entries.sort(
                    key=lambda e: (-e.belief_counts.of(e.child_form), -e.edge_id)
                )

        used_in = [
            UsedIn(
                statement_id=edge.parent,
                child_form=edge.child_form,
                polarity=edge.polarity,
                edge_id=edge.id,
                text_normal=self.statements[edge.parent].text_normal,
            )
            for edge in sorted(self.edges_with_child(statement_id), key=lambda e: e.id)
        ]

        return View(
            statement_id=statement_id,
            form=form,
            kind=statement.kind,
            status=statement.status,
            rendered_text=statement.text_in(form),
            text_normal=statement.text_normal,
            text_negated=statement.text_negated,
            supporting=supporting,
            opposing=opposing,
            used_in=used_in,
            belief_counts=BeliefCounts(counts.normal, counts.negated),
            comment_count=self.comment_count(statement_id),
            relation=statement.relation,
        )

    def search(self, query: str, limit: int = 20) -> list[SearchHit]:
        query_tokens = _tokens(query)
        if not query_tokens:
            raise EmptyQuery("search query is empty")
        hits: list[SearchHit] = []
        for statement in self.statements.values():
            normal_score = self._match_score(query_tokens, statement.text_normal)
            negated_score = self._match_score(query_tokens, statement.text_negated)
            if normal_score >= negated_score:
                score, matched_form = normal_score, Form.NORMAL
            else:
                score, matched_form = negated_score, Form.NEGATED
            if score > 0:
                hits.append(SearchHit(statement, score, matched_form))
        # Ties rank plain statements above relation-statements (whose
        # template texts embed their endpoints and would otherwise shadow
        # the very statement searched for), then newest first.
        hits.sort(
            key=lambda h: (
                -h.score,
                0 if h.statement.kind is Kind.PLAIN else 1,
                -h.statement.id,
            )
        )
        return hits[:limit]

    @staticmethod
    def _match_score(query_tokens: set[str], text: str) -> float:
        matched = len(query_tokens & _tokens(text))
        return matched / len(query_tokens)

    # ------------------------------------------------------------------
    # Export

    def export_json(self) -> dict:
        statements = []
        for statement in sorted(self.statements.values(), key=lambda s: s.id):
            counts = self.belief_counts(statement.id)
            statements.append(
                {
                    "id": statement.id,
                    "text_normal": statement.text_normal,
                    "text_negated": statement.text_negated,
                    "kind": statement.kind.value,
                    "status": statement.status.value,
                    "belief_counts": {
                        "normal": counts.normal,
                        "negated": counts.negated,
                    },
                }
            )
        edges = [
            {
                "id": edge.id,
                "child": edge.child,
                "child_form": edge.child_form.value,
                "parent": edge.parent,
                "polarity": edge.polarity.value,
                "relation_statement": edge.relation_statement,
            }
            for edge in sorted(self.edges.values(), key=lambda e: e.id)
        ]
        return {"statements": statements, "edges": edges}

    def export_dot(self) -> str:
        lines = ["digraph statements {"]
        for statement in sorted(self.statements.values(), key=lambda s: s.id):
            label = json.dumps(statement.text_normal, ensure_ascii=False)
            if statement.kind is Kind.PLAIN:
                attrs = f"label={label}, shape=box, class=\"plain\""
            else:
                attrs = f"label={label}, shape=note, class=\"relation\""
            lines.append(f"  s{statement.id} [{attrs}];")
        for edge in sorted(self.edges.values(), key=lambda e: e.id):
            lines.append(
                f"  s{edge.child} -> s{edge.parent} [label=\"{edge.polarity.value}\"];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    # ------------------------------------------------------------------
    # Internals

    def _insert_statement(self, statement: Statement, explicit_id: bool = False) -> None:
        self.statements[statement.id] = statement
        if explicit_id:
            self._next_statement_id = max(self._next_statement_id, statement.id + 1)
        else:
            self._next_statement_id += 1

    def _insert_edge(self, edge: Edge, explicit_id: bool = False) -> None:
        self.edges[edge.id] = edge
        self._edges_by_parent.setdefault(edge.parent, []).append(edge.id)
        self._edges_by_child.setdefault(edge.child, []).append(edge.id)
        self._edge_by_pair[(edge.child, edge.parent)] = edge.id
        if explicit_id:
            self._next_edge_id = max(self._next_edge_id, edge.id + 1)
        else:
            self._next_edge_id += 1

    def _view_entry(self, edge: Edge) -> ViewEntry:
        child = self.statements[edge.child]
        counts = self.belief_counts(child.id)
        return ViewEntry(
            edge_id=edge.id,
            statement_id=child.id,
            child_form=edge.child_form,
            rendered_text=child.text_in(edge.child_form),
            relation_statement=edge.relation_statement,
            underlying_count=self.underlying_count(child.id),
            belief_counts=BeliefCounts(counts.normal, counts.negated),
            status=child.status,
        )
