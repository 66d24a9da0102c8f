"""Core domain types for the statement graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

NEGATION_PREFIX = "(not) "

# Plain statement text is capped at this length. A custom negated text may
# run up to MAX_TEXT_LEN + len(NEGATION_PREFIX), matching what the default
# negated rendering can produce.
MAX_TEXT_LEN = 120
MAX_NEGATED_TEXT_LEN = MAX_TEXT_LEN + len(NEGATION_PREFIX)


class Form(str, Enum):
    """The two readings of a statement."""

    NORMAL = "normal"
    NEGATED = "negated"

    def inverse(self) -> "Form":
        return Form.NEGATED if self is Form.NORMAL else Form.NORMAL


class Polarity(str, Enum):
    """The two relation types between statements."""

    SUPPORT = "support"
    OPPOSE = "oppose"

    def flipped(self) -> "Polarity":
        return Polarity.OPPOSE if self is Polarity.SUPPORT else Polarity.SUPPORT


class Kind(str, Enum):
    PLAIN = "plain"
    RELATION = "relation"


class Status(str, Enum):
    DRAFT = "draft"
    APPROVED = "approved"


@dataclass
class RelationPayload:
    """Structural identity of a relation-statement: which edge it reifies."""

    child: int
    child_form: Form
    parent: int
    polarity: Polarity


@dataclass
class Statement:
    """A proposition with a normal and a negated reading.

    ``author`` is stored for moderation and statistics but must never
    appear in public renderings. ``overlong_exempt`` marks auto-generated
    relation texts that are allowed to exceed MAX_TEXT_LEN.
    """

    id: int
    kind: Kind
    text_normal: str
    text_negated_custom: Optional[str]
    status: Status
    author: int
    created_at: int
    overlong_exempt: bool = False
    relation: Optional[RelationPayload] = None

    @property
    def text_negated(self) -> str:
        if self.text_negated_custom is not None:
            return self.text_negated_custom
        return NEGATION_PREFIX + self.text_normal

    def text_in(self, form: Form) -> str:
        return self.text_normal if form is Form.NORMAL else self.text_negated


@dataclass
class Edge:
    """One canonical connection from a child statement-in-form to a parent.

    ``polarity`` is always expressed against the parent's normal form; an
    edge added while viewing the negated parent is stored flipped. The
    child's form is content, never canonicalized.
    """

    id: int
    child: int
    child_form: Form
    parent: int
    polarity: Polarity
    relation_statement: Optional[int]
    created_at: int


@dataclass
class BeliefCounts:
    normal: int = 0
    negated: int = 0

    def of(self, form: Form) -> int:
        return self.normal if form is Form.NORMAL else self.negated


@dataclass
class ViewEntry:
    """A child statement as it appears in a supporting/opposing list."""

    edge_id: int
    statement_id: int
    child_form: Form
    rendered_text: str
    relation_statement: Optional[int]
    underlying_count: int
    belief_counts: BeliefCounts
    status: Status


@dataclass
class UsedIn:
    """One place a statement is used as a child, with canonical polarity."""

    statement_id: int
    child_form: Form
    polarity: Polarity
    edge_id: int
    text_normal: str


@dataclass
class View:
    """Everything needed to render one statement in one form."""

    statement_id: int
    form: Form
    kind: Kind
    status: Status
    rendered_text: str
    text_normal: str
    text_negated: str
    supporting: list[ViewEntry] = field(default_factory=list)
    opposing: list[ViewEntry] = field(default_factory=list)
    used_in: list[UsedIn] = field(default_factory=list)
    belief_counts: BeliefCounts = field(default_factory=BeliefCounts)
    comment_count: int = 0
    relation: Optional[RelationPayload] = None


@dataclass
class SearchHit:
    statement: Statement
    score: float
    matched_form: Form


def relation_text_normal(child_text: str, polarity: Polarity, parent_text: str) -> str:
    """Template for the normal form of an auto-generated relation-statement."""
    verb = "supports" if polarity is Polarity.SUPPORT else "opposes"
    return f"{child_text} {verb} {parent_text}"


def relation_text_negated(child_text: str, polarity: Polarity, parent_text: str) -> str:
    """Template for the negated form of an auto-generated relation-statement."""
    verb = "support" if polarity is Polarity.SUPPORT else "oppose"
    return f"{child_text} does not {verb} {parent_text}"
