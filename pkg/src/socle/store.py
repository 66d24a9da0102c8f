"""Durable state and community semantics over the argument graph.

All writes funnel through a single serialized transaction path: the
command is validated, appended to a JSON-lines log, then applied to the
in-memory state. Reloading replays the log, so a process killed after an
append reproduces the exact same state (ids, notifications, counters).

Community semantics live here: users and moderation, the draft lifecycle
with its auto-approval threshold, beliefs that double as subscriptions,
comments, and notification fan-out.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import os
import re
import secrets
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from filelock import FileLock, Timeout

from socle.errors import (
    BodyTooLong,
    DraftStatement,
    EmptyBody,
    IntegrityViolation,
    InvalidCredential,
    InvalidUsername,
    LintFailed,
    NotModerator,
    NotRecipient,
    SchemaMismatch,
    SelfRelation,
    DuplicateRelation,
    DraftEndpoint,
    StoreLocked,
    StoreNotEmpty,
    UnknownNotification,
    UnknownUser,
    UsernameTaken,
    WrongStatus,
)
from socle.graph import ArgumentGraph
from socle.lint import LintError, lint_statement_text
from socle.model import (
    MAX_NEGATED_TEXT_LEN,
    Edge,
    Form,
    Kind,
    Polarity,
    RelationPayload,
    SearchHit,
    Statement,
    Status,
    View,
)

STORE_MAGIC = "socle-store"
STORE_SCHEMA_VERSION = 1
CORPUS_SCHEMA_VERSION = 1

DEFAULT_DRAFT_THRESHOLD = 3

MAX_COMMENT_LEN = 2000
USERNAME_RE = re.compile(r"^[A-Za-z0-9_.-]{3,32}$")
MIN_CREDENTIAL_LEN = 8

LOG_FILENAME = "store.log"
LOCK_FILENAME = "store.lock"

# filelock is reentrant within a process, so cross-instance exclusion in
# the same process needs its own registry.
_open_paths: set[str] = set()
_open_paths_guard = threading.Lock()


@dataclass
class User:
    id: int
    username: str
    credential_digest: str
    is_moderator: bool = False
    approved_count: int = 0
    created_at: int = 0


@dataclass
class Belief:
    user: int
    statement: int
    form: Form
    created_at: int


@dataclass
class Comment:
    id: int
    statement: int
    author: int
    author_username: str
    body: str
    created_at: int


@dataclass
class Notification:
    id: int
    recipient: int
    kind: str  # child_added | comment_added | status_changed
    subject: int
    ref: Optional[int] = None
    new_status: Optional[str] = None
    read: bool = False
    created_at: int = 0


def hash_credential(credential: str) -> str:
    salt = secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", credential.encode(), salt, 100_000)
    return f"pbkdf2-sha256$100000${salt.hex()}${digest.hex()}"


def verify_credential(credential: str, stored: str) -> bool:
    try:
        scheme, iterations, salt_hex, digest_hex = stored.split("$")
    except ValueError:
        return False
    if scheme != "pbkdf2-sha256":
        return False
    computed = hashlib.pbkdf2_hmac(
        "sha256", credential.encode(), bytes.fromhex(salt_hex), int(iterations)
    )
    return hmac.compare_digest(computed.hex(), digest_hex)


class Store:
    """Embedded transactional store. One writer at a time; reads take the
    same lock briefly, so every request sees a consistent snapshot."""

    def __init__(
        self,
        path: str | os.PathLike | None = None,
        *,
        draft_threshold: int = DEFAULT_DRAFT_THRESHOLD,
        clock: Callable[[], int] | None = None,
        durable: bool = True,
    ) -> None:
        self.graph = ArgumentGraph()
        self.users: dict[int, User] = {}
        self.beliefs: dict[tuple[int, int], Belief] = {}
        self.comments: dict[int, Comment] = {}
        self.notifications: dict[int, Notification] = {}
        self._username_index: dict[str, int] = {}
        self._beliefs_by_statement: dict[int, dict[int, Belief]] = {}
        self._comments_by_statement: dict[int, list[int]] = {}
        self._notifications_by_user: dict[int, list[int]] = {}
        self._authored: dict[int, list[int]] = {}
        self._ever_approved: set[int] = set()
        self._next_user_id = 1
        self._next_comment_id = 1
        self._next_notification_id = 1

        self.draft_threshold = draft_threshold
        self._clock = clock or (lambda: int(time.time() * 1000))
        self._durable = durable
        self._mutex = threading.RLock()

        self._path: Optional[Path] = Path(path) if path is not None else None
        self._log_file = None
        self._file_lock: Optional[FileLock] = None
        if self._path is not None:
            self._open_on_disk()

    # ------------------------------------------------------------------
    # Lifecycle

    def _open_on_disk(self) -> None:
        assert self._path is not None
        if not self._path.is_dir():
            raise StoreLocked(f"store directory {self._path} does not exist")
        resolved = str(self._path.resolve())
        with _open_paths_guard:
            if resolved in _open_paths:
                raise StoreLocked(f"store {self._path} is already open in this process")
            _open_paths.add(resolved)
        try:
            self._file_lock = FileLock(str(self._path / LOCK_FILENAME))
            try:
                self._file_lock.acquire(timeout=0.2)
            except Timeout:
                raise StoreLocked(f"store {self._path} is locked by another process") from None
            log_path = self._path / LOG_FILENAME
            if log_path.exists():
                self._replay(log_path)
                self._log_file = open(log_path, "a", encoding="utf-8")
            else:
                self._log_file = open(log_path, "w", encoding="utf-8")
                header = {"magic": STORE_MAGIC, "schema_version": STORE_SCHEMA_VERSION}
                self._log_file.write(json.dumps(header) + "\n")
                self._flush()
        except BaseException:
            self._release()
            raise

    def _replay(self, log_path: Path) -> None:
        with open(log_path, "r", encoding="utf-8") as fh:
            lines = fh.read().split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise SchemaMismatch(f"{log_path} is empty")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError:
            raise SchemaMismatch(f"{log_path} has no readable header") from None
        if header.get("magic") != STORE_MAGIC:
            raise SchemaMismatch(f"{log_path} is not a socle store")
        if header.get("schema_version") != STORE_SCHEMA_VERSION:
            raise SchemaMismatch(
                f"unsupported store schema version {header.get('schema_version')}"
            )
        for lineno, line in enumerate(lines[1:], start=2):
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                if lineno == len(lines):
                    # Torn final write from a crashed process; the event was
                    # never acknowledged, so dropping it is correct.
                    break
                raise SchemaMismatch(f"{log_path}:{lineno}: corrupt record") from None
            self._apply(record["op"], record["data"])
        self._check_integrity(log_path)

    def _check_integrity(self, log_path: Path) -> None:
        statements = self.graph.statements
        for edge in self.graph.edges.values():
            for endpoint in (edge.child, edge.parent):
                if endpoint not in statements:
                    raise IntegrityViolation(
                        f"{log_path}: edge {edge.id} references missing id {endpoint}"
                    )
        for statement in statements.values():
            if statement.author not in self.users:
                raise IntegrityViolation(
                    f"{log_path}: statement {statement.id} references missing "
                    f"user {statement.author}"
                )
        for user, statement_id in self.beliefs:
            if statement_id not in statements or user not in self.users:
                raise IntegrityViolation(
                    f"{log_path}: belief ({user}, {statement_id}) dangles"
                )

    def close(self) -> None:
        with self._mutex:
            if self._log_file is not None:
                self._log_file.close()
                self._log_file = None
            self._release()

    def _release(self) -> None:
        if self._file_lock is not None and self._file_lock.is_locked:
            self._file_lock.release()
        self._file_lock = None
        if self._path is not None:
            with _open_paths_guard:
                _open_paths.discard(str(self._path.resolve()))

    def __enter__(self) -> "Store":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # ------------------------------------------------------------------
    # Write path

    def _commit(self, op: str, data: dict) -> None:
        if self._log_file is not None:
            self._log_file.write(json.dumps({"op": op, "data": data}) + "\n")
            self._flush()
        self._apply(op, data)

    def _flush(self) -> None:
        assert self._log_file is not None
        self._log_file.flush()
        if self._durable:
            os.fsync(self._log_file.fileno())

    def _now(self) -> int:
        return self._clock()

    # ------------------------------------------------------------------
    # Users

    def register(self, username: str, credential: str) -> User:
        with self._mutex:
            username = username.strip()
            if not USERNAME_RE.match(username):
                raise InvalidUsername(f"username {username!r} must be 3-32 word characters")
            if username.lower() in self._username_index:
                raise UsernameTaken(f"username {username!r} is taken")
            if len(credential) < MIN_CREDENTIAL_LEN:
                raise InvalidCredential(
                    f"credential must be at least {MIN_CREDENTIAL_LEN} characters"
                )
            user_id = self._next_user_id
            self._commit(
                "register",
                {
                    "user_id": user_id,
                    "username": username,
                    "credential_digest": hash_credential(credential),
                    "is_moderator": False,
                    "created_at": self._now(),
                },
            )
            return self.users[user_id]

    def authenticate(self, username: str, credential: str) -> Optional[User]:
        with self._mutex:
            user_id = self._username_index.get(username.strip().lower())
            if user_id is None:
                return None
            user = self.users[user_id]
            if not verify_credential(credential, user.credential_digest):
                return None
            return user

    def get_user(self, user_id: int) -> User:
        user = self.users.get(user_id)
        if user is None:
            raise UnknownUser(f"no user {user_id}")
        return user

    def get_user_by_username(self, username: str) -> User:
        user_id = self._username_index.get(username.strip().lower())
        if user_id is None:
            raise UnknownUser(f"no user named {username!r}")
        return self.users[user_id]

    def make_moderator(self, username: str) -> User:
        with self._mutex:
            user = self.get_user_by_username(username)
            if not user.is_moderator:
                self._commit("make_moderator", {"user_id": user.id})
            return user

    # ------------------------------------------------------------------
    # Statements and relations

    def submit_statement(
        self,
        author: int,
        text_normal: str,
        text_negated_custom: Optional[str] = None,
    ) -> Statement:
        with self._mutex:
            user = self.get_user(author)
            report = lint_statement_text(text_normal.strip())
            if not report.ok:
                raise LintFailed(report)
            if text_negated_custom is not None:
                negated_report = lint_statement_text(
                    text_negated_custom.strip(), max_len=MAX_NEGATED_TEXT_LEN
                )
                if not negated_report.ok:
                    raise LintFailed(negated_report)
            approved = user.is_moderator or user.approved_count >= self.draft_threshold
            next_id = self.graph.next_statement_id
            self._commit(
                "create_statement",
                {
                    "author": author,
                    "text_normal": text_normal,
                    "text_negated_custom": text_negated_custom,
                    "status": (Status.APPROVED if approved else Status.DRAFT).value,
                    "created_at": self._now(),
                },
            )
            return self.graph.statement(next_id)

    def add_relation(
        self,
        actor: int,
        child: int,
        child_form: Form,
        parent: int,
        parent_form: Form,
        polarity: Polarity,
    ) -> tuple[Edge, Optional[Statement]]:
        with self._mutex:
            self.get_user(actor)
            if child == parent:
                raise SelfRelation(f"statement {child} cannot relate to itself")
            for endpoint in (child, parent):
                if self.graph.statement(endpoint).status is not Status.APPROVED:
                    raise DraftEndpoint(f"statement {endpoint} is a draft")
            if self.graph.has_edge_between(child, parent):
                raise DuplicateRelation(f"{child} already relates to {parent}")
            next_edge_id = self.graph.next_edge_id
            self._commit(
                "add_relation",
                {
                    "actor": actor,
                    "child": child,
                    "child_form": child_form.value,
                    "parent": parent,
                    "parent_form": parent_form.value,
                    "polarity": polarity.value,
                    "created_at": self._now(),
                },
            )
            edge = self.graph.edges[next_edge_id]
            relation = (
                self.graph.statement(edge.relation_statement)
                if edge.relation_statement is not None
                else None
            )
            return edge, relation

    def approve(self, actor: Optional[int], statement_id: int) -> Statement:
        return self._set_status(actor, statement_id, Status.APPROVED)

    def demote(self, actor: Optional[int], statement_id: int) -> Statement:
        return self._set_status(actor, statement_id, Status.DRAFT)

    def _set_status(
        self, actor: Optional[int], statement_id: int, status: Status
    ) -> Statement:
        with self._mutex:
            if actor is not None and not self.get_user(actor).is_moderator:
                raise NotModerator(f"user {actor} is not a moderator")
            statement = self.graph.statement(statement_id)
            if statement.status is status:
                verb = "approved" if status is Status.APPROVED else "a draft"
                raise WrongStatus(f"statement {statement_id} is already {verb}")
            self._commit(
                "set_status",
                {
                    "statement": statement_id,
                    "status": status.value,
                    "actor": actor,
                    "created_at": self._now(),
                },
            )
            return statement

    # ------------------------------------------------------------------
    # Beliefs, comments, notifications

    def set_belief(self, user: int, statement_id: int, form: Form) -> Belief:
        with self._mutex:
            self.get_user(user)
            statement = self.graph.statement(statement_id)
            if statement.status is not Status.APPROVED:
                raise DraftStatement(f"statement {statement_id} is a draft")
            existing = self.beliefs.get((user, statement_id))
            if existing is not None and existing.form is form:
                return existing
            self._commit(
                "set_belief",
                {
                    "user": user,
                    "statement": statement_id,
                    "form": form.value,
                    "created_at": self._now(),
                },
            )
            return self.beliefs[(user, statement_id)]

    def remove_belief(self, user: int, statement_id: int) -> None:
        with self._mutex:
            self.get_user(user)
            self.graph.statement(statement_id)
            if (user, statement_id) not in self.beliefs:
                return
            self._commit("remove_belief", {"user": user, "statement": statement_id})

    def belief_of(self, user: int, statement_id: int) -> Optional[Belief]:
        return self.beliefs.get((user, statement_id))

    def add_comment(self, author: int, statement_id: int, body: str) -> Comment:
        with self._mutex:
            self.get_user(author)
            self.graph.statement(statement_id)
            body = body.strip()
            if not body:
                raise EmptyBody("comment body is empty")
            if len(body) > MAX_COMMENT_LEN:
                raise BodyTooLong(f"comment body exceeds {MAX_COMMENT_LEN} characters")
            next_id = self._next_comment_id
            self._commit(
                "add_comment",
                {
                    "author": author,
                    "statement": statement_id,
                    "body": body,
                    "created_at": self._now(),
                },
            )
            return self.comments[next_id]

    def comments_for(self, statement_id: int) -> list[Comment]:
        with self._mutex:
            self.graph.statement(statement_id)
            return [
                self.comments[c]
                for c in self._comments_by_statement.get(statement_id, [])
            ]

    def inbox(self, user: int) -> list[Notification]:
        with self._mutex:
            self.get_user(user)
            ids = list(self._notifications_by_user.get(user, []))
            return [self.notifications[n] for n in sorted(ids, reverse=True)]

    def unread_count(self, user: int) -> int:
        return sum(1 for n in self.inbox(user) if not n.read)

    def mark_read(self, user: int, notification_id: int) -> None:
        with self._mutex:
            self.get_user(user)
            notification = self.notifications.get(notification_id)
            if notification is None:
                raise UnknownNotification(f"no notification {notification_id}")
            if notification.recipient != user:
                raise NotRecipient(
                    f"notification {notification_id} does not belong to user {user}"
                )
            if notification.read:
                return
            self._commit("mark_read", {"user": user, "notification": notification_id})

    def user_stats(self, user: int) -> tuple[int, int]:
        with self._mutex:
            self.get_user(user)
            authored = self._authored.get(user, [])
            authored_set = set(authored)
            agreement = sum(
                1
                for (believer, statement_id) in self.beliefs
                if statement_id in authored_set and believer != user
            )
            approved = sum(
                1
                for statement_id in authored
                if self.graph.statements[statement_id].kind is Kind.PLAIN
                and self.graph.statements[statement_id].status is Status.APPROVED
            )
            return agreement, approved

    def list_drafts(self) -> list[Statement]:
        with self._mutex:
            drafts = [
                s for s in self.graph.statements.values() if s.status is Status.DRAFT
            ]
        drafts.sort(key=lambda s: (s.created_at, s.id))
        return drafts

    # ------------------------------------------------------------------
    # Read-side delegations (all take the writer lock so every request
    # sees a consistent snapshot)

    def view(self, statement_id: int, form: Form = Form.NORMAL) -> View:
        with self._mutex:
            return self.graph.view(statement_id, form)

    def search(self, query: str, limit: int = 20) -> list[SearchHit]:
        with self._mutex:
            return self.graph.search(query, limit)

    def statement(self, statement_id: int) -> Statement:
        with self._mutex:
            return self.graph.statement(statement_id)

    def recent_statements(self, limit: int = 20, kind: str = "plain") -> list[Statement]:
        with self._mutex:
            recent = [
                s
                for s in self.graph.statements.values()
                if s.status is Status.APPROVED
                and (kind == "any" or s.kind.value == kind)
            ]
        recent.sort(key=lambda s: -s.id)
        return recent[:limit]

    def export_graph_json(self) -> dict:
        with self._mutex:
            return self.graph.export_json()

    def export_graph_dot(self) -> str:
        with self._mutex:
            return self.graph.export_dot()

    @property
    def is_empty(self) -> bool:
        return not self.users and not self.graph.statements

    # ------------------------------------------------------------------
    # Event application (replay-safe: no validation, no randomness)

    def _apply(self, op: str, data: dict) -> None:
        getattr(self, f"_apply_{op}")(data)

    def _apply_register(self, data: dict) -> None:
        user = User(
            id=data["user_id"],
            username=data["username"],
            credential_digest=data["credential_digest"],
            is_moderator=data["is_moderator"],
            created_at=data["created_at"],
        )
        self.users[user.id] = user
        self._username_index[user.username.lower()] = user.id
        self._next_user_id = max(self._next_user_id, user.id + 1)

    def _apply_make_moderator(self, data: dict) -> None:
        self.users[data["user_id"]].is_moderator = True

    def _apply_create_statement(self, data: dict) -> None:
        statement = self.graph.create_statement(
            data["author"],
            data["text_normal"],
            data["text_negated_custom"],
            status=Status(data["status"]),
            created_at=data["created_at"],
        )
        self._authored.setdefault(statement.author, []).append(statement.id)
        if statement.status is Status.APPROVED:
            self._record_approval(statement)

    def _apply_add_relation(self, data: dict) -> None:
        edge, relation = self.graph.add_relation(
            data["child"],
            Form(data["child_form"]),
            data["parent"],
            Form(data["parent_form"]),
            Polarity(data["polarity"]),
            actor=data["actor"],
            created_at=data["created_at"],
        )
        if relation is not None:
            self._authored.setdefault(relation.author, []).append(relation.id)
            # Auto-generated relation-statements never count toward the
            # author's approval record; only plain statements do.
        self._fan_out(
            kind="child_added",
            subject=edge.parent,
            ref=edge.id,
            actor=data["actor"],
            created_at=data["created_at"],
        )

    def _apply_set_status(self, data: dict) -> None:
        statement = self.graph.set_status(data["statement"], Status(data["status"]))
        if statement.status is Status.APPROVED:
            self._record_approval(statement)
        self._fan_out(
            kind="status_changed",
            subject=statement.id,
            ref=None,
            actor=data["actor"],
            created_at=data["created_at"],
            new_status=statement.status.value,
        )

    def _record_approval(self, statement: Statement) -> None:
        if statement.id in self._ever_approved or statement.kind is not Kind.PLAIN:
            return
        self._ever_approved.add(statement.id)
        author = self.users.get(statement.author)
        if author is not None:
            author.approved_count += 1

    def _apply_set_belief(self, data: dict) -> None:
        user, statement_id = data["user"], data["statement"]
        form = Form(data["form"])
        existing = self.beliefs.get((user, statement_id))
        if existing is not None:
            self.graph.adjust_belief_count(statement_id, existing.form, -1)
        belief = Belief(user, statement_id, form, data["created_at"])
        self.beliefs[(user, statement_id)] = belief
        self._beliefs_by_statement.setdefault(statement_id, {})[user] = belief
        self.graph.adjust_belief_count(statement_id, form, 1)

    def _apply_remove_belief(self, data: dict) -> None:
        user, statement_id = data["user"], data["statement"]
        belief = self.beliefs.pop((user, statement_id), None)
        if belief is None:
            return
        self._beliefs_by_statement.get(statement_id, {}).pop(user, None)
        self.graph.adjust_belief_count(statement_id, belief.form, -1)

    def _apply_add_comment(self, data: dict) -> None:
        author = self.users[data["author"]]
        comment = Comment(
            id=self._next_comment_id,
            statement=data["statement"],
            author=author.id,
            author_username=author.username,
            body=data["body"],
            created_at=data["created_at"],
        )
        self._next_comment_id += 1
        self.comments[comment.id] = comment
        self._comments_by_statement.setdefault(comment.statement, []).append(comment.id)
        self.graph.bump_comment_count(comment.statement)
        self._fan_out(
            kind="comment_added",
            subject=comment.statement,
            ref=comment.id,
            actor=author.id,
            created_at=comment.created_at,
        )

    def _apply_mark_read(self, data: dict) -> None:
        self.notifications[data["notification"]].read = True

    def _fan_out(
        self,
        *,
        kind: str,
        subject: int,
        ref: Optional[int],
        actor: Optional[int],
        created_at: int,
        new_status: Optional[str] = None,
    ) -> None:
        for user_id in self._beliefs_by_statement.get(subject, {}):
            if user_id == actor:
                continue
            notification = Notification(
                id=self._next_notification_id,
                recipient=user_id,
                kind=kind,
                subject=subject,
                ref=ref,
                new_status=new_status,
                created_at=created_at,
            )
            self._next_notification_id += 1
            self.notifications[notification.id] = notification
            self._notifications_by_user.setdefault(user_id, []).append(notification.id)

    # ------------------------------------------------------------------
    # Corpus import/export

    def export_corpus(self) -> dict:
        with self._mutex:
            statements = []
            for statement in sorted(self.graph.statements.values(), key=lambda s: s.id):
                relation = None
                if statement.relation is not None:
                    relation = {
                        "child": statement.relation.child,
                        "child_form": statement.relation.child_form.value,
                        "parent": statement.relation.parent,
                        "polarity": statement.relation.polarity.value,
                    }
                statements.append(
                    {
                        "id": statement.id,
                        "kind": statement.kind.value,
                        "text_normal": statement.text_normal,
                        "text_negated_custom": statement.text_negated_custom,
                        "status": statement.status.value,
                        "author": statement.author,
                        "created_at": statement.created_at,
                        "overlong_exempt": statement.overlong_exempt,
                        "relation": relation,
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
                    "created_at": edge.created_at,
                }
                for edge in sorted(self.graph.edges.values(), key=lambda e: e.id)
            ]
            users = [
                {
                    "id": user.id,
                    "username": f"user-{user.id}",
                    "is_moderator": user.is_moderator,
                    "approved_count": user.approved_count,
                    "created_at": user.created_at,
                }
                for user in sorted(self.users.values(), key=lambda u: u.id)
            ]
            beliefs = [
                {
                    "user": belief.user,
                    "statement": belief.statement,
                    "form": belief.form.value,
                    "created_at": belief.created_at,
                }
                for belief in sorted(
                    self.beliefs.values(), key=lambda b: (b.statement, b.user)
                )
            ]
            comments = [
                {
                    "id": comment.id,
                    "statement": comment.statement,
                    "author": comment.author,
                    "author_username": f"user-{comment.author}",
                    "body": comment.body,
                    "created_at": comment.created_at,
                }
                for comment in sorted(self.comments.values(), key=lambda c: c.id)
            ]
            return {
                "schema_version": CORPUS_SCHEMA_VERSION,
                "statements": statements,
                "edges": edges,
                "users": users,
                "beliefs": beliefs,
                "comments": comments,
            }

    def canonical_export_bytes(self) -> bytes:
        corpus = self.export_corpus()
        return (
            json.dumps(corpus, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
        ).encode("utf-8")

    def import_corpus(self, corpus: dict) -> dict:
        """Transactional all-or-nothing import into an empty store.

        Returns a summary with statement/edge/user counts. Statement counts
        cover plain statements; relation-statements are reported separately.
        """
        with self._mutex:
            if not self.is_empty:
                raise StoreNotEmpty("corpus import requires an empty store")
            _validate_corpus(corpus)
            self._commit("import_corpus", {"corpus": corpus})
            plain = sum(
                1 for s in self.graph.statements.values() if s.kind is Kind.PLAIN
            )
            return {
                "statements": plain,
                "relation_statements": len(self.graph.statements) - plain,
                "edges": len(self.graph.edges),
                "users": len(self.users),
                "beliefs": len(self.beliefs),
                "comments": len(self.comments),
            }

    def _apply_import_corpus(self, data: dict) -> None:
        corpus = data["corpus"]
        for record in corpus["users"]:
            user = User(
                id=record["id"],
                username=record["username"],
                credential_digest=record.get("credential_digest", ""),
                is_moderator=record["is_moderator"],
                approved_count=record["approved_count"],
                created_at=record["created_at"],
            )
            self.users[user.id] = user
            self._username_index[user.username.lower()] = user.id
            self._next_user_id = max(self._next_user_id, user.id + 1)
        for record in corpus["statements"]:
            relation = None
            if record.get("relation") is not None:
                payload = record["relation"]
                relation = RelationPayload(
                    child=payload["child"],
                    child_form=Form(payload["child_form"]),
                    parent=payload["parent"],
                    polarity=Polarity(payload["polarity"]),
                )
            statement = Statement(
                id=record["id"],
                kind=Kind(record["kind"]),
                text_normal=record["text_normal"],
                text_negated_custom=record["text_negated_custom"],
                status=Status(record["status"]),
                author=record["author"],
                created_at=record["created_at"],
                overlong_exempt=record["overlong_exempt"],
                relation=relation,
            )
            self.graph.load_statement(statement)
            self._authored.setdefault(statement.author, []).append(statement.id)
            if statement.status is Status.APPROVED:
                # Imported approved statements are marked as already counted
                # so a later demote/approve round trip does not double count.
                self._ever_approved.add(statement.id)
        for record in corpus["edges"]:
            self.graph.load_edge(
                Edge(
                    id=record["id"],
                    child=record["child"],
                    child_form=Form(record["child_form"]),
                    parent=record["parent"],
                    polarity=Polarity(record["polarity"]),
                    relation_statement=record["relation_statement"],
                    created_at=record["created_at"],
                )
            )
        for record in corpus["beliefs"]:
            belief = Belief(
                user=record["user"],
                statement=record["statement"],
                form=Form(record["form"]),
                created_at=record["created_at"],
            )
            self.beliefs[(belief.user, belief.statement)] = belief
            self._beliefs_by_statement.setdefault(belief.statement, {})[
                belief.user
            ] = belief
            self.graph.adjust_belief_count(belief.statement, belief.form, 1)
        for record in corpus["comments"]:
            comment = Comment(
                id=record["id"],
                statement=record["statement"],
                author=record["author"],
                author_username=record["author_username"],
                body=record["body"],
                created_at=record["created_at"],
            )
            self.comments[comment.id] = comment
            self._comments_by_statement.setdefault(comment.statement, []).append(
                comment.id
            )
            self.graph.bump_comment_count(comment.statement)
            self._next_comment_id = max(self._next_comment_id, comment.id + 1)


def _validate_corpus(corpus: dict) -> None:
    if corpus.get("schema_version") != CORPUS_SCHEMA_VERSION:
        raise SchemaMismatch(
            f"corpus schema version {corpus.get('schema_version')!r} is not "
            f"{CORPUS_SCHEMA_VERSION}"
        )
    for key in ("statements", "edges", "users", "beliefs", "comments"):
        if not isinstance(corpus.get(key), list):
            raise SchemaMismatch(f"corpus is missing array {key!r}")

    user_ids: set[int] = set()
    usernames: set[str] = set()
    for record in corpus["users"]:
        if record["id"] in user_ids:
            raise IntegrityViolation(f"duplicate user id {record['id']}")
        user_ids.add(record["id"])
        name = record["username"]
        if not USERNAME_RE.match(name):
            raise IntegrityViolation(f"user {record['id']}: invalid username {name!r}")
        if name.lower() in usernames:
            raise IntegrityViolation(f"duplicate username {name!r}")
        usernames.add(name.lower())

    statements: dict[int, dict] = {}
    for record in corpus["statements"]:
        sid = record["id"]
        if sid in statements:
            raise IntegrityViolation(f"duplicate statement id {sid}")
        if record["author"] not in user_ids:
            raise IntegrityViolation(
                f"statement {sid} references missing user {record['author']}"
            )
        report = lint_statement_text(record["text_normal"])
        errors = set(report.errors)
        if record["overlong_exempt"]:
            errors.discard(LintError.TOO_LONG)
        if errors:
            raise IntegrityViolation(
                f"statement {sid} fails lint: {sorted(e.value for e in errors)}"
            )
        custom = record["text_negated_custom"]
        if custom is not None:
            negated_report = lint_statement_text(custom, max_len=MAX_NEGATED_TEXT_LEN)
            negated_errors = set(negated_report.errors)
            if record["overlong_exempt"]:
                negated_errors.discard(LintError.TOO_LONG)
            if negated_errors:
                raise IntegrityViolation(
                    f"statement {sid} negated text fails lint: "
                    f"{sorted(e.value for e in negated_errors)}"
                )
        if (record["kind"] == Kind.RELATION.value) != (record.get("relation") is not None):
            raise IntegrityViolation(
                f"statement {sid}: relation payload must be present exactly "
                "for relation-statements"
            )
        statements[sid] = record

    for record in corpus["statements"]:
        payload = record.get("relation")
        if payload is None:
            continue
        for endpoint in (payload["child"], payload["parent"]):
            if endpoint not in statements:
                raise IntegrityViolation(
                    f"statement {record['id']} references missing id {endpoint}"
                )
        if statements[payload["parent"]]["kind"] != Kind.PLAIN.value:
            raise IntegrityViolation(
                f"statement {record['id']}: relation parent {payload['parent']} "
                "is not a plain statement"
            )

    edge_ids: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    for record in corpus["edges"]:
        eid = record["id"]
        if eid in edge_ids:
            raise IntegrityViolation(f"duplicate edge id {eid}")
        edge_ids.add(eid)
        for endpoint in (record["child"], record["parent"]):
            if endpoint not in statements:
                raise IntegrityViolation(f"edge {eid} references missing id {endpoint}")
        if record["child"] == record["parent"]:
            raise IntegrityViolation(f"edge {eid} is a self-relation")
        pair = (record["child"], record["parent"])
        if pair in pairs:
            raise IntegrityViolation(f"edge {eid} duplicates pair {pair}")
        pairs.add(pair)
        parent_kind = statements[record["parent"]]["kind"]
        relation_id = record["relation_statement"]
        if parent_kind == Kind.PLAIN.value:
            if relation_id is None:
                raise IntegrityViolation(f"edge {eid} is missing its relation-statement")
            relation = statements.get(relation_id)
            if relation is None:
                raise IntegrityViolation(
                    f"edge {eid} references missing id {relation_id}"
                )
            payload = relation.get("relation")
            if relation["kind"] != Kind.RELATION.value or payload is None:
                raise IntegrityViolation(
                    f"edge {eid}: statement {relation_id} is not a relation-statement"
                )
            if (
                payload["child"] != record["child"]
                or payload["child_form"] != record["child_form"]
                or payload["parent"] != record["parent"]
                or payload["polarity"] != record["polarity"]
            ):
                raise IntegrityViolation(
                    f"edge {eid}: relation-statement {relation_id} payload mismatch"
                )
        elif relation_id is not None:
            raise IntegrityViolation(
                f"edge {eid}: edges onto relation-statements carry no "
                "relation-statement"
            )

    seen_beliefs: set[tuple[int, int]] = set()
    for record in corpus["beliefs"]:
        if record["user"] not in user_ids:
            raise IntegrityViolation(f"belief references missing user {record['user']}")
        if record["statement"] not in statements:
            raise IntegrityViolation(
                f"belief references missing id {record['statement']}"
            )
        key = (record["user"], record["statement"])
        if key in seen_beliefs:
            raise IntegrityViolation(f"duplicate belief for {key}")
        seen_beliefs.add(key)

    comment_ids: set[int] = set()
    for record in corpus["comments"]:
        if record["id"] in comment_ids:
            raise IntegrityViolation(f"duplicate comment id {record['id']}")
        comment_ids.add(record["id"])
        if record["author"] not in user_ids:
            raise IntegrityViolation(
                f"comment {record['id']} references missing user {record['author']}"
            )
        if record["statement"] not in statements:
            raise IntegrityViolation(
                f"comment {record['id']} references missing id {record['statement']}"
            )
        if not record["body"].strip():
            raise IntegrityViolation(f"comment {record['id']} has an empty body")
