"""JSON-over-HTTP facade for the statement graph and community features.

Every store/graph operation is exposed under ``/api/v1``; statement deep
links live at ``/statement/{id}/{slug}`` and canonicalize with a 301.
Domain errors map to one stable machine code each (see ERROR_CONTRACT),
serialized as ``{"error": {"code": ..., "detail": ...}}``.
"""

from __future__ import annotations

import secrets
import time
from dataclasses import dataclass
from typing import Optional
from urllib.parse import quote

from fastapi import Depends, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, RedirectResponse
from pydantic import BaseModel

from socle.config import ServiceConfig
from socle.errors import SocleError
from socle.graph import ArgumentGraph
from socle.model import Form, Polarity, SearchHit, Statement, View
from socle.slug import slugify
from socle.store import Store, User

API_PREFIX = "/api/v1"

# Search score at or above which statement creation demands an explicit
# duplicates_reviewed acknowledgement.
DUPLICATE_REVIEW_THRESHOLD = 0.5

SHARE_TARGETS = ("reddit-style",)

_STATUS_BY_CODE = {
    "lint_failed": 422,
    "self_relation": 422,
    "draft_endpoint": 422,
    "draft_statement": 422,
    "empty_query": 422,
    "empty_body": 422,
    "body_too_long": 422,
    "invalid_username": 422,
    "invalid_credential": 422,
    "invalid_form": 422,
    "invalid_target": 422,
    "inverse_view_required": 422,
    "duplicate_relation": 409,
    "username_taken": 409,
    "wrong_status": 409,
    "review_duplicates": 409,
    "unknown_statement": 404,
    "unknown_user": 404,
    "unknown_notification": 404,
    "unauthenticated": 401,
    "invalid_login": 401,
    "session_expired": 401,
    "not_moderator": 403,
    "not_recipient": 403,
}


class ApiError(Exception):
    """HTTP-facing error with a stable machine code."""

    def __init__(self, code: str, detail: str, extra: dict | None = None):
        super().__init__(detail)
        self.code = code
        self.detail = detail
        self.extra = extra or {}

    @property
    def http_status(self) -> int:
        return _STATUS_BY_CODE[self.code]

    def response(self) -> JSONResponse:
        body = {"error": {"code": self.code, "detail": self.detail, **self.extra}}
        return JSONResponse(status_code=self.http_status, content=body)


# ---------------------------------------------------------------------------
# Sessions

SESSION_TOKEN_BYTES = 16  # 128 bits


@dataclass
class Session:
    token: str
    user_id: int
    expires_at: int  # epoch ms


class SessionManager:
    def __init__(self, ttl_days: int = 14):
        self._sessions: dict[str, Session] = {}
        self.ttl_ms = ttl_days * 24 * 3600 * 1000

    def issue(self, user_id: int) -> Session:
        token = secrets.token_urlsafe(SESSION_TOKEN_BYTES)
        session = Session(token, user_id, int(time.time() * 1000) + self.ttl_ms)
        self._sessions[token] = session
        return session

    def resolve(self, token: str) -> Optional[Session]:
        session = self._sessions.get(token)
        if session is None:
            return None
        if session.expires_at <= int(time.time() * 1000):
            del self._sessions[token]
            return None
        return session

    def revoke(self, token: str) -> None:
        self._sessions.pop(token, None)


# ---------------------------------------------------------------------------
# Request bodies

class RegisterBody(BaseModel):
    username: str
    credential: str


class LoginBody(BaseModel):
    username: str
    credential: str


class CreateStatementBody(BaseModel):
    text_normal: str
    text_negated_custom: Optional[str] = None
    duplicates_reviewed: bool = False


class AddRelationBody(BaseModel):
    child: int
    child_form: str
    parent: int
    parent_form: str
    polarity: str
    duplicates_reviewed: bool = False


class BeliefBody(BaseModel):
    form: str
    viewed_form: Optional[str] = None


class CommentBody(BaseModel):
    body: str


# ---------------------------------------------------------------------------
# Payload shaping (no statement payload ever carries an author)

def _counts_payload(counts) -> dict:
    return {"normal": counts.normal, "negated": counts.negated}


def canonical_path(statement: Statement) -> str:
    slug = slugify(statement.text_normal)
    if slug:
        return f"/statement/{statement.id}/{slug}"
    return f"/statement/{statement.id}"


def statement_payload(statement: Statement, graph: ArgumentGraph) -> dict:
    counts = graph.belief_counts(statement.id)
    payload = {
        "id": statement.id,
        "kind": statement.kind.value,
        "status": statement.status.value,
        "text_normal": statement.text_normal,
        "text_negated": statement.text_negated,
        "slug": slugify(statement.text_normal),
        "self": canonical_path(statement),
        "created_at": statement.created_at,
        "belief_counts": _counts_payload(counts),
        "comment_count": graph.comment_count(statement.id),
    }
    if statement.relation is not None:
        payload["relation"] = {
            "child": statement.relation.child,
            "child_form": statement.relation.child_form.value,
            "parent": statement.relation.parent,
            "polarity": statement.relation.polarity.value,
        }
    return payload


def view_payload(view: View, graph: ArgumentGraph) -> dict:
    statement = graph.statement(view.statement_id)

    def entry(e) -> dict:
        child = graph.statement(e.statement_id)
        return {
            "edge": e.edge_id,
            "statement": e.statement_id,
            "form": e.child_form.value,
            "text": e.rendered_text,
            "slug": slugify(child.text_normal),
            "relation_statement": e.relation_statement,
            "underlying_count": e.underlying_count,
            "belief_counts": _counts_payload(e.belief_counts),
            "status": e.status.value,
        }

    payload = {
        "statement": view.statement_id,
        "form": view.form.value,
        "kind": view.kind.value,
        "status": view.status.value,
        "rendered_text": view.rendered_text,
        "text_normal": view.text_normal,
        "text_negated": view.text_negated,
        "slug": slugify(view.text_normal),
        "self": canonical_path(statement),
        "supporting": [entry(e) for e in view.supporting],
        "opposing": [entry(e) for e in view.opposing],
        "used_in": [
            {
                "statement": u.statement_id,
                "form": u.child_form.value,
                "polarity": u.polarity.value,
                "edge": u.edge_id,
                "text": u.text_normal,
            }
            for u in view.used_in
        ],
        "belief_counts": _counts_payload(view.belief_counts),
        "comment_count": view.comment_count,
    }
    if view.relation is not None:
        payload["relation"] = {
            "child": view.relation.child,
            "child_form": view.relation.child_form.value,
            "parent": view.relation.parent,
            "polarity": view.relation.polarity.value,
        }
    return payload


def search_hit_payload(hit: SearchHit, graph: ArgumentGraph) -> dict:
    payload = statement_payload(hit.statement, graph)
    payload["score"] = hit.score
    payload["matched_form"] = hit.matched_form.value
    return payload


def _parse_form(value: str) -> Form:
    try:
        return Form(value)
    except ValueError:
        raise ApiError("invalid_form", f"{value!r} is not a statement form") from None


def _parse_polarity(value: str) -> Polarity:
    try:
        return Polarity(value)
    except ValueError:
        raise ApiError("invalid_form", f"{value!r} is not a polarity") from None


# ---------------------------------------------------------------------------
# Error contract: every endpoint with the domain codes it may emit.
# docs/api.md is generated from this table and the contract test suite
# exercises each pair. 401 unauthenticated applies to all "auth" routes
# and invalid_request (malformed body) to all POST/PUT routes.

ERROR_CONTRACT: list[tuple[str, str, str, tuple[str, ...]]] = [
    ("GET", "/statement/{id}[/{slug}]", "Representative URL; canonicalizes via 301", ("unknown_statement",)),
    ("POST", "/api/v1/auth/register", "Create an account and open a session", ("invalid_username", "username_taken", "invalid_credential")),
    ("POST", "/api/v1/auth/login", "Open a session", ("invalid_login",)),
    ("POST", "/api/v1/auth/logout", "Close the current session", ("unauthenticated",)),
    ("GET", "/api/v1/me", "Current user profile", ("unauthenticated",)),
    ("GET", "/api/v1/stats/me", "Agreement received and approved-statement counts", ("unauthenticated",)),
    ("GET", "/api/v1/statements", "Recent approved statements, newest first", ()),
    ("GET", "/api/v1/statements/{id}", "View a statement in either form", ("unknown_statement", "invalid_form")),
    ("POST", "/api/v1/statements", "Create a statement (search-first)", ("unauthenticated", "lint_failed", "review_duplicates")),
    ("POST", "/api/v1/relations", "Relate a child statement-in-form to a parent", ("unauthenticated", "unknown_statement", "self_relation", "duplicate_relation", "draft_endpoint", "invalid_form")),
    ("PUT", "/api/v1/statements/{id}/belief", "Set belief in one form (subscribes)", ("unauthenticated", "unknown_statement", "draft_statement", "inverse_view_required", "invalid_form")),
    ("DELETE", "/api/v1/statements/{id}/belief", "Retract belief (unsubscribes)", ("unauthenticated", "unknown_statement")),
    ("GET", "/api/v1/search", "Token-match search over both forms", ("empty_query",)),
    ("GET", "/api/v1/statements/{id}/comments", "List comments", ("unknown_statement",)),
    ("POST", "/api/v1/statements/{id}/comments", "Add a comment (username is public)", ("unauthenticated", "unknown_statement", "empty_body", "body_too_long")),
    ("GET", "/api/v1/inbox", "Notifications, newest first", ("unauthenticated",)),
    ("POST", "/api/v1/inbox/{id}/read", "Mark one notification read", ("unauthenticated", "unknown_notification", "not_recipient")),
    ("POST", "/api/v1/statements/{id}/approve", "Moderator: approve a draft", ("unauthenticated", "not_moderator", "unknown_statement", "wrong_status")),
    ("POST", "/api/v1/statements/{id}/demote", "Moderator: demote to draft", ("unauthenticated", "not_moderator", "unknown_statement", "wrong_status")),
    ("GET", "/api/v1/moderation/drafts", "Moderator: drafts awaiting review, oldest first", ("unauthenticated", "not_moderator")),
    ("GET", "/api/v1/statements/{id}/share-link", "Compose an external submission link", ("unknown_statement", "invalid_target")),
    ("GET", "/api/v1/export/graph", "Graph export (json or dot)", ("invalid_form",)),
    ("GET", "/api/v1/healthz", "Liveness probe", ()),
]


def create_app(store: Store, config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    sessions = SessionManager(ttl_days=config.session_ttl_days)
    app = FastAPI(title="socle", openapi_url=f"{API_PREFIX}/openapi.json")
    app.state.store = store
    app.state.sessions = sessions
    app.state.config = config

    from fastapi.middleware.cors import CORSMiddleware

    # The web client may be served from any static host.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # -- error translation ------------------------------------------------

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return exc.response()

    @app.exception_handler(SocleError)
    async def _domain_error(request: Request, exc: SocleError):
        return ApiError(exc.code, exc.detail, _error_extra(exc)).response()

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"code": "invalid_request", "detail": str(exc.errors())}},
        )

    # -- auth helpers ------------------------------------------------------

    def current_user(request: Request) -> User:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            raise ApiError("unauthenticated", "missing bearer token")
        session = sessions.resolve(header[7:].strip())
        if session is None:
            raise ApiError("unauthenticated", "unknown or expired session")
        return store.get_user(session.user_id)

    def optional_user(request: Request) -> Optional[User]:
        header = request.headers.get("authorization", "")
        if not header.lower().startswith("bearer "):
            return None
        session = sessions.resolve(header[7:].strip())
        return store.get_user(session.user_id) if session else None

    def moderator(user: User = Depends(current_user)) -> User:
        if not user.is_moderator:
            raise ApiError("not_moderator", f"user {user.username!r} is not a moderator")
        return user

    def _session_payload(user: User, session: Session) -> dict:
        return {
            "token": session.token,
            "expires_at": session.expires_at,
            "user": {
                "id": user.id,
                "username": user.username,
                "is_moderator": user.is_moderator,
            },
        }

    # -- deep links --------------------------------------------------------

    @app.get("/statement/{statement_id}")
    @app.get("/statement/{statement_id}/{slug}")
    def route_statement(
        request: Request,
        statement_id: int,
        slug: str | None = None,
        form: str = "normal",
    ):
        statement = store.statement(statement_id)
        canonical = canonical_path(statement)
        requested = f"/statement/{statement_id}" + (f"/{slug}" if slug else "")
        if requested != canonical:
            target = canonical
            if request.url.query:
                target += f"?{request.url.query}"
            return RedirectResponse(target, status_code=301)
        if config.ui_dir and "text/html" in request.headers.get("accept", ""):
            # Browsers get the web client at the same representative URL;
            # API consumers get the View payload.
            from fastapi.responses import FileResponse

            return FileResponse(f"{config.ui_dir}/index.html")
        view = store.view(statement_id, _parse_form(form))
        payload = view_payload(view, store.graph)
        user = optional_user(request)
        if user is not None:
            belief = store.belief_of(user.id, statement_id)
            payload["your_belief"] = {"form": belief.form.value} if belief else None
        return payload

    # -- auth ----------------------------------------------------------------

    @app.post(f"{API_PREFIX}/auth/register", status_code=201)
    def register(body: RegisterBody):
        user = store.register(body.username, body.credential)
        return _session_payload(user, sessions.issue(user.id))

    @app.post(f"{API_PREFIX}/auth/login")
    def login(body: LoginBody):
        user = store.authenticate(body.username, body.credential)
        if user is None:
            raise ApiError("invalid_login", "unknown username or wrong credential")
        return _session_payload(user, sessions.issue(user.id))

    @app.post(f"{API_PREFIX}/auth/logout")
    def logout(request: Request, user: User = Depends(current_user)):
        sessions.revoke(request.headers["authorization"][7:].strip())
        return {"ok": True}

    @app.get(f"{API_PREFIX}/me")
    def me(user: User = Depends(current_user)):
        agreement, approved = store.user_stats(user.id)
        return {
            "id": user.id,
            "username": user.username,
            "is_moderator": user.is_moderator,
            "agreement_received": agreement,
            "approved_statements": approved,
            "unread_notifications": store.unread_count(user.id),
        }

    @app.get(f"{API_PREFIX}/stats/me")
    def stats_me(user: User = Depends(current_user)):
        agreement, approved = store.user_stats(user.id)
        return {"agreement_received": agreement, "approved_statements": approved}

    # -- statements ----------------------------------------------------------

    @app.get(f"{API_PREFIX}/statements")
    def list_statements(limit: int = 20, kind: str = "plain"):
        recent = store.recent_statements(limit, kind)
        return {"statements": [statement_payload(s, store.graph) for s in recent]}

    @app.get(f"{API_PREFIX}/statements/{{statement_id}}")
    def get_statement(request: Request, statement_id: int, form: str = "normal"):
        view = store.view(statement_id, _parse_form(form))
        payload = view_payload(view, store.graph)
        user = optional_user(request)
        if user is not None:
            belief = store.belief_of(user.id, statement_id)
            payload["your_belief"] = {"form": belief.form.value} if belief else None
        return payload

    @app.post(f"{API_PREFIX}/statements", status_code=201)
    def create_statement(body: CreateStatementBody, user: User = Depends(current_user)):
        if not body.duplicates_reviewed:
            candidates = _duplicate_candidates(store, body.text_normal)
            if candidates:
                raise ApiError(
                    "review_duplicates",
                    "similar statements exist; review them or set duplicates_reviewed",
                    {"candidates": candidates},
                )
        statement = store.submit_statement(
            user.id, body.text_normal, body.text_negated_custom
        )
        return statement_payload(statement, store.graph)

    @app.post(f"{API_PREFIX}/relations", status_code=201)
    def add_relation(body: AddRelationBody, user: User = Depends(current_user)):
        edge, relation = store.add_relation(
            user.id,
            body.child,
            _parse_form(body.child_form),
            body.parent,
            _parse_form(body.parent_form),
            _parse_polarity(body.polarity),
        )
        return {
            "edge": {
                "id": edge.id,
                "child": edge.child,
                "child_form": edge.child_form.value,
                "parent": edge.parent,
                "polarity": edge.polarity.value,
                "relation_statement": edge.relation_statement,
                "created_at": edge.created_at,
            },
            "relation_statement": (
                statement_payload(relation, store.graph) if relation else None
            ),
        }

    # -- beliefs ---------------------------------------------------------

    @app.put(f"{API_PREFIX}/statements/{{statement_id}}/belief")
    def set_belief(
        request: Request,
        statement_id: int,
        body: BeliefBody,
        user: User = Depends(current_user),
    ):
        form = _parse_form(body.form)
        if form is Form.NEGATED:
            attested = body.viewed_form or request.headers.get("x-viewed-form")
            if attested != Form.NEGATED.value:
                raise ApiError(
                    "inverse_view_required",
                    "belief in the negated form requires viewing the inverse "
                    "first; send viewed_form=negated",
                )
        belief = store.set_belief(user.id, statement_id, form)
        counts = store.graph.belief_counts(statement_id)
        return {
            "statement": statement_id,
            "form": belief.form.value,
            "belief_counts": _counts_payload(counts),
        }

    @app.delete(f"{API_PREFIX}/statements/{{statement_id}}/belief")
    def delete_belief(statement_id: int, user: User = Depends(current_user)):
        store.remove_belief(user.id, statement_id)
        counts = store.graph.belief_counts(statement_id)
        return {
            "statement": statement_id,
            "form": None,
            "belief_counts": _counts_payload(counts),
        }

    # -- search ----------------------------------------------------------

    @app.get(f"{API_PREFIX}/search")
    def search(q: str = "", limit: int = 20):
        hits = store.search(q, limit)
        return {"results": [search_hit_payload(h, store.graph) for h in hits]}

    # -- comments ----------------------------------------------------------

    @app.get(f"{API_PREFIX}/statements/{{statement_id}}/comments")
    def list_comments(statement_id: int):
        comments = store.comments_for(statement_id)
        return {
            "comments": [
                {
                    "id": c.id,
                    "statement": c.statement,
                    "author_username": c.author_username,
                    "body": c.body,
                    "created_at": c.created_at,
                }
                for c in comments
            ]
        }

    @app.post(f"{API_PREFIX}/statements/{{statement_id}}/comments", status_code=201)
    def add_comment(
        statement_id: int, body: CommentBody, user: User = Depends(current_user)
    ):
        comment = store.add_comment(user.id, statement_id, body.body)
        return {
            "id": comment.id,
            "statement": comment.statement,
            "author_username": comment.author_username,
            "body": comment.body,
            "created_at": comment.created_at,
        }

    # -- inbox -------------------------------------------------------------

    @app.get(f"{API_PREFIX}/inbox")
    def inbox(user: User = Depends(current_user)):
        notifications = store.inbox(user.id)
        return {
            "unread": sum(1 for n in notifications if not n.read),
            "notifications": [
                {
                    "id": n.id,
                    "kind": n.kind,
                    "subject": n.subject,
                    "ref": n.ref,
                    "new_status": n.new_status,
                    "read": n.read,
                    "created_at": n.created_at,
                }
                for n in notifications
            ],
        }

    @app.post(f"{API_PREFIX}/inbox/{{notification_id}}/read")
    def mark_read(notification_id: int, user: User = Depends(current_user)):
        store.mark_read(user.id, notification_id)
        return {"ok": True}

    # -- moderation ---------------------------------------------------------

    @app.post(f"{API_PREFIX}/statements/{{statement_id}}/approve")
    def approve(statement_id: int, user: User = Depends(moderator)):
        statement = store.approve(user.id, statement_id)
        return statement_payload(statement, store.graph)

    @app.post(f"{API_PREFIX}/statements/{{statement_id}}/demote")
    def demote(statement_id: int, user: User = Depends(moderator)):
        statement = store.demote(user.id, statement_id)
        return statement_payload(statement, store.graph)

    @app.get(f"{API_PREFIX}/moderation/drafts")
    def moderation_drafts(user: User = Depends(moderator)):
        return {
            "drafts": [statement_payload(s, store.graph) for s in store.list_drafts()]
        }

    # -- sharing and export --------------------------------------------------

    @app.get(f"{API_PREFIX}/statements/{{statement_id}}/share-link")
    def share_link(statement_id: int, target: str = "reddit-style"):
        if target not in SHARE_TARGETS:
            raise ApiError("invalid_target", f"unknown share target {target!r}")
        statement = store.statement(statement_id)
        deep_link = config.resolved_public_base + canonical_path(statement)
        url = (
            f"{config.share_base}"
            f"?title={quote(statement.text_normal, safe='')}"
            f"&url={quote(deep_link, safe='')}"
        )
        return {"url": url, "title": statement.text_normal, "link": deep_link}

    @app.get(f"{API_PREFIX}/export/graph")
    def export_graph(format: str = "json"):
        if format == "json":
            return store.export_graph_json()
        if format == "dot":
            return Response(
                content=store.export_graph_dot(), media_type="text/vnd.graphviz"
            )
        raise ApiError("invalid_form", f"unknown export format {format!r}")

    @app.get(f"{API_PREFIX}/healthz")
    def healthz():
        return {"status": "ok"}

    if config.ui_dir:
        _mount_ui(app, config.ui_dir)

    return app


def _error_extra(exc: SocleError) -> dict:
    report = getattr(exc, "report", None)
    if report is not None:
        return {"lint_report": report.to_dict()}
    return {}


def _duplicate_candidates(store: Store, text_normal: str) -> list[dict]:
    query = text_normal.strip()
    if not query:
        return []  # lint will reject the empty text with a proper report
    hits = store.search(query, limit=5)
    strong = [h for h in hits if h.score >= DUPLICATE_REVIEW_THRESHOLD]
    return [search_hit_payload(h, store.graph) for h in strong]


def _mount_ui(app: FastAPI, ui_dir: str) -> None:
    """Serve the built web client next to the API (optional).

    ``ui_dir`` is the client's dist/ directory: index.html at its root
    and the module assets under dist/ui/.
    """
    from fastapi.responses import FileResponse
    from fastapi.staticfiles import StaticFiles

    @app.get("/", include_in_schema=False)
    def ui_root():
        return FileResponse(f"{ui_dir}/index.html")

    @app.get("/inbox", include_in_schema=False)
    @app.get("/moderation", include_in_schema=False)
    def ui_page():
        return FileResponse(f"{ui_dir}/index.html")

    app.mount("/ui", StaticFiles(directory=f"{ui_dir}/ui"), name="ui")


def generate_api_reference() -> str:
    """Render docs/api.md from the error contract table."""
    lines = [
        "# HTTP API reference",
        "",
        "All endpoints speak JSON (UTF-8); timestamps are epoch milliseconds.",
        "Authenticated routes take `Authorization: Bearer <token>` from",
        "`/api/v1/auth/login`. Errors are shaped",
        '`{"error": {"code": <machine code>, "detail": <human text>}}`;',
        "the per-endpoint codes below are frozen. Two codes are global:",
        "`invalid_request` (422) for malformed bodies on any POST/PUT route,",
        "and `unauthenticated` (401) wherever a session is required.",
        "",
        "| Method | Path | Purpose | Error codes |",
        "|--------|------|---------|-------------|",
    ]
    for method, path, purpose, codes in ERROR_CONTRACT:
        rendered = ", ".join(f"`{c}` ({_STATUS_BY_CODE[c]})" for c in codes) or "—"
        lines.append(f"| {method} | `{path}` | {purpose} | {rendered} |")
    lines += [
        "",
        "Statement payloads never include an author; comments always carry",
        "the author's username. A search-first create with a near-duplicate",
        "match returns `review_duplicates` (409) with a `candidates` array",
        f"at score ≥ {DUPLICATE_REVIEW_THRESHOLD}.",
        "",
    ]
    return "\n".join(lines)
