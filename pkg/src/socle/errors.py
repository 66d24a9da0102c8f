"""Domain errors shared by the graph engine, the store, and the API.

Every error carries a stable machine ``code`` so the HTTP layer and the
CLI can map it without string matching on messages.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from socle.lint import LintReport


class SocleError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.__class__.__name__)
        self.detail = detail or self.__class__.__name__


class LintFailed(SocleError):
    code = "lint_failed"

    def __init__(self, report: "LintReport", detail: str = ""):
        super().__init__(detail or "statement text violates the guidelines")
        self.report = report


class UnknownStatement(SocleError):
    code = "unknown_statement"


class SelfRelation(SocleError):
    code = "self_relation"


class DuplicateRelation(SocleError):
    code = "duplicate_relation"


class DraftEndpoint(SocleError):
    code = "draft_endpoint"


class EmptyQuery(SocleError):
    code = "empty_query"


class UsernameTaken(SocleError):
    code = "username_taken"


class InvalidUsername(SocleError):
    code = "invalid_username"


class InvalidCredential(SocleError):
    code = "invalid_credential"


class UnknownUser(SocleError):
    code = "unknown_user"


class DraftStatement(SocleError):
    code = "draft_statement"


class EmptyBody(SocleError):
    code = "empty_body"


class BodyTooLong(SocleError):
    code = "body_too_long"


class NotModerator(SocleError):
    code = "not_moderator"


class WrongStatus(SocleError):
    code = "wrong_status"


class NotRecipient(SocleError):
    code = "not_recipient"


class UnknownNotification(SocleError):
    code = "unknown_notification"


class SchemaMismatch(SocleError):
    code = "schema_mismatch"


class IntegrityViolation(SocleError):
    code = "integrity_violation"


class StoreLocked(SocleError):
    code = "store_locked"


class StoreNotEmpty(SocleError):
    code = "store_not_empty"
