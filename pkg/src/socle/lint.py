"""Guideline linting for candidate statement texts.

Errors block creation; warnings never do. The checks implement the three
site guidelines: statements must be concise, aim to be free of context,
and must not be phrased as questions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from socle.model import MAX_TEXT_LEN

# Context-dependent words that hurt statement reuse. Whole-word matches
# produce warnings; the set can be extended by callers.
DEFAULT_INDEXICAL_WORDS = frozenset(
    {
        "i", "me", "my", "we", "us", "our", "you", "your",
        "this", "that", "these", "those", "it", "here", "there", "also",
    }
)

# Conjunction markers suggesting the text should be split in two.
_CONJUNCTION_TOKENS = (" and ", " but ", ";")


class LintError(str, Enum):
    EMPTY_TEXT = "empty_text"
    TOO_LONG = "too_long"
    IS_QUESTION = "is_question"


@dataclass
class LintWarning:
    kind: str  # "indexical_reference" | "conjunction_candidate"
    token: str
    position: int


@dataclass
class LintReport:
    errors: list[LintError] = field(default_factory=list)
    warnings: list[LintWarning] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict:
        return {
            "errors": [e.value for e in self.errors],
            "warnings": [
                {"kind": w.kind, "token": w.token, "position": w.position}
                for w in self.warnings
            ],
        }


def lint_statement_text(
    text: str,
    *,
    max_len: int = MAX_TEXT_LEN,
    indexical_words: frozenset[str] = DEFAULT_INDEXICAL_WORDS,
) -> LintReport:
    """Check one candidate statement text against the site guidelines.

    Length, emptiness and the question check apply to the trimmed text;
    warning positions are offsets into the text as given.
    """
    report = LintReport()
    trimmed = text.strip()

    if not trimmed:
        report.errors.append(LintError.EMPTY_TEXT)
        return report
    if len(trimmed) > max_len:
        report.errors.append(LintError.TOO_LONG)
    if trimmed.endswith("?"):
        report.errors.append(LintError.IS_QUESTION)

    lowered = text.lower()
    for match in re.finditer(r"[a-z]+", lowered):
        if match.group() in indexical_words:
            report.warnings.append(
                LintWarning("indexical_reference", match.group(), match.start())
            )
    for token in _CONJUNCTION_TOKENS:
        start = 0
        while True:
            pos = lowered.find(token, start)
            if pos < 0:
                break
            bare = token.strip() or token
            report.warnings.append(
                LintWarning("conjunction_candidate", bare, pos + (1 if token[0] == " " else 0))
            )
            start = pos + 1

    report.warnings.sort(key=lambda w: w.position)
    return report
