"""URL slug generation for representative statement URLs."""

from __future__ import annotations

MAX_SLUG_LEN = 80


def slugify(text: str) -> str:
    """Turn statement text into a lowercase hyphenated slug.

    Every maximal run of non-alphanumeric characters collapses to one
    hyphen, leading/trailing hyphens are trimmed, and the result is cut
    to MAX_SLUG_LEN characters without splitting a token. An empty result
    is valid; routing then falls back to the id-only URL.
    """
    tokens: list[str] = []
    current: list[str] = []
    for ch in text.lower():
        if ch.isalnum():
            current.append(ch)
        elif current:
            tokens.append("".join(current))
            current = []
    if current:
        tokens.append("".join(current))

    if not tokens:
        return ""

    out = tokens[0]
    if len(out) > MAX_SLUG_LEN:
        # A single token longer than the cap cannot be kept whole.
        return out[:MAX_SLUG_LEN]
    for token in tokens[1:]:
        if len(out) + 1 + len(token) > MAX_SLUG_LEN:
            break
        out = f"{out}-{token}"
    return out
