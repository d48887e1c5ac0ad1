"""Shared tokenization helpers.

One word-token convention is used across the whole toolkit: a token is a
maximal run of Unicode letters, optionally joined by internal apostrophes
or hyphens ("state's", "cross-examine"). Digits and punctuation are never
part of a word token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Letters only (no digits, no underscore), with internal ' or - joiners.
WORD_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")

# Word tokens plus clause-level punctuation, used by the sentence splitter.
RICH_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*|[,;:.!?]")


@dataclass(frozen=True)
class Token:
    """A word token with its character offsets in the source string."""

    text: str
    start: int
    end: int


def word_tokens(text: str) -> list[Token]:
    """All word tokens of ``text`` with character offsets, left to right."""
    return [Token(m.group(0), m.start(), m.end()) for m in WORD_RE.finditer(text)]


def words(text: str) -> list[str]:
    """Word token surfaces of ``text`` (original case)."""
    return WORD_RE.findall(text)


def corpus_tokens(text: str) -> list[str]:
    """Lowercased word tokens, the counting convention for corpora."""
    return [w.lower() for w in WORD_RE.findall(text)]


def splice(text: str, replacements: list[tuple[int, int, str]]) -> str:
    """Replace non-overlapping character ranges of ``text``.

    ``replacements`` holds ``(start, end, new_text)`` triples; ranges must not
    overlap but may be given in any order.
    """
    out = []
    cursor = 0
    for start, end, new in sorted(replacements):
        if start < cursor:
            raise ValueError(f"overlapping replacement at {start}")
        out.append(text[cursor:start])
        out.append(new)
        cursor = end
    out.append(text[cursor:])
    return "".join(out)


def capitalize_first(text: str) -> str:
    """Upper-case the first alphabetic character, leaving the rest intact."""
    for i, ch in enumerate(text):
        if ch.isalpha():
            return text[:i] + ch.upper() + text[i + 1 :]
    return text
