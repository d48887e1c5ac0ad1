"""Readability and semantic-preservation metrics.

FKGL and Dale-Chall run on heuristic sentence/word/syllable counts with no
model dependencies; the semantic-difference score compares mean-pooled
embedding vectors of sliding five-token windows between the original and the
simplified text and maps the similarity onto a 0..12 scale (0 = meaning
fully preserved).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .textutils import words


class MetricError(ValueError):
    """Raised when a metric is undefined for its input."""


# --- sentence boundaries ----------------------------------------------------

# Legal-citation abbreviations that end with a period mid-sentence.
_ABBREVIATIONS = {
    "v", "vs", "no", "nos", "mr", "mrs", "ms", "dr", "jr", "sr", "st",
    "inc", "co", "corp", "ltd", "stat", "sec", "art", "fig", "ch", "cl",
    "dept", "dist", "div", "ed", "rev", "supp", "cir", "ct", "fed", "reg",
    "etc", "al", "seq", "cf", "id", "ibid", "approx",
}

_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s|$)")


def split_sentences(text: str) -> list[str]:
    """Split on terminal punctuation, skipping abbreviation periods.

    Single-letter initials ("John D. Smith", "U.S.") and the abbreviation
    stop-list never end a sentence; neither does a period followed by a
    lowercase letter.
    """
    sentences = []
    start = 0
    for match in _BOUNDARY_RE.finditer(text):
        if "." in match.group(0):
            before = text[: match.start()]
            token = re.search(r"[\w'’-]+$", before)
            prev = token.group(0).lower() if token else ""
            rest = text[match.end() :].lstrip()
            if prev in _ABBREVIATIONS or (len(prev) == 1 and prev.isalpha()):
                continue
            if rest[:1].isalpha() and rest[:1].islower():
                continue
        chunk = text[start : match.end()].strip()
        if chunk:
            sentences.append(chunk)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


# --- syllables ----------------------------------------------------------------

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")
# y between vowels acts as a consonant boundary ("beyond", "buyer")
_INTERVOCALIC_Y_RE = re.compile(r"(?<=[aeiou])y(?=[aeiou])")
# silent e swallowed by common suffixes ("homeless", "likely", "careful")
_SUFFIX_E_RE = re.compile(r"e(?=(?:less(?:ly)?|ness|ful(?:ly)?|ly)$)")
_KEEP_FINAL_E = ("ee", "ie", "ye", "oe", "ue")
# -es stays syllabic after sibilants and soft consonants ("cases", "judges")
_SYLLABIC_ES = "sxzhcgu"


def _final_e_silent(w: str) -> bool:
    if not w.endswith("e") or w.endswith(_KEEP_FINAL_E):
        return False
    # consonant + "le" is its own syllable ("table"); vowel + "le" is not ("rule")
    if w.endswith("le") and len(w) > 2 and w[-3] not in "aeiouy":
        return False
    return True


def count_syllables(word: str) -> int:
    """Heuristic syllable count: vowel groups with silent-ending adjustments."""
    if not word or not word.isalpha():
        raise MetricError(f"not an alphabetic word: {word!r}")
    w = _INTERVOCALIC_Y_RE.sub("|", word.lower())
    w = _SUFFIX_E_RE.sub("", w)
    n = len(_VOWEL_GROUP_RE.findall(w))
    if n > 1 and _final_e_silent(w):
        n -= 1
    elif n > 1 and w.endswith("ed") and not w.endswith(("ted", "ded", "eed", "ied")):
        n -= 1
    elif n > 1 and w.endswith("es") and len(w) > 3 and w[-3] not in _SYLLABIC_ES:
        n -= 1
    return max(n, 1)


def _token_syllables(token: str) -> int:
    """Syllables of a raw word token, summing over hyphen/apostrophe parts."""
    total = 0
    for part in re.split(r"['’-]", token):
        if part.isalpha():
            total += count_syllables(part)
    return max(total, 1)


# --- readability -------------------------------------------------------------


@dataclass(frozen=True)
class ReadabilityReport:
    fkgl: float
    dc: float
    sd: float | None
    n_sentences: int
    n_words: int
    n_syllables: int
    n_difficult_words: int

    def to_dict(self) -> dict:
        return {
            "fkgl": self.fkgl,
            "dc": self.dc,
            "sd": self.sd,
            "counts": {
                "sentences": self.n_sentences,
                "words": self.n_words,
                "syllables": self.n_syllables,
                "difficult_words": self.n_difficult_words,
            },
        }


def _counts(text: str) -> tuple[int, int, int, list[str]]:
    sentence_count = len(split_sentences(text))
    tokens = words(text)
    if sentence_count == 0 or not tokens:
        raise MetricError("text must contain at least one sentence and one word")
    syllables = sum(_token_syllables(t) for t in tokens)
    return sentence_count, len(tokens), syllables, tokens


def fkgl(text: str) -> float:
    """Flesch-Kincaid grade level: 0.39 w/s + 11.8 syl/w - 15.59."""
    n_s, n_w, n_syl, _ = _counts(text)
    return 0.39 * (n_w / n_s) + 11.8 * (n_syl / n_w) - 15.59


@dataclass(frozen=True)
class FamiliarWordList:
    """Everyday-word inventory used by the Dale-Chall difficult-word count."""

    familiar: frozenset[str]

    def __post_init__(self):
        if not self.familiar:
            raise ValueError("familiar word list must be non-empty")

    @classmethod
    def from_file(cls, path: str | Path) -> "FamiliarWordList":
        entries = set()
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw.strip()
            if line and not line.startswith("#"):
                entries.add(line.lower())
        return cls(frozenset(entries))

    def __contains__(self, word: str) -> bool:
        w = word.lower()
        if w in self.familiar:
            return True
        # possessives reduce to their base word
        for suffix in ("'s", "’s"):
            if w.endswith(suffix) and w[: -len(suffix)] in self.familiar:
                return True
        return False


def dale_chall(text: str, familiar: FamiliarWordList, ratio_form: bool = False) -> float:
    """Dale-Chall score from the share of unfamiliar words and sentence length.

    The conventional percentage form is the default; ``ratio_form`` switches
    the first term to the raw fraction of difficult words.
    """
    n_s, n_w, _, tokens = _counts(text)
    n_dw = sum(1 for t in tokens if t not in familiar)
    difficult_term = (n_dw / n_w) if ratio_form else (100.0 * n_dw / n_w)
    return 0.1579 * difficult_term + 0.0496 * (n_w / n_s)


def difficult_word_count(text: str, familiar: FamiliarWordList) -> int:
    _, _, _, tokens = _counts(text)
    return sum(1 for t in tokens if t not in familiar)


# --- semantic difference ------------------------------------------------------

WINDOW_SIZE = 5


def _window_vectors(
    tokens: list[str], embeddings: dict[str, np.ndarray]
) -> list[tuple[tuple[str, ...], np.ndarray]]:
    """(window token tuple, mean vector) for every stride-1 window with at
    least one in-vocabulary word."""
    if len(tokens) <= WINDOW_SIZE:
        windows = [tokens] if tokens else []
    else:
        windows = [tokens[i : i + WINDOW_SIZE] for i in range(len(tokens) - WINDOW_SIZE + 1)]
    out = []
    for window in windows:
        vecs = [embeddings[w] for w in window if w in embeddings]
        if vecs:
            out.append((tuple(window), np.mean(vecs, axis=0)))
    return out


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    denom = float(np.dot(a, a)) * float(np.dot(b, b))
    if denom == 0.0:
        return 0.0
    value = float(np.dot(a, b)) / denom**0.5
    return max(-1.0, min(1.0, value))


def semantic_difference(
    original: str, output: str, embeddings: dict[str, np.ndarray]
) -> float:
    """Embedding distance between texts on a 0..12 scale.

    Each output window is matched against its most similar input window;
    the averaged similarity is mapped through ``6 * (1 - sim)``. Identical
    windows count as similarity 1 exactly, so SD(x, x) == 0.
    """
    orig_tokens = [w.lower() for w in words(original)]
    out_tokens = [w.lower() for w in words(output)]
    orig_windows = _window_vectors(orig_tokens, embeddings)
    out_windows = _window_vectors(out_tokens, embeddings)
    if not orig_windows or not out_windows:
        raise MetricError("no in-vocabulary windows to compare")
    maxima = []
    for out_key, out_vec in out_windows:
        best = -1.0
        for orig_key, orig_vec in orig_windows:
            sim = 1.0 if out_key == orig_key else _cosine(out_vec, orig_vec)
            if sim > best:
                best = sim
        maxima.append(best)
    sim_mean = sum(maxima) / len(maxima)
    return 6.0 * (1.0 - sim_mean)


def readability_report(
    original: str,
    output: str,
    familiar: FamiliarWordList,
    embeddings: dict[str, np.ndarray] | None = None,
    ratio_form: bool = False,
) -> ReadabilityReport:
    """Full metric report for one output text against its original."""
    n_s, n_w, n_syl, tokens = _counts(output)
    n_dw = sum(1 for t in tokens if t not in familiar)
    sd = None
    if embeddings is not None:
        sd = semantic_difference(original, output, embeddings)
    return ReadabilityReport(
        fkgl=fkgl(output),
        dc=dale_chall(output, familiar, ratio_form),
        sd=sd,
        n_sentences=n_s,
        n_words=n_w,
        n_syllables=n_syl,
        n_difficult_words=n_dw,
    )
