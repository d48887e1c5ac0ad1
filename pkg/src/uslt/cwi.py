"""Complex word identification.

A word is complex when it is rare in everyday language (its general-corpus
Zipf value falls more than k standard deviations below that corpus' mean) or
when it is used far more in the legal corpus than in the general one. A fixed
list of multi-word legal expressions is appended on top of the two rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .frequency import ZipfTable

RULE_GENERAL = "rule1"
RULE_DOMAIN = "rule2"
PHRASE_LIST = "phrase-list"


@dataclass(frozen=True)
class CwiConfig:
    """Multipliers for the two complexity thresholds (2.0 in the reference setup)."""

    k_general: float = 2.0
    k_domain: float = 2.0

    def __post_init__(self):
        if self.k_general <= 0 or self.k_domain <= 0:
            raise ValueError("threshold multipliers must be positive")


@dataclass(frozen=True)
class TokenSpan:
    """Half-open token range [start, end) with its surface text."""

    start: int
    end: int
    surface: str

    def __post_init__(self):
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span [{self.start}, {self.end})")


@dataclass
class ComplexWordLexicon:
    complex_words: set[str] = field(default_factory=set)
    complex_phrases: set[tuple[str, ...]] = field(default_factory=set)
    provenance: dict[str | tuple[str, ...], str] = field(default_factory=dict)

    def is_exempt_from_ne(self, word: str) -> bool:
        return self.provenance.get(word) == PHRASE_LIST


def read_entry_file(path: str | Path) -> list[str]:
    """Entries from a UTF-8 list file, one per line, ``#`` comments allowed."""
    entries = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            entries.append(line)
    return entries


def build_complex_lexicon(
    zipf_general: ZipfTable,
    zipf_legal: ZipfTable,
    phrase_file: str | Path | None = None,
    config: CwiConfig = CwiConfig(),
) -> ComplexWordLexicon:
    """Apply both rarity rules over the two vocabularies and append the phrase list.

    Rule 1 flags words whose general Zipf value (count-0 fallback for words
    absent there) is below ``mean - k_general * std`` of the general table.
    Rule 2 flags words present in both tables whose general value is below
    their legal value minus ``k_domain`` legal standard deviations.
    """
    if len(zipf_general) == 0 or len(zipf_legal) == 0:
        raise ValueError("both Zipf tables must be non-empty")
    lexicon = ComplexWordLexicon()
    rarity_cut = zipf_general.mean - config.k_general * zipf_general.std
    for word in set(zipf_general.zipf) | set(zipf_legal.zipf):
        z_s = zipf_general.value(word)
        if z_s < rarity_cut:
            lexicon.complex_words.add(word)
            lexicon.provenance[word] = RULE_GENERAL
        elif word in zipf_general and word in zipf_legal:
            if z_s < zipf_legal.zipf[word] - config.k_domain * zipf_legal.std:
                lexicon.complex_words.add(word)
                lexicon.provenance[word] = RULE_DOMAIN
    if phrase_file is not None:
        for entry in read_entry_file(phrase_file):
            tokens = tuple(entry.lower().split())
            if len(tokens) >= 2:
                lexicon.complex_phrases.add(tokens)
                lexicon.provenance[tokens] = PHRASE_LIST
            else:
                lexicon.complex_words.add(tokens[0])
                lexicon.provenance[tokens[0]] = PHRASE_LIST
    return lexicon


def default_ne_tags(tokens: list[str], gazetteer: frozenset[str] | set[str] = frozenset()) -> list[bool]:
    """Heuristic named-entity flags: capitalized off sentence start, or listed."""
    tags = []
    for i, tok in enumerate(tokens):
        in_gazetteer = tok.lower() in gazetteer
        capitalized = i > 0 and tok[:1].isupper()
        tags.append(capitalized or in_gazetteer)
    return tags


def identify_complex_spans(
    tokens: list[str],
    lexicon: ComplexWordLexicon,
    ne_tags: list[bool],
) -> list[TokenSpan]:
    """Complex spans of a tokenized sentence, disjoint and sorted by start.

    Multi-word phrases are matched first (case-insensitive, longest match,
    left to right); remaining single complex words are kept unless tagged as
    named entities. Phrase-list entries ignore the NE tags.
    """
    if len(ne_tags) != len(tokens):
        raise ValueError("ne_tags length must equal tokens length")
    lower = [t.lower() for t in tokens]
    by_first: dict[str, list[tuple[str, ...]]] = {}
    for phrase in lexicon.complex_phrases:
        by_first.setdefault(phrase[0], []).append(phrase)
    for plist in by_first.values():
        plist.sort(key=len, reverse=True)

    spans: list[TokenSpan] = []
    covered = [False] * len(tokens)
    i = 0
    while i < len(tokens):
        matched = None
        for phrase in by_first.get(lower[i], ()):
            if tuple(lower[i : i + len(phrase)]) == phrase:
                matched = phrase
                break
        if matched is not None:
            end = i + len(matched)
            spans.append(TokenSpan(i, end, " ".join(tokens[i:end])))
            for j in range(i, end):
                covered[j] = True
            i = end
        else:
            i += 1

    for i, word in enumerate(lower):
        if covered[i] or word not in lexicon.complex_words:
            continue
        if ne_tags[i] and not lexicon.is_exempt_from_ne(word):
            continue
        spans.append(TokenSpan(i, i + 1, tokens[i]))
    return sorted(spans, key=lambda s: s.start)


LEX_TAG = "# uslt-lexicon v1"


def write_lexicon(lexicon: ComplexWordLexicon, path: str | Path) -> None:
    lines = [
        LEX_TAG,
        f"# words={len(lexicon.complex_words)}",
        f"# phrases={len(lexicon.complex_phrases)}",
    ]
    for word in sorted(lexicon.complex_words):
        lines.append(f"{word}\tword\t{lexicon.provenance.get(word, '')}")
    for phrase in sorted(lexicon.complex_phrases):
        lines.append(f"{' '.join(phrase)}\tphrase\t{lexicon.provenance.get(phrase, '')}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_lexicon(path: str | Path) -> ComplexWordLexicon:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith(LEX_TAG):
        raise ValueError(f"{path}: not a lexicon file")
    lexicon = ComplexWordLexicon()
    for line in lines[3:]:
        if not line.strip():
            continue
        entry, kind, tag = line.split("\t")
        if kind == "phrase":
            phrase = tuple(entry.split())
            lexicon.complex_phrases.add(phrase)
            lexicon.provenance[phrase] = tag
        else:
            lexicon.complex_words.add(entry)
            lexicon.provenance[entry] = tag
    return lexicon
