"""Candidate elimination, feature scoring and substitution.

Survivor candidates are scored with five weighted features: the LM fill
probability, embedding cosine similarity to the original word, the inverse
summed masked-LM loss of the surrounding window, the general-corpus Zipf
value, and a brevity-law length feature. The highest scoring survivor
replaces the complex span.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .candidates import MaskedLmProvider, ProviderError
from .cwi import ComplexWordLexicon, TokenSpan
from .frequency import ZipfTable
from .textutils import splice, word_tokens

log = logging.getLogger(__name__)

# Brevity law: word frequency conditioned on length decays as a power of the
# length. With decay exponents 1.4 (dense technical domains) and 2.75
# (short-word domains) and a fit constant of 2.8, the candidate-length
# feature becomes length ** (2.8 * (1.4 - 2.75)).
LENGTH_EXPONENT = 2.8 * (1.4 - 2.75)  # == -3.78

DEFAULT_FLM_CAP = 10.0


@dataclass(frozen=True)
class CandidateFeatures:
    f_b: float  # LM probability of the candidate token
    f_c: float  # cosine similarity to the original word
    f_lm: float  # inverse summed window loss
    f_f: float  # general-corpus Zipf value
    f_l: float  # length ** -3.78


@dataclass(frozen=True)
class RankingWeights:
    """Feature weights; the defaults are the tuned reference values."""

    w_b: float = 3.00
    w_c: float = 1.42
    w_lm: float = 0.36
    w_f: float = 2.00
    w_l: float = 4.61

    def scaled(self, factor: float) -> "RankingWeights":
        return RankingWeights(
            self.w_b * factor,
            self.w_c * factor,
            self.w_lm * factor,
            self.w_f * factor,
            self.w_l * factor,
        )

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.w_b, self.w_c, self.w_lm, self.w_f, self.w_l)


WEIGHT_KEYS = ("w_b", "w_c", "w_lm", "w_f", "w_l")


def write_weights(weights: RankingWeights, path: str | Path) -> None:
    lines = [f"{key}={getattr(weights, key)!r}" for key in WEIGHT_KEYS]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_weights(path: str | Path) -> RankingWeights:
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in WEIGHT_KEYS:
            raise ValueError(f"{path}: unknown weight key {key!r}")
        values[key] = float(val)
    missing = [k for k in WEIGHT_KEYS if k not in values]
    if missing:
        raise ValueError(f"{path}: missing weight keys {missing}")
    return RankingWeights(**values)


# --- lexical resources -----------------------------------------------------

NOUN, VERB, ADJ, ADV, OTHER = "NOUN", "VERB", "ADJ", "ADV", "OTHER"

_CLOSED_CLASS = {
    "the", "a", "an", "this", "that", "these", "those", "some", "any", "each",
    "every", "no", "of", "in", "on", "at", "by", "for", "with", "to", "from",
    "into", "onto", "upon", "over", "under", "between", "among", "through",
    "during", "against", "without", "within", "about", "above", "below",
    "and", "or", "but", "nor", "so", "yet", "if", "because", "although",
    "while", "when", "since", "unless", "until", "whereas", "than", "as",
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
    "them", "his", "hers", "its", "their", "our", "my", "your", "who",
    "whom", "whose", "which", "what", "is", "are", "was", "were", "be",
    "been", "being", "am", "do", "does", "did", "have", "has", "had",
    "will", "would", "shall", "should", "can", "could", "may", "might",
    "must", "not", "there", "here",
}
_DETERMINERS = {
    "the", "a", "an", "this", "that", "these", "those", "its", "his", "her",
    "their", "our", "my", "your", "each", "every", "some", "any", "no",
}
_VERB_LEADS = {
    "to", "will", "would", "shall", "should", "can", "could", "may",
    "might", "must", "did", "does", "do", "not",
}
_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ish", "less", "ant", "ent")
_NOUN_SUFFIXES = (
    "tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "hood",
    "ism", "ist", "ure", "age", "cy",
)
_VERB_SUFFIXES = ("ize", "ise", "ify", "ate", "ing", "ed")


def default_pos_tagger(tokens: list[str], index: int) -> str:
    """Coarse open-class tag from closed-class lists and suffix heuristics."""
    word = tokens[index].lower()
    if word in _CLOSED_CLASS:
        return OTHER
    prev = tokens[index - 1].lower() if index > 0 else ""
    if prev in _VERB_LEADS:
        return VERB
    if word.endswith("ly") and len(word) > 3:
        return ADV
    if prev in _DETERMINERS:
        return NOUN
    if word.endswith(_NOUN_SUFFIXES):
        return NOUN
    if word.endswith(_ADJ_SUFFIXES):
        return ADJ
    if word.endswith(_VERB_SUFFIXES) and len(word) > 4:
        return VERB
    return NOUN


@dataclass
class WordResources:
    """Static lexical resources consumed by elimination and scoring."""

    embeddings: dict[str, np.ndarray]
    real_words: set[str]
    general_zipf: ZipfTable
    pos_tagger: Callable[[list[str], int], str] = default_pos_tagger

    def __post_init__(self):
        if not self.real_words:
            raise ValueError("real-word list must be non-empty")

    def vector(self, word: str) -> np.ndarray | None:
        vec = self.embeddings.get(word)
        if vec is None:
            vec = self.embeddings.get(word.lower())
        return vec


def load_embeddings(path: str | Path) -> dict[str, np.ndarray]:
    """Read text-format embeddings (``word v1 v2 ... vd`` per line).

    A leading ``count dim`` header line is skipped; the dimension is taken
    from the first data line and inconsistent rows are rejected.
    """
    embeddings: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh):
            parts = raw.rstrip("\n").split(" ")
            if line_no == 0 and len(parts) == 2:
                continue  # fastText-style header
            if len(parts) < 2:
                continue
            word, values = parts[0], parts[1:]
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise ValueError(f"{path}:{line_no + 1}: expected {dim} dims")
            embeddings[word] = np.asarray(values, dtype=np.float64)
    if not embeddings:
        raise ValueError(f"{path}: no embedding rows")
    return embeddings


def load_word_list(path: str | Path) -> set[str]:
    words = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return words


# --- elimination and scoring ------------------------------------------------


def eliminate_candidates(
    slot_candidates: list[tuple[str, float]],
    span: TokenSpan,
    tokens: list[str],
    lexicon: ComplexWordLexicon,
    resources: WordResources,
) -> list[tuple[str, float]]:
    """Drop candidates that are complex, not real words, PoS-mismatched, or
    identical to the original (case-insensitive). Duplicates keep their first
    (highest-probability) occurrence."""
    original = span.surface.lower()
    original_tag = resources.pos_tagger(tokens, span.end - 1)
    survivors = []
    seen = set()
    for token, prob in slot_candidates:
        word = token.lower()
        if word in seen:
            continue
        seen.add(word)
        if word in lexicon.complex_words:
            continue
        if word not in resources.real_words:
            continue
        if word == original:
            continue
        substituted = tokens[: span.start] + [token] + tokens[span.end :]
        if resources.pos_tagger(substituted, span.start) != original_tag:
            continue
        survivors.append((token, prob))
    return survivors


def _cosine(a: np.ndarray, b: np.ndarray) -> float:
    denom = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    if denom == 0.0:
        return 0.0
    return float(np.dot(a, b)) / denom


def embedding_similarity(original: str, candidate: str, resources: WordResources) -> float:
    """Cosine similarity; multi-word originals use the mean of their vectors.

    Out-of-vocabulary on either side yields the neutral value 0.
    """
    cand_vec = resources.vector(candidate)
    if cand_vec is None:
        return 0.0
    parts = [resources.vector(w) for w in original.split()]
    parts = [p for p in parts if p is not None]
    if not parts:
        return 0.0
    orig_vec = parts[0] if len(parts) == 1 else np.mean(parts, axis=0)
    if candidate.lower() == original.lower():
        return 1.0
    return _cosine(orig_vec, cand_vec)


def length_feature(length: int) -> float:
    if length < 1:
        raise ValueError("length must be >= 1")
    return float(length) ** LENGTH_EXPONENT


def window_loss_feature(
    substituted_text: str,
    candidate_index: int,
    provider: MaskedLmProvider,
    n_word_tokens: int,
    cap: float = DEFAULT_FLM_CAP,
) -> float:
    """Inverse of the summed masked losses of the up-to-4 window neighbors.

    Neighbors outside the sentence are skipped; a zero-loss or neighborless
    window saturates at ``cap``.
    """
    neighbors = [
        j
        for j in (candidate_index - 2, candidate_index - 1, candidate_index + 1, candidate_index + 2)
        if 0 <= j < n_word_tokens
    ]
    if not neighbors:
        return cap
    total = 0.0
    for j in neighbors:
        total += provider.loss(substituted_text, j)
    if total <= 0.0:
        return cap
    return min(1.0 / total, cap)


def compute_features(
    candidate: str,
    prob: float,
    span: TokenSpan,
    sentence: str,
    provider: MaskedLmProvider,
    resources: WordResources,
    flm_cap: float = DEFAULT_FLM_CAP,
) -> CandidateFeatures:
    """All five ranking features for one candidate in one slot.

    The window-loss feature is measured on the candidate-substituted
    sentence; provider failures propagate so the caller can skip the
    candidate.
    """
    tokens = word_tokens(sentence)
    substituted = splice(
        sentence, [(tokens[span.start].start, tokens[span.end - 1].end, candidate)]
    )
    n_tokens = len(tokens) - (span.end - span.start) + 1
    f_lm = window_loss_feature(substituted, span.start, provider, n_tokens, flm_cap)
    return CandidateFeatures(
        f_b=float(prob),
        f_c=embedding_similarity(span.surface, candidate, resources),
        f_lm=f_lm,
        f_f=resources.general_zipf.value(candidate.lower()),
        f_l=length_feature(len(candidate)),
    )


def aggregate_score(features: CandidateFeatures, weights: RankingWeights) -> float:
    """Weighted sum of the five features."""
    return (
        weights.w_b * features.f_b
        + weights.w_c * features.f_c
        + weights.w_lm * features.f_lm
        + weights.w_f * features.f_f
        + weights.w_l * features.f_l
    )


@dataclass(frozen=True)
class SubstitutionChoice:
    span: TokenSpan
    candidate: str | None  # None when every candidate was eliminated
    features: CandidateFeatures | None
    score: float | None


@dataclass(frozen=True)
class SubstitutionResult:
    text: str
    choices: tuple[SubstitutionChoice, ...]


def select_substitutions(
    sentence: str,
    spans: list[TokenSpan],
    candidate_sets,
    weights: RankingWeights,
    lexicon: ComplexWordLexicon,
    resources: WordResources,
    provider: MaskedLmProvider,
    flm_cap: float = DEFAULT_FLM_CAP,
) -> SubstitutionResult:
    """Replace each span with its best-scoring survivor.

    Spans with no survivors keep their original surface. Ties go to the
    higher fill probability, then to the lexicographically smaller token.
    Spacing and punctuation around the spans are preserved exactly;
    a sentence-initial capital carries over to the replacement.
    """
    tokens = word_tokens(sentence)
    token_texts = [t.text for t in tokens]
    slots = candidate_sets.slots if hasattr(candidate_sets, "slots") else candidate_sets
    if len(slots) != len(spans):
        raise ValueError("candidate slots are not aligned with spans")
    replacements = []
    choices = []
    for span, slot in zip(spans, slots):
        survivors = eliminate_candidates(list(slot), span, token_texts, lexicon, resources)
        best: tuple[float, float, str, CandidateFeatures] | None = None
        for token, prob in survivors:
            try:
                feats = compute_features(
                    token, prob, span, sentence, provider, resources, flm_cap
                )
            except ProviderError as exc:
                log.warning("skipping candidate %r for %r: %s", token, span.surface, exc)
                continue
            score = aggregate_score(feats, weights)
            if best is None or _beats((score, feats.f_b, token), best[:3]):
                best = (score, feats.f_b, token, feats)
        if best is None:
            choices.append(SubstitutionChoice(span, None, None, None))
            continue
        score, _, token, feats = best
        replacement = token
        if span.start == 0 and span.surface[:1].isupper():
            replacement = replacement[:1].upper() + replacement[1:]
        replacements.append(
            (tokens[span.start].start, tokens[span.end - 1].end, replacement)
        )
        choices.append(SubstitutionChoice(span, token, feats, score))
    return SubstitutionResult(splice(sentence, replacements), tuple(choices))


def _beats(a: tuple[float, float, str], b: tuple[float, float, str]) -> bool:
    """Higher score, then higher probability, then alphabetical order."""
    if a[0] != b[0]:
        return a[0] > b[0]
    if a[1] != b[1]:
        return a[1] > b[1]
    return a[2] < b[2]
