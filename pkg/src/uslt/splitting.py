"""Recursive core/context sentence splitting.

Long sentences are decomposed with three deterministic rule families, in
fixed precedence: subordinate clauses on a cue word, subject relative
clauses, and clause-level coordination. Each firing rule yields exactly one
CORE child (the clause carrying the key information) and one CONTEXT child
(the circumstance clause, rebuilt into a standalone sentence); both children
are split further until no rule fires, the sentence is short enough, or the
depth budget is exhausted. No parser is involved: clause boundaries come
from cue words, commas and a small auxiliary lexicon, which keeps the stage
fully unsupervised and easy to swap for a parser-backed splitter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .textutils import RICH_RE, capitalize_first

CORE = "CORE"
CONTEXT = "CONTEXT"

RULE_SUBORDINATE = "R1-subordinate"
RULE_RELATIVE = "R2-relative"
RULE_COORDINATION = "R3-coordination"

DEFAULT_SUBORDINATING = (
    "before", "after", "when", "while", "because", "although", "though",
    "if", "since", "unless", "until", "once", "whereas",
)
DEFAULT_RELATIVE = ("who", "whom", "which", "that")
DEFAULT_COORDINATING = ("and", "but", "or", "so", "yet")

_PUNCT = {",", ";", ":", ".", "!", "?"}
_TERMINAL = {".", "!", "?"}

_AUX = {
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have",
    "had", "do", "does", "did", "will", "would", "shall", "should", "can",
    "could", "may", "might", "must",
}
_DETERMINERS = {
    "the", "a", "an", "this", "that", "these", "those", "its", "his", "her",
    "their", "our", "my", "your", "each", "every", "any", "some", "no", "such",
}
_SUBJECT_PRONOUNS = {"he", "she", "it", "they", "we", "i", "you", "there", "this"}
_PLURAL_PRONOUNS = {"they", "we", "you"}
_IRREGULAR_PAST = {
    "arose", "became", "began", "bore", "bought", "brought", "broke", "built",
    "came", "caught", "chose", "dealt", "did", "drew", "drove", "fed", "fell",
    "felt", "fled", "flew", "forbade", "forgot", "fought", "found", "froze",
    "gave", "went", "got", "grew", "heard", "held", "hit", "kept", "knew",
    "laid", "lay", "led", "left", "lent", "let", "lost", "made", "meant",
    "met", "overcame", "paid", "put", "ran", "rang", "rode", "rose", "said",
    "sang", "sat", "saw", "sent", "set", "shook", "shot", "sold", "sought",
    "spent", "spoke", "sprang", "stole", "stood", "struck", "stuck", "swept",
    "swore", "swung", "took", "taught", "thought", "threw", "told", "tore",
    "understood", "upheld", "withdrew", "woke", "won", "wore", "wrote",
}
# Verbs commonly followed by a complementizer "that"; blocks the relative
# reading of "held that ...".
_THAT_COMP_VERBS = {
    "said", "held", "ruled", "found", "stated", "noted", "argued",
    "concluded", "provides", "provided", "agreed", "alleged", "claimed",
    "believed", "showed", "shows", "means", "meant", "requires", "required",
    "declared", "testified", "acknowledged", "establishes", "established",
    "ensure", "ensures", "so",
}


@dataclass
class SplitConfig:
    min_split_tokens: int = 12
    max_depth: int = 4
    subordinating_cues: tuple[str, ...] = DEFAULT_SUBORDINATING
    relative_cues: tuple[str, ...] = DEFAULT_RELATIVE
    coordinating_cues: tuple[str, ...] = DEFAULT_COORDINATING

    def __post_init__(self):
        if self.min_split_tokens < 4:
            raise ValueError("min_split_tokens must be >= 4")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass
class SplitNode:
    text: str
    label: str
    children: list["SplitNode"] = field(default_factory=list)
    rule_applied: str | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


def _tokens(text: str) -> list[str]:
    return RICH_RE.findall(text)


def _word_count(toks: list[str]) -> int:
    return sum(1 for t in toks if t not in _PUNCT)


def _is_verbish(word: str, prev: str | None) -> bool:
    w = word.lower()
    if w in _AUX or w in _IRREGULAR_PAST:
        return True
    if len(w) >= 4 and w.endswith("ed"):
        return True
    if (
        len(w) >= 4
        and w.endswith("s")
        and not w.endswith("ss")
        and prev is not None
        and prev.lower() not in _DETERMINERS
    ):
        return True
    return False


def _has_verb(toks: list[str]) -> bool:
    words = [t for t in toks if t not in _PUNCT]
    for i, w in enumerate(words):
        if _is_verbish(w, words[i - 1] if i > 0 else None):
            return True
    return False


def _strip_edges(toks: list[str]) -> list[str]:
    start, end = 0, len(toks)
    while start < end and toks[start] in _PUNCT:
        start += 1
    while end > start and toks[end - 1] in _PUNCT:
        end -= 1
    return toks[start:end]


def _detok(toks: list[str]) -> str:
    out = []
    for tok in toks:
        if tok in _PUNCT:
            if out:
                out[-1] += tok
        else:
            out.append(tok)
    return " ".join(out)


def _sentence_from(toks: list[str]) -> str | None:
    toks = _strip_edges(toks)
    if not toks:
        return None
    text = capitalize_first(_detok(toks))
    return text + "."


def _subject_of(toks: list[str]) -> list[str]:
    """Leading noun phrase of a clause: tokens up to the first verb-like one."""
    words = [t for t in toks if t not in _PUNCT]
    subject = []
    for i, w in enumerate(words[:5]):
        if _is_verbish(w, words[i - 1] if i > 0 else None):
            break
        subject.append(w)
    return subject or ["It"]


def _copula_for(subject: list[str]) -> str:
    head = subject[-1].lower()
    if head in _PLURAL_PRONOUNS:
        return "were"
    if head.endswith("s") and not head.endswith(("ss", "us", "is")):
        return "were"
    return "was"


def _context_from_clause(clause: list[str], cue: str, main: list[str]) -> list[str] | None:
    """Rebuild a cue clause into a standalone context sentence (token list)."""
    clause = _strip_edges(clause)
    if not clause:
        return None
    first = clause[0].lower()
    if first.endswith("ing") and len(first) > 4:
        subject = _subject_of(main)
        return subject + [_copula_for(subject)] + clause
    if _has_verb(clause):
        return clause
    return ["This", "was", cue] + clause


def _find_boundary_no_comma(toks: list[str], cue_idx: int) -> int | None:
    """Start of the main clause after a sentence-initial cue clause.

    Without a comma the boundary is guessed as the determiner/pronoun that
    opens the subject of the first auxiliary-bearing verb group.
    """
    aux_idx = None
    for i in range(cue_idx + 2, len(toks)):
        if toks[i].lower() in _AUX:
            aux_idx = i
            break
    if aux_idx is None:
        return None
    for i in range(aux_idx - 1, cue_idx, -1):
        low = toks[i].lower()
        if low in _DETERMINERS or low in _SUBJECT_PRONOUNS:
            if i - cue_idx >= 2:
                return i
            return None
    return None


def _try_subordinate(toks: list[str], config: SplitConfig) -> tuple[str, str] | None:
    cues = set(config.subordinating_cues)
    for idx, tok in enumerate(toks):
        low = tok.lower()
        if low not in cues:
            continue
        if idx == 0:
            comma = next((i for i, t in enumerate(toks) if t == ","), None)
            if comma is not None and comma > idx + 1:
                clause, main = toks[idx + 1 : comma], toks[comma + 1 :]
            else:
                boundary = _find_boundary_no_comma(toks, idx)
                if boundary is None:
                    continue
                clause, main = toks[idx + 1 : boundary], toks[boundary:]
        else:
            clause, main = toks[idx + 1 :], toks[:idx]
        main = _strip_edges(main)
        clause = _strip_edges(clause)
        if _word_count(main) < 3 or _word_count(clause) < 2:
            continue
        if not _has_verb(main):
            continue
        if main and main[0].lower() in ("who", "whom", "which"):
            continue
        context = _context_from_clause(clause, low, main)
        if context is None:
            continue
        core_text = _sentence_from(main)
        context_text = _sentence_from(context)
        if core_text and context_text:
            return core_text, context_text
    return None


def _try_relative(toks: list[str], config: SplitConfig) -> tuple[str, str] | None:
    cues = set(config.relative_cues)
    for idx, tok in enumerate(toks):
        low = tok.lower()
        if low not in cues or idx == 0:
            continue
        prev = toks[idx - 1]
        if low == "that" and (prev == "," or prev.lower() in _THAT_COMP_VERBS):
            continue
        # subject relatives only: the pronoun must be followed by a verb
        # group (prev="" since a determiner cannot precede that position)
        nxt = [t for t in toks[idx + 1 : idx + 3] if t not in _PUNCT]
        if not nxt or not (
            _is_verbish(nxt[0], "")
            or (len(nxt) > 1 and nxt[0].lower() == "not")
        ):
            continue
        if prev == ",":
            close = next(
                (i for i in range(idx + 1, len(toks)) if toks[i] == ","), len(toks)
            )
            clause = toks[idx + 1 : close]
            main = toks[: idx - 1] + toks[min(close + 1, len(toks)) :]
            referent_end = idx - 1
        else:
            aux_idx = None
            for i in range(idx + 3, len(toks)):
                if toks[i].lower() in _AUX:
                    aux_idx = i
                    break
            if aux_idx is None:
                continue
            clause = toks[idx + 1 : aux_idx]
            main = toks[:idx] + toks[aux_idx:]
            referent_end = idx
        referent_start = None
        for i in range(referent_end - 1, max(referent_end - 5, -1), -1):
            if toks[i] in _PUNCT:
                break
            if toks[i].lower() in _DETERMINERS:
                referent_start = i
                break
        if referent_start is None:
            referent_start = referent_end - 1
        referent = [t for t in toks[referent_start:referent_end] if t not in _PUNCT]
        clause = _strip_edges(clause)
        main = _strip_edges(main)
        if not referent or _word_count(clause) < 2 or _word_count(main) < 3:
            continue
        if not _has_verb(main):
            continue
        core_text = _sentence_from(main)
        context_text = _sentence_from(referent + clause)
        if core_text and context_text:
            return core_text, context_text
    return None


def _try_coordination(toks: list[str], config: SplitConfig) -> tuple[str, str] | None:
    cues = set(config.coordinating_cues)
    for idx, tok in enumerate(toks):
        if tok == ";":
            left, right = toks[:idx], toks[idx + 1 :]
        elif tok == "," and idx + 1 < len(toks) and toks[idx + 1].lower() in cues:
            left, right = toks[:idx], toks[idx + 2 :]
        else:
            continue
        left = _strip_edges(left)
        right = _strip_edges(right)
        if _word_count(left) < 3 or _word_count(right) < 2:
            continue
        if not _has_verb(left) or not _has_verb(right):
            continue
        first = right[0]
        has_subject = (
            first.lower() in _DETERMINERS
            or first.lower() in _SUBJECT_PRONOUNS
            or first[:1].isupper()
        )
        if not has_subject:
            right = _subject_of(left) + right
        core_text = _sentence_from(left)
        context_text = _sentence_from(right)
        if core_text and context_text:
            return core_text, context_text
    return None


_RULES = (
    (RULE_SUBORDINATE, _try_subordinate),
    (RULE_RELATIVE, _try_relative),
    (RULE_COORDINATION, _try_coordination),
)


def _ensure_terminated(text: str) -> str:
    text = text.strip()
    if text and text[-1] not in _TERMINAL:
        text += "."
    return capitalize_first(text)


def split_sentence(sentence: str, config: SplitConfig = SplitConfig()) -> SplitNode:
    """Split ``sentence`` into a tree of core and context sentences.

    The root carries the (normalized) input; leaves, read in order, are the
    output sentences. Any child that fails to strictly shrink its parent's
    token count vetoes the rule, which guarantees termination.
    """
    if not sentence.strip():
        raise ValueError("sentence must be non-empty")
    normalized = _ensure_terminated(" ".join(sentence.split()))
    return _split(normalized, CORE, 0, config)


def _split(text: str, label: str, depth: int, config: SplitConfig) -> SplitNode:
    node = SplitNode(text=text, label=label)
    toks = _tokens(text)
    n_words = _word_count(toks)
    if depth >= config.max_depth or n_words < config.min_split_tokens:
        return node
    for rule_id, rule in _RULES:
        result = rule(toks, config)
        if result is None:
            continue
        core_text, context_text = result
        core_words = _word_count(_tokens(core_text))
        context_words = _word_count(_tokens(context_text))
        if core_words >= n_words or context_words >= n_words:
            continue
        node.rule_applied = rule_id
        node.children = [
            _split(core_text, CORE, depth + 1, config),
            _split(context_text, CONTEXT, depth + 1, config),
        ]
        return node
    return node


def flatten_tree(root: SplitNode, order: str = "core-first") -> list[str]:
    """Leaf sentences of the tree in the configured order."""
    if order not in ("core-first", "context-first"):
        raise ValueError(f"unknown order {order!r}")
    leaves: list[str] = []

    def visit(node: SplitNode) -> None:
        if node.is_leaf:
            leaves.append(_ensure_terminated(node.text))
            return
        children = node.children if order == "core-first" else node.children[::-1]
        for child in children:
            visit(child)

    visit(root)
    return leaves
