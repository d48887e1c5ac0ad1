"""Corpus word frequencies and the Zipf scale.

A word's Zipf value is ``log10((F + 1) / (W + N)) + 3.0`` where F is its raw
occurrence count, W the corpus size in millions of tokens and N the number of
distinct words in millions. The scale runs roughly 1..7: one Zipf point per
decade of frequency.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .textutils import corpus_tokens

FREQ_TAG = "# uslt-frequency-table v1"
ZIPF_TAG = "# uslt-zipf-table v1"


class TableError(ValueError):
    """Raised for ill-formed or empty frequency/Zipf tables."""


@dataclass(frozen=True)
class FrequencyTable:
    """Per-word occurrence counts for one corpus.

    Totals are kept as exact integers; the million-scaled W and N used by the
    Zipf formula are derived properties.
    """

    counts: dict[str, int]
    total_tokens: int
    total_types: int

    @property
    def total_words_millions(self) -> float:
        return self.total_tokens / 1e6

    @property
    def total_types_millions(self) -> float:
        return self.total_types / 1e6

    @property
    def is_empty(self) -> bool:
        return self.total_types == 0

    @classmethod
    def from_counts(cls, counts: dict[str, int]) -> "FrequencyTable":
        for word, c in counts.items():
            if c < 1:
                raise TableError(f"count below 1 for stored word {word!r}")
        return cls(dict(counts), sum(counts.values()), len(counts))


def ingest_corpus(documents: Iterable[str]) -> FrequencyTable:
    """Count word occurrences over plain-text documents.

    An empty corpus yields an empty (flagged) table; building a Zipf table
    from it is an error.
    """
    counter: Counter[str] = Counter()
    for doc in documents:
        counter.update(corpus_tokens(doc))
    return FrequencyTable(dict(counter), sum(counter.values()), len(counter))


# Zipf values are snapped to this grid (4.5e-13 resolution). Multiples of
# 2^-40 below 2^13 are exactly representable, so adding the integer decade
# is exact and "count+1 times 10 => +1.0" holds bit for bit.
_GRID = 2.0**40


def zipf_value(count: int, w_millions: float, n_millions: float) -> float:
    """Zipf value for a raw ``count`` in a corpus of W tokens / N types (millions)."""
    if count < 0 or count != int(count):
        raise TableError(f"count must be a non-negative integer, got {count!r}")
    denom = w_millions + n_millions
    if denom <= 0:
        raise TableError("W + N must be positive")
    k = int(count) + 1
    decade = 0
    while k % 10 == 0:
        k //= 10
        decade += 1
    base = math.log10(k) - math.log10(denom) + 3.0
    return round(base * _GRID) / _GRID + decade


@dataclass(frozen=True)
class ZipfTable:
    """Zipf values for every word of a corpus, with distribution statistics.

    ``w_millions``/``n_millions`` are carried along so unseen words can be
    scored on demand with the count-0 fallback.
    """

    zipf: dict[str, float]
    mean: float
    std: float
    source_label: str
    w_millions: float
    n_millions: float
    _unseen: float = field(init=False, repr=False, compare=False, default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "_unseen", zipf_value(0, self.w_millions, self.n_millions))

    def __contains__(self, word: str) -> bool:
        return word in self.zipf

    def __len__(self) -> int:
        return len(self.zipf)

    def value(self, word: str) -> float:
        """Stored Zipf value, or the count-0 fallback for unseen words."""
        return self.zipf.get(word, self._unseen)


def build_zipf_table(freq: FrequencyTable, label: str) -> ZipfTable:
    """Assign a Zipf value to every word of ``freq``."""
    if freq.is_empty:
        raise TableError("cannot build a Zipf table from an empty corpus")
    w, n = freq.total_words_millions, freq.total_types_millions
    zipf = {word: zipf_value(c, w, n) for word, c in freq.counts.items()}
    values = list(zipf.values())
    mean = math.fsum(values) / len(values)
    var = math.fsum((v - mean) ** 2 for v in values) / len(values)
    return ZipfTable(zipf, mean, math.sqrt(var), label, w, n)


def write_frequency_table(freq: FrequencyTable, path: str | Path) -> None:
    lines = [
        FREQ_TAG,
        f"# total_tokens={freq.total_tokens}",
        f"# total_types={freq.total_types}",
    ]
    for word in sorted(freq.counts):
        lines.append(f"{word}\t{freq.counts[word]}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_frequency_table(path: str | Path) -> FrequencyTable:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if len(lines) < 3 or not lines[0].startswith(FREQ_TAG):
        raise TableError(f"{path}: not a frequency table")
    total_tokens = int(lines[1].split("=", 1)[1])
    total_types = int(lines[2].split("=", 1)[1])
    counts: dict[str, int] = {}
    for line in lines[3:]:
        if not line.strip():
            continue
        word, count = line.split("\t")
        counts[word] = int(count)
    table = FrequencyTable(counts, total_tokens, total_types)
    if sum(counts.values()) != total_tokens or len(counts) != total_types:
        raise TableError(f"{path}: header totals disagree with entries")
    return table


def write_zipf_table(table: ZipfTable, path: str | Path) -> None:
    lines = [
        f"{ZIPF_TAG} label={table.source_label}"
        f" w_millions={table.w_millions!r} n_millions={table.n_millions!r}",
        f"# mean={table.mean!r}",
        f"# std={table.std!r}",
    ]
    for word in sorted(table.zipf):
        lines.append(f"{word}\t{table.zipf[word]!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_zipf_table(path: str | Path) -> ZipfTable:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if len(lines) < 3 or not lines[0].startswith(ZIPF_TAG):
        raise TableError(f"{path}: not a Zipf table")
    head = dict(part.split("=", 1) for part in lines[0].split()[3:])
    mean = float(lines[1].split("=", 1)[1])
    std = float(lines[2].split("=", 1)[1])
    zipf: dict[str, float] = {}
    for line in lines[3:]:
        if not line.strip():
            continue
        word, value = line.split("\t")
        zipf[word] = float(value)
    if not zipf:
        raise TableError(f"{path}: empty Zipf table")
    return ZipfTable(
        zipf, mean, std, head["label"], float(head["w_millions"]), float(head["n_millions"])
    )


def load_zipf_any(path: str | Path, label: str) -> ZipfTable:
    """Load either table format, converting a frequency table on the fly."""
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
    if first.startswith(ZIPF_TAG):
        return read_zipf_table(path)
    if first.startswith(FREQ_TAG):
        return build_zipf_table(read_frequency_table(path), label)
    raise TableError(f"{path}: unrecognized table format")
