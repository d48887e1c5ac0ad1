"""Masked-query construction and substitution-candidate retrieval.

Every complex span of a sentence is replaced by a single mask token; the
masked sentence is submitted together with the original as a pair, and a
masked-LM provider returns the most likely fill tokens per slot. Providers
are pluggable: an HTTP client for a live inference service, or a directory
of recorded request/response fixtures for offline runs and tests.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, runtime_checkable

import requests

from .cwi import TokenSpan
from .textutils import splice, word_tokens

MASK_TOKEN = "[MASK]"

# Candidates with probability below this are dropped before ranking to keep
# log-domain feature math away from underflow.
PROB_FLOOR = 1e-8


class ProviderError(RuntimeError):
    """A masked-LM provider could not serve a request."""


@runtime_checkable
class MaskedLmProvider(Protocol):
    """Contract every candidate source must satisfy."""

    def fill(self, original: str, masked: str, top_n: int) -> list[list[tuple[str, float]]]:
        """Per mask slot, (token, probability) pairs, any order."""
        ...

    def loss(self, sentence: str, position: int) -> float:
        """Cross-entropy of the true word token at ``position`` when masked."""
        ...


@dataclass(frozen=True)
class MaskedQuery:
    original: str
    masked: str
    mask_slots: tuple[TokenSpan, ...]


@dataclass(frozen=True)
class CandidateSet:
    """Per-slot candidate lists, descending by probability."""

    slots: tuple[tuple[tuple[str, float], ...], ...]
    n_requested: int


def build_masked_query(sentence: str, spans: list[TokenSpan]) -> MaskedQuery:
    """Mask every complex span of ``sentence`` simultaneously.

    Each span, single- or multi-word, becomes exactly one mask token; the
    original sentence travels with the masked one so the provider can encode
    them as a pair.
    """
    tokens = word_tokens(sentence)
    replacements = []
    ordered = sorted(spans, key=lambda s: s.start)
    prev_end = 0
    for span in ordered:
        if span.end > len(tokens):
            raise ValueError(f"span {span} outside sentence of {len(tokens)} tokens")
        if span.start < prev_end:
            raise ValueError(f"span {span} overlaps a previous span")
        prev_end = span.end
        replacements.append(
            (tokens[span.start].start, tokens[span.end - 1].end, MASK_TOKEN)
        )
    return MaskedQuery(sentence, splice(sentence, replacements), tuple(ordered))


def unmask(query: MaskedQuery) -> str:
    """Reconstruct the original sentence from a masked query (sanity check)."""
    parts = query.masked.split(MASK_TOKEN)
    if len(parts) != len(query.mask_slots) + 1:
        raise ValueError("mask count does not match slot count")
    out = [parts[0]]
    for span, part in zip(query.mask_slots, parts[1:]):
        out.append(span.surface)
        out.append(part)
    return "".join(out)


def generate_candidates(
    provider: MaskedLmProvider, query: MaskedQuery, n: int
) -> CandidateSet:
    """Top-``n`` candidates per mask slot, descending by probability.

    Ties are broken lexicographically so the ordering is a total order.
    A query with zero slots returns an empty set without touching the
    provider.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not query.mask_slots:
        return CandidateSet((), n)
    raw = provider.fill(query.original, query.masked, n)
    if len(raw) != len(query.mask_slots):
        raise ProviderError(
            f"provider returned {len(raw)} slots for {len(query.mask_slots)} masks"
        )
    slots = []
    for slot in raw:
        kept = [(tok, float(p)) for tok, p in slot if p >= PROB_FLOOR]
        kept.sort(key=lambda tp: (-tp[1], tp[0]))
        slots.append(tuple(kept[:n]))
    return CandidateSet(tuple(slots), n)


def _request_key(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha1(blob).hexdigest()


class FixtureProvider:
    """Masked-LM provider backed by a directory of recorded JSON exchanges.

    Layout: ``<dir>/fill/*.json`` and ``<dir>/loss/*.json``, each file holding
    ``{"request": ..., "response": ...}`` with the same schemas as the HTTP
    endpoints. Lookups are keyed by request content; a missing recording is a
    provider error.
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._fill: dict[tuple[str, str], tuple[int, list[list[tuple[str, float]]]]] = {}
        self._loss: dict[tuple[str, int], float] = {}
        if not self.directory.is_dir():
            raise ProviderError(f"fixture directory {self.directory} does not exist")
        for path in sorted((self.directory / "fill").glob("*.json")):
            entry = json.loads(path.read_text(encoding="utf-8"))
            req, resp = entry["request"], entry["response"]
            slots = [
                [(c["token"], float(c["prob"])) for c in slot] for slot in resp["slots"]
            ]
            self._fill[(req["original"], req["masked"])] = (int(req["top_n"]), slots)
        for path in sorted((self.directory / "loss").glob("*.json")):
            entry = json.loads(path.read_text(encoding="utf-8"))
            req, resp = entry["request"], entry["response"]
            self._loss[(req["sentence"], int(req["position"]))] = float(resp["loss"])

    def fill(self, original: str, masked: str, top_n: int) -> list[list[tuple[str, float]]]:
        try:
            recorded_n, slots = self._fill[(original, masked)]
        except KeyError:
            raise ProviderError(f"no fill fixture for masked sentence: {masked!r}") from None
        if top_n >= recorded_n:
            return [list(slot) for slot in slots]
        return [list(slot[:top_n]) for slot in slots]

    def loss(self, sentence: str, position: int) -> float:
        try:
            return self._loss[(sentence, position)]
        except KeyError:
            raise ProviderError(
                f"no loss fixture for position {position} of: {sentence!r}"
            ) from None


def record_fill(
    directory: str | Path,
    original: str,
    masked: str,
    top_n: int,
    slots: list[list[tuple[str, float]]],
) -> Path:
    """Write one fill exchange in the fixture layout; returns the file path."""
    request = {"original": original, "masked": masked, "top_n": top_n}
    response = {
        "slots": [[{"token": t, "prob": p} for t, p in slot] for slot in slots]
    }
    out = Path(directory) / "fill" / f"{_request_key(request)}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(
        json.dumps({"request": request, "response": response}, ensure_ascii=False, indent=1),
        encoding="utf-8",
    )
    return out


def record_loss(directory: str | Path, sentence: str, position: int, loss: float) -> Path:
    """Write one loss exchange in the fixture layout; returns the file path."""
    request = {"sentence": sentence, "position": position}
    out = Path(directory) / "loss" / f"{_request_key(request)}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(
        json.dumps({"request": request, "response": {"loss": loss}}, ensure_ascii=False, indent=1),
        encoding="utf-8",
    )
    return out


class HttpProvider:
    """Client for the sidecar inference service (``/v1/fill``, ``/v1/loss``)."""

    def __init__(self, base_url: str, timeout: float = 60.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = requests.Session()

    def _post(self, route: str, payload: dict) -> dict:
        try:
            resp = self._session.post(
                f"{self.base_url}{route}", json=payload, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ProviderError(f"provider unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise ProviderError(f"provider returned {resp.status_code}: {resp.text[:200]}")
        return resp.json()

    def fill(self, original: str, masked: str, top_n: int) -> list[list[tuple[str, float]]]:
        body = self._post(
            "/v1/fill", {"original": original, "masked": masked, "top_n": top_n}
        )
        return [
            [(c["token"], float(c["prob"])) for c in slot] for slot in body["slots"]
        ]

    def loss(self, sentence: str, position: int) -> float:
        body = self._post("/v1/loss", {"sentence": sentence, "position": position})
        return float(body["loss"])


def count_masks(masked: str) -> int:
    return len(re.findall(re.escape(MASK_TOKEN), masked))
