import zlib
from pathlib import Path
from types import SimpleNamespace

import numpy as np
import pytest

from uslt.candidates import ProviderError
from uslt.frequency import FrequencyTable, build_zipf_table

GOLDEN_CORPUS_PATH = Path(__file__).parent / "data" / "golden_corpus.txt"


class DictProvider:
    """In-process masked-LM stand-in keyed by exact request content."""

    def __init__(self, fill_map=None, loss_map=None, default_loss=None):
        self.fill_map = fill_map or {}
        self.loss_map = loss_map or {}
        self.default_loss = default_loss
        self.fill_calls = 0
        self.loss_calls = 0

    def fill(self, original, masked, top_n):
        self.fill_calls += 1
        try:
            slots = self.fill_map[(original, masked)]
        except KeyError:
            raise ProviderError(f"no fill entry for {masked!r}") from None
        return [list(slot[:top_n]) for slot in slots]

    def loss(self, sentence, position):
        self.loss_calls += 1
        key = (sentence, position)
        if key in self.loss_map:
            return self.loss_map[key]
        if self.default_loss is not None:
            return self.default_loss(sentence, position)
        raise ProviderError(f"no loss entry for {key!r}")


def stable_loss(sentence, position):
    """Deterministic pseudo-loss in [0.5, 4.5], stable across runs."""
    from uslt.textutils import words

    token = words(sentence)[position].lower()
    return 0.5 + (zlib.crc32(token.encode("utf-8")) % 1000) / 250.0


def make_zipf_table(counts, label):
    freq = FrequencyTable(dict(counts), sum(counts.values()), len(counts))
    return build_zipf_table(freq, label)


def unit_vector(word, dim=8):
    """Deterministic per-word unit vector (seeded by a stable hash)."""
    rng = np.random.default_rng(zlib.crc32(word.encode("utf-8")))
    vec = rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


@pytest.fixture
def dict_provider():
    return DictProvider


@pytest.fixture
def general_zipf():
    return make_zipf_table(
        {"the": 5000, "cat": 900, "order": 850, "ban": 800, "action": 760,
         "act": 740, "crime": 700, "court": 680, "rule": 660, "man": 640,
         "deed": 300, "done": 620, "claim": 580},
        "general",
    )


@pytest.fixture(scope="session")
def golden_world(tmp_path_factory):
    """Fully wired pipeline over the 50-sentence golden corpus.

    Resource files, Zipf tables and the provider fixture directory are all
    generated deterministically into a session temp dir.
    """
    from uslt.pipeline import load_resources, provider_from_config

    from .fixture_lm import build_world_config

    corpus = [
        line.strip()
        for line in GOLDEN_CORPUS_PATH.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    probes = ["The court granted the injunction."]
    root = tmp_path_factory.mktemp("golden_world")
    config = build_world_config(root, corpus + probes)
    resources = load_resources(config)
    provider = provider_from_config(config)
    return SimpleNamespace(
        config=config,
        resources=resources,
        provider=provider,
        corpus=corpus,
        root=root,
        corpus_path=GOLDEN_CORPUS_PATH,
    )
