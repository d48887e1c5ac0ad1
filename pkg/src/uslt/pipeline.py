"""End-to-end simplification pipeline and benchmark harness.

One sentence flows through complex-span identification, simultaneous
masking, candidate generation, elimination/ranking/substitution, and
recursive splitting, with every stage toggleable for ablations. The
benchmark runner shuffles a sentence-per-line dataset into chunks, scores
input against output per chunk, and attaches paired Wilcoxon p-values.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import metrics
from .candidates import (
    FixtureProvider,
    HttpProvider,
    MaskedLmProvider,
    ProviderError,
    build_masked_query,
    generate_candidates,
)
from .cwi import (
    ComplexWordLexicon,
    CwiConfig,
    build_complex_lexicon,
    default_ne_tags,
    identify_complex_spans,
    read_lexicon,
)
from .frequency import ZipfTable, load_zipf_any
from .metrics import FamiliarWordList, MetricError
from .ranking import (
    RankingWeights,
    WordResources,
    load_embeddings,
    load_word_list,
    read_weights,
    select_substitutions,
)
from .splitting import SplitConfig, flatten_tree, split_sentence
from .stats import wilcoxon_signed_rank
from .textutils import words

log = logging.getLogger(__name__)

PROVIDER_URL_ENV = "USLT_PROVIDER_URL"


class ResourceError(RuntimeError):
    """A configured resource file could not be loaded."""


class PipelineError(RuntimeError):
    """Pipeline failure; carries the partial record built so far."""

    def __init__(self, message: str, record: "SimplificationRecord | None" = None):
        super().__init__(message)
        self.record = record


@dataclass
class PipelineConfig:
    """Paths, knobs and stage toggles for one pipeline instance."""

    general_table: str | None = None
    legal_table: str | None = None
    lexicon: str | None = None
    phrases: str | None = None
    gazetteer: str | None = None
    embeddings: str | None = None
    real_words: str | None = None
    familiar_words: str | None = None
    weights: str | None = None
    provider_url: str | None = None
    fixture_dir: str | None = None
    n_candidates: int = 76
    ls_enabled: bool = True
    split_enabled: bool = True
    use_f_b: bool = True
    use_f_c: bool = True
    use_f_lm: bool = True
    use_f_f: bool = True
    use_f_l: bool = True
    flm_cap: float = 10.0
    dc_ratio_form: bool = False
    k_general: float = 2.0
    k_domain: float = 2.0
    min_split_tokens: int = 12
    max_depth: int = 4

    def __post_init__(self):
        if self.n_candidates < 1:
            raise ValueError("n_candidates must be >= 1")
        if not (self.ls_enabled or self.split_enabled):
            raise ValueError("at least one pipeline stage must be enabled")


_BOOL_KEYS = {
    "ls_enabled", "split_enabled", "use_f_b", "use_f_c", "use_f_lm",
    "use_f_f", "use_f_l", "dc_ratio_form",
}
_INT_KEYS = {"n_candidates", "min_split_tokens", "max_depth"}
_FLOAT_KEYS = {"flm_cap", "k_general", "k_domain"}


def read_config(path: str | Path, overrides: dict | None = None) -> PipelineConfig:
    """Key-value config file, every key overridable by CLI flags."""
    values: dict = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}: expected key=value, got {line!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    kwargs: dict = {}
    valid = set(PipelineConfig.__dataclass_fields__)
    for key, val in values.items():
        if key not in valid:
            raise ValueError(f"unknown config key {key!r}")
        if key in _BOOL_KEYS and isinstance(val, str):
            kwargs[key] = val.lower() in ("1", "true", "yes", "on")
        elif key in _INT_KEYS and isinstance(val, str):
            kwargs[key] = int(val)
        elif key in _FLOAT_KEYS and isinstance(val, str):
            kwargs[key] = float(val)
        else:
            kwargs[key] = val
    return PipelineConfig(**kwargs)


@dataclass
class PipelineResources:
    zipf_general: ZipfTable
    zipf_legal: ZipfTable
    lexicon: ComplexWordLexicon
    word_resources: WordResources
    familiar: FamiliarWordList
    weights: RankingWeights
    gazetteer: frozenset[str] = frozenset()
    split_config: SplitConfig = field(default_factory=SplitConfig)


def load_resources(config: PipelineConfig) -> PipelineResources:
    """Load and cross-wire every resource named by the config."""
    try:
        if not config.general_table or not config.legal_table:
            raise ResourceError("general_table and legal_table are required")
        zipf_general = load_zipf_any(config.general_table, "general")
        zipf_legal = load_zipf_any(config.legal_table, "legal")
        if config.lexicon:
            lexicon = read_lexicon(config.lexicon)
        else:
            lexicon = build_complex_lexicon(
                zipf_general,
                zipf_legal,
                config.phrases,
                CwiConfig(config.k_general, config.k_domain),
            )
        if not config.embeddings or not config.real_words or not config.familiar_words:
            raise ResourceError("embeddings, real_words and familiar_words are required")
        embeddings = load_embeddings(config.embeddings)
        real_words = load_word_list(config.real_words)
        familiar = FamiliarWordList.from_file(config.familiar_words)
        weights = read_weights(config.weights) if config.weights else RankingWeights()
        gazetteer = (
            frozenset(load_word_list(config.gazetteer)) if config.gazetteer else frozenset()
        )
        word_resources = WordResources(embeddings, real_words, zipf_general)
    except ResourceError:
        raise
    except Exception as exc:
        raise ResourceError(f"failed to load resources: {exc}") from exc
    return PipelineResources(
        zipf_general=zipf_general,
        zipf_legal=zipf_legal,
        lexicon=lexicon,
        word_resources=word_resources,
        familiar=familiar,
        weights=weights,
        gazetteer=gazetteer,
        split_config=SplitConfig(
            min_split_tokens=config.min_split_tokens, max_depth=config.max_depth
        ),
    )


def provider_from_config(config: PipelineConfig) -> MaskedLmProvider | None:
    """Fixture directory or HTTP endpoint; the env var wins over the config."""
    url = os.environ.get(PROVIDER_URL_ENV) or config.provider_url
    if config.fixture_dir and not url:
        return FixtureProvider(config.fixture_dir)
    if url:
        return HttpProvider(url)
    return None


def effective_weights(config: PipelineConfig, weights: RankingWeights) -> RankingWeights:
    """Zero out the weights of ablated features."""
    return RankingWeights(
        w_b=weights.w_b if config.use_f_b else 0.0,
        w_c=weights.w_c if config.use_f_c else 0.0,
        w_lm=weights.w_lm if config.use_f_lm else 0.0,
        w_f=weights.w_f if config.use_f_f else 0.0,
        w_l=weights.w_l if config.use_f_l else 0.0,
    )


@dataclass
class SimplificationRecord:
    original: str
    lexical: str
    final: list[str]
    substitutions: list[dict] = field(default_factory=list)
    scores: dict = field(default_factory=dict)

    @property
    def final_text(self) -> str:
        return " ".join(self.final)

    def to_dict(self) -> dict:
        return {
            "original": self.original,
            "lexical": self.lexical,
            "final": self.final,
            "substitutions": self.substitutions,
            "scores": self.scores,
        }


def _stage_scores(record: SimplificationRecord, resources: PipelineResources, config: PipelineConfig) -> dict:
    scores: dict = {}
    embeddings = resources.word_resources.embeddings
    for stage, text in (
        ("original", record.original),
        ("lexical", record.lexical),
        ("final", record.final_text),
    ):
        entry: dict = {}
        try:
            entry["fkgl"] = metrics.fkgl(text)
            entry["dc"] = metrics.dale_chall(text, resources.familiar, config.dc_ratio_form)
            if stage != "original":
                entry["sd"] = metrics.semantic_difference(record.original, text, embeddings)
        except MetricError as exc:
            log.warning("metrics unavailable for %s stage: %s", stage, exc)
            entry = {}
        scores[stage] = entry
    return scores


def simplify(
    sentence: str,
    config: PipelineConfig,
    resources: PipelineResources,
    provider: MaskedLmProvider | None,
) -> SimplificationRecord:
    """Run the configured stages over one sentence.

    A provider outage during candidate generation raises a PipelineError
    carrying the partial record; per-candidate loss failures only skip the
    affected candidate, so the output is never half-substituted.
    """
    record = SimplificationRecord(original=sentence, lexical=sentence, final=[sentence])
    if config.ls_enabled:
        tokens = [t for t in words(sentence)]
        ne_tags = default_ne_tags(tokens, resources.gazetteer)
        spans = identify_complex_spans(tokens, resources.lexicon, ne_tags)
        if spans:
            if provider is None:
                raise PipelineError("no masked-LM provider configured", record)
            query = build_masked_query(sentence, spans)
            try:
                candidate_sets = generate_candidates(provider, query, config.n_candidates)
            except ProviderError as exc:
                raise PipelineError(f"candidate generation failed: {exc}", record) from exc
            result = select_substitutions(
                sentence,
                list(query.mask_slots),
                candidate_sets,
                effective_weights(config, resources.weights),
                resources.lexicon,
                resources.word_resources,
                provider,
                config.flm_cap,
            )
            record.lexical = result.text
            record.substitutions = [
                {
                    "span": [c.span.start, c.span.end],
                    "surface": c.span.surface,
                    "candidate": c.candidate,
                    "score": c.score,
                    "features": None
                    if c.features is None
                    else {
                        "f_b": c.features.f_b,
                        "f_c": c.features.f_c,
                        "f_lm": c.features.f_lm,
                        "f_f": c.features.f_f,
                        "f_l": c.features.f_l,
                    },
                }
                for c in result.choices
            ]
    if config.split_enabled:
        split_config = replace(
            resources.split_config,
            min_split_tokens=config.min_split_tokens,
            max_depth=config.max_depth,
        )
        tree = split_sentence(record.lexical, split_config)
        record.final = flatten_tree(tree)
    else:
        record.final = [record.lexical]
    record.scores = _stage_scores(record, resources, config)
    return record


@dataclass
class BenchmarkReport:
    chunks: list[dict]
    overall: dict
    p_values: dict
    seed: int
    n_sentences: int

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_sentences": self.n_sentences,
            "chunks": self.chunks,
            "overall": self.overall,
            "p_values": self.p_values,
        }


def _chunk_means(values: list[float]) -> float:
    return float(np.mean(values)) if values else float("nan")


def run_benchmark(
    dataset_path: str | Path,
    config: PipelineConfig,
    resources: PipelineResources,
    provider: MaskedLmProvider | None,
    chunks: int = 10,
    chunk_size: int = 50,
    seed: int = 0,
    compare_path: str | Path | None = None,
) -> BenchmarkReport:
    """Chunked benchmark over a sentence-per-line dataset.

    Sentences are shuffled deterministically, partitioned into ``chunks``
    chunks covering the dataset exactly once, and scored per chunk for input
    vs. output. With ``compare_path`` (line-aligned output of another
    system), paired p-values against that system are added.
    """
    sentences = [
        line.strip()
        for line in Path(dataset_path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if len(sentences) < chunks:
        raise ValueError(f"dataset has {len(sentences)} sentences, need >= {chunks}")
    if len(sentences) != chunks * chunk_size:
        log.warning(
            "dataset size %d != %d x %d; chunks will be uneven",
            len(sentences), chunks, chunk_size,
        )
    compare_outputs = None
    if compare_path is not None:
        compare_outputs = [
            line.strip()
            for line in Path(compare_path).read_text(encoding="utf-8").splitlines()
        ]
        if len(compare_outputs) < len(sentences):
            raise ValueError("comparison file shorter than dataset")

    rng = np.random.default_rng(seed)
    order = rng.permutation(len(sentences))
    partition = np.array_split(order, chunks)

    chunk_rows = []
    for chunk_no, idxs in enumerate(partition):
        row: dict = {"chunk": chunk_no, "size": len(idxs)}
        in_fkgl, in_dc, out_fkgl, out_dc, out_sd = [], [], [], [], []
        cmp_fkgl, cmp_dc = [], []
        for i in idxs:
            sentence = sentences[int(i)]
            record = simplify(sentence, config, resources, provider)
            scores = record.scores
            if scores.get("original"):
                in_fkgl.append(scores["original"]["fkgl"])
                in_dc.append(scores["original"]["dc"])
            if scores.get("final"):
                out_fkgl.append(scores["final"]["fkgl"])
                out_dc.append(scores["final"]["dc"])
                if "sd" in scores["final"]:
                    out_sd.append(scores["final"]["sd"])
            if compare_outputs is not None:
                text = compare_outputs[int(i)]
                try:
                    cmp_fkgl.append(metrics.fkgl(text))
                    cmp_dc.append(
                        metrics.dale_chall(text, resources.familiar, config.dc_ratio_form)
                    )
                except MetricError:
                    pass
        row["input"] = {"fkgl": _chunk_means(in_fkgl), "dc": _chunk_means(in_dc)}
        row["output"] = {
            "fkgl": _chunk_means(out_fkgl),
            "dc": _chunk_means(out_dc),
            "sd": _chunk_means(out_sd),
        }
        if compare_outputs is not None:
            row["comparison"] = {"fkgl": _chunk_means(cmp_fkgl), "dc": _chunk_means(cmp_dc)}
        chunk_rows.append(row)

    overall = {
        "input": {
            "fkgl": _chunk_means([c["input"]["fkgl"] for c in chunk_rows]),
            "dc": _chunk_means([c["input"]["dc"] for c in chunk_rows]),
        },
        "output": {
            "fkgl": _chunk_means([c["output"]["fkgl"] for c in chunk_rows]),
            "dc": _chunk_means([c["output"]["dc"] for c in chunk_rows]),
            "sd": _chunk_means([c["output"]["sd"] for c in chunk_rows]),
        },
    }
    p_values: dict = {}
    for metric in ("fkgl", "dc"):
        ours = [c["output"][metric] for c in chunk_rows]
        theirs = [c["input"][metric] for c in chunk_rows]
        p_values[f"output_vs_input_{metric}"] = _safe_wilcoxon(ours, theirs)
        if compare_outputs is not None:
            others = [c["comparison"][metric] for c in chunk_rows]
            p_values[f"output_vs_comparison_{metric}"] = _safe_wilcoxon(ours, others)
    return BenchmarkReport(
        chunks=chunk_rows,
        overall=overall,
        p_values=p_values,
        seed=seed,
        n_sentences=len(sentences),
    )


def _safe_wilcoxon(x: list[float], y: list[float]) -> float | None:
    try:
        return wilcoxon_signed_rank(x, y)
    except ValueError as exc:
        log.warning("wilcoxon unavailable: %s", exc)
        return None


def make_objective(
    validation_sentences: list[str],
    config: PipelineConfig,
    resources: PipelineResources,
    provider: MaskedLmProvider | None,
):
    """Objective for weight search: harmonic mean of mean FKGL/DC/SD.

    Each candidate weight vector re-runs the full pipeline over the
    validation sentences.
    """
    from .optimize import harmonic_mean

    def objective(weight_tuple) -> float:
        w_b, w_c, w_lm, w_f, w_l = weight_tuple
        trial = replace(config)
        trial_resources = replace(
            resources, weights=RankingWeights(w_b, w_c, w_lm, w_f, w_l)
        )
        fkgls, dcs, sds = [], [], []
        for sentence in validation_sentences:
            record = simplify(sentence, trial, trial_resources, provider)
            final = record.scores.get("final") or {}
            if "fkgl" in final:
                fkgls.append(final["fkgl"])
                dcs.append(final["dc"])
            if "sd" in final:
                sds.append(final["sd"])
        if not fkgls:
            raise RuntimeError("no scorable sentences in validation set")
        return harmonic_mean(
            [float(np.mean(fkgls)), float(np.mean(dcs)), float(np.mean(sds or [0.0]))]
        )

    return objective
