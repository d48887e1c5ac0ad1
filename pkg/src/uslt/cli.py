"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 resource load failure, 3 provider
failure.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import frequency, metrics
from .candidates import ProviderError
from .cwi import CwiConfig, build_complex_lexicon, write_lexicon
from .optimize import SearchDomain, optimize_weights
from .pipeline import (
    PipelineConfig,
    PipelineError,
    ResourceError,
    load_resources,
    make_objective,
    provider_from_config,
    read_config,
    run_benchmark,
    simplify,
)
from .ranking import RankingWeights, load_embeddings, write_weights

EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_PROVIDER = 3

# click's default usage-error code is 2; the contract reserves 2 for
# resource failures.
click.exceptions.UsageError.exit_code = EXIT_USAGE

log = logging.getLogger("uslt")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Unsupervised legal-text simplification toolkit."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


_CONFIG_OPTIONS = [
    click.option("--config", "config_path", type=click.Path(exists=True), default=None,
                 help="Key-value config file; flags override its entries."),
    click.option("--general-table", default=None, help="General-corpus table (frequency or Zipf TSV)."),
    click.option("--legal-table", default=None, help="Legal-corpus table (frequency or Zipf TSV)."),
    click.option("--lexicon", default=None, help="Prebuilt complex-word lexicon TSV."),
    click.option("--phrases", default=None, help="Legal phrase list (one entry per line)."),
    click.option("--gazetteer", default=None, help="Named-entity gazetteer file."),
    click.option("--embeddings", default=None, help="Word embeddings in text format."),
    click.option("--real-words", default=None, help="Real-word list, one word per line."),
    click.option("--familiar-words", default=None, help="Dale-Chall familiar word list."),
    click.option("--weights", default=None, help="Ranking weights file (w_b=... lines)."),
    click.option("--provider", "provider_url", default=None, help="Masked-LM service URL."),
    click.option("--fixtures", "fixture_dir", default=None, help="Fixture provider directory."),
    click.option("--n-candidates", type=int, default=None, help="Candidates per mask slot."),
    click.option("--no-ls", "no_ls", is_flag=True, help="Disable lexical simplification."),
    click.option("--no-split", "no_split", is_flag=True, help="Disable sentence splitting."),
    click.option("--drop-feature", "dropped", multiple=True,
                 type=click.Choice(["f_b", "f_c", "f_lm", "f_f", "f_l"]),
                 help="Ablate a ranking feature (repeatable)."),
    click.option("--dc-ratio-form", is_flag=True, help="Dale-Chall with the raw-ratio first term."),
    click.option("--min-split-tokens", type=int, default=None),
    click.option("--max-depth", type=int, default=None),
]


def _with_config_options(fn):
    for option in reversed(_CONFIG_OPTIONS):
        fn = option(fn)
    return fn


def _build_config(config_path, **kwargs) -> PipelineConfig:
    overrides = {
        "general_table": kwargs.get("general_table"),
        "legal_table": kwargs.get("legal_table"),
        "lexicon": kwargs.get("lexicon"),
        "phrases": kwargs.get("phrases"),
        "gazetteer": kwargs.get("gazetteer"),
        "embeddings": kwargs.get("embeddings"),
        "real_words": kwargs.get("real_words"),
        "familiar_words": kwargs.get("familiar_words"),
        "weights": kwargs.get("weights"),
        "provider_url": kwargs.get("provider_url"),
        "fixture_dir": kwargs.get("fixture_dir"),
        "n_candidates": kwargs.get("n_candidates"),
        "min_split_tokens": kwargs.get("min_split_tokens"),
        "max_depth": kwargs.get("max_depth"),
    }
    if kwargs.get("no_ls"):
        overrides["ls_enabled"] = False
    if kwargs.get("no_split"):
        overrides["split_enabled"] = False
    if kwargs.get("dc_ratio_form"):
        overrides["dc_ratio_form"] = True
    for feature in kwargs.get("dropped", ()):
        overrides[f"use_{feature}"] = False
    try:
        if config_path:
            return read_config(config_path, overrides)
        return PipelineConfig(**{k: v for k, v in overrides.items() if v is not None})
    except (ValueError, OSError) as exc:
        _fail(EXIT_USAGE, str(exc))


def _load(config: PipelineConfig):
    try:
        resources = load_resources(config)
        provider = provider_from_config(config)
    except ResourceError as exc:
        _fail(EXIT_RESOURCE, str(exc))
    except ProviderError as exc:
        _fail(EXIT_PROVIDER, str(exc))
    return resources, provider


@main.command("build-freq")
@click.option("--input", "input_dir", required=True, type=click.Path(exists=True),
              help="Directory of UTF-8 text files (or a single file).")
@click.option("--output", "output_path", required=True, type=click.Path())
@click.option("--per-line", is_flag=True, help="Treat each line as one document.")
@click.option("--zipf", "zipf_path", default=None,
              help="Also write a Zipf table to this path.")
@click.option("--label", default="corpus", help="Source label for the Zipf table.")
def build_freq(input_dir, output_path, per_line, zipf_path, label):
    """Count a corpus into a frequency table (and optionally a Zipf table)."""
    root = Path(input_dir)
    files = sorted(p for p in root.rglob("*") if p.is_file()) if root.is_dir() else [root]
    if not files:
        _fail(EXIT_RESOURCE, f"no input files under {input_dir}")

    def documents():
        for path in files:
            text = path.read_text(encoding="utf-8")
            if per_line:
                yield from text.splitlines()
            else:
                yield text

    table = frequency.ingest_corpus(documents())
    frequency.write_frequency_table(table, output_path)
    click.echo(f"{table.total_types} types / {table.total_tokens} tokens -> {output_path}")
    if zipf_path:
        try:
            zipf = frequency.build_zipf_table(table, label)
        except frequency.TableError as exc:
            _fail(EXIT_RESOURCE, str(exc))
        frequency.write_zipf_table(zipf, zipf_path)
        click.echo(f"zipf table -> {zipf_path}")


@main.command("build-lexicon")
@click.option("--general", required=True, type=click.Path(exists=True))
@click.option("--legal", required=True, type=click.Path(exists=True))
@click.option("--phrases", default=None, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--k-general", type=float, default=2.0, show_default=True)
@click.option("--k-domain", type=float, default=2.0, show_default=True)
def build_lexicon(general, legal, phrases, out_path, k_general, k_domain):
    """Derive the complex-word lexicon from two corpus tables."""
    try:
        zipf_general = frequency.load_zipf_any(general, "general")
        zipf_legal = frequency.load_zipf_any(legal, "legal")
        lexicon = build_complex_lexicon(
            zipf_general, zipf_legal, phrases, CwiConfig(k_general, k_domain)
        )
    except (frequency.TableError, OSError, ValueError) as exc:
        _fail(EXIT_RESOURCE, str(exc))
    write_lexicon(lexicon, out_path)
    click.echo(
        f"{len(lexicon.complex_words)} complex words, "
        f"{len(lexicon.complex_phrases)} phrases -> {out_path}"
    )


@main.command("simplify")
@_with_config_options
@click.option("--input", "input_path", type=click.Path(exists=True), default=None,
              help="Sentence-per-line input file (otherwise pass SENTENCE).")
@click.option("--out", "out_path", type=click.Path(), default=None)
@click.option("--batch", is_flag=True, help="Emit JSONL records instead of plain text.")
@click.argument("sentence", required=False)
def simplify_cmd(config_path, input_path, out_path, batch, sentence, **kwargs):
    """Simplify one sentence or a file of sentences."""
    config = _build_config(config_path, **kwargs)
    resources, provider = _load(config)
    if sentence is None and input_path is None:
        _fail(EXIT_USAGE, "provide a SENTENCE argument or --input FILE")
    if sentence is not None:
        sentences = [sentence]
    else:
        sentences = [
            line.strip()
            for line in Path(input_path).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
    out_lines = []
    for sent in sentences:
        try:
            record = simplify(sent, config, resources, provider)
        except PipelineError as exc:
            _fail(EXIT_PROVIDER, str(exc))
        if batch:
            out_lines.append(json.dumps(record.to_dict(), ensure_ascii=False))
        else:
            out_lines.append(" ".join(record.final))
    output = "\n".join(out_lines) + "\n"
    if out_path:
        Path(out_path).write_text(output, encoding="utf-8")
    else:
        click.echo(output, nl=False)


@main.command("eval")
@click.option("--original", "original_path", required=True, type=click.Path(exists=True))
@click.option("--output", "output_path", required=True, type=click.Path(exists=True))
@click.option("--embeddings", required=True, type=click.Path(exists=True))
@click.option("--familiar", "familiar_path", required=True, type=click.Path(exists=True))
@click.option("--report", "report_path", required=True, type=click.Path())
@click.option("--dc-ratio-form", is_flag=True)
def eval_cmd(original_path, output_path, embeddings, familiar_path, report_path, dc_ratio_form):
    """Score line-aligned original/output files with FKGL, DC and SD."""
    try:
        emb = load_embeddings(embeddings)
        familiar = metrics.FamiliarWordList.from_file(familiar_path)
    except (OSError, ValueError) as exc:
        _fail(EXIT_RESOURCE, str(exc))
    originals = Path(original_path).read_text(encoding="utf-8").splitlines()
    outputs = Path(output_path).read_text(encoding="utf-8").splitlines()
    pairs = [(o.strip(), s.strip()) for o, s in zip(originals, outputs) if o.strip() and s.strip()]
    if not pairs:
        _fail(EXIT_USAGE, "no aligned sentence pairs to score")
    rows = []
    for orig, out in pairs:
        try:
            report = metrics.readability_report(orig, out, familiar, emb, dc_ratio_form)
        except metrics.MetricError as exc:
            log.warning("skipping pair (%s): %s", orig[:40], exc)
            continue
        rows.append(report.to_dict())
    if not rows:
        _fail(EXIT_USAGE, "no scorable pairs")
    aggregates = {
        key: sum(r[key] for r in rows) / len(rows) for key in ("fkgl", "dc", "sd")
    }
    payload = {"pairs": rows, "aggregates": aggregates, "n": len(rows)}
    Path(report_path).write_text(
        json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8"
    )
    click.echo(json.dumps(aggregates, sort_keys=True))


@main.command("optimize-weights")
@_with_config_options
@click.option("--validation", required=True, type=click.Path(exists=True),
              help="Sentence-per-line validation set.")
@click.option("--budget", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--trace", "trace_path", default=None, type=click.Path())
def optimize_cmd(config_path, validation, budget, seed, out_path, trace_path, **kwargs):
    """Tune the five ranking weights on a validation set."""
    config = _build_config(config_path, **kwargs)
    resources, provider = _load(config)
    sentences = [
        line.strip()
        for line in Path(validation).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if not sentences:
        _fail(EXIT_USAGE, "validation set is empty")
    objective = make_objective(sentences, config, resources, provider)
    trace = optimize_weights(objective, SearchDomain(), budget, seed)
    w = RankingWeights(*trace.best_point)
    write_weights(w, out_path)
    if trace_path:
        with open(trace_path, "w", encoding="utf-8") as fh:
            for point, value in trace.iterations:
                fh.write(json.dumps({"weights": list(point), "objective": value}) + "\n")
    click.echo(f"best objective {trace.best_value:.6f} -> {out_path}")


@main.command("benchmark")
@_with_config_options
@click.option("--dataset", required=True, type=click.Path(exists=True))
@click.option("--chunks", type=int, default=10, show_default=True)
@click.option("--chunk-size", type=int, default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--compare", "compare_path", default=None, type=click.Path(exists=True),
              help="Line-aligned output file of another system.")
@click.option("--report", "report_path", required=True, type=click.Path())
def benchmark_cmd(config_path, dataset, chunks, chunk_size, seed, compare_path, report_path, **kwargs):
    """Chunked benchmark with paired significance tests."""
    config = _build_config(config_path, **kwargs)
    resources, provider = _load(config)
    try:
        report = run_benchmark(
            dataset, config, resources, provider,
            chunks=chunks, chunk_size=chunk_size, seed=seed, compare_path=compare_path,
        )
    except PipelineError as exc:
        _fail(EXIT_PROVIDER, str(exc))
    except ValueError as exc:
        _fail(EXIT_USAGE, str(exc))
    Path(report_path).write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True), encoding="utf-8"
    )
    click.echo(json.dumps({"overall": report.overall, "p_values": report.p_values}, sort_keys=True))


@main.command("segment")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--output", "output_path", required=True, type=click.Path())
def segment_cmd(input_path, output_path):
    """Pre-split a document into one sentence per line."""
    text = Path(input_path).read_text(encoding="utf-8")
    sentences = []
    for paragraph in text.splitlines():
        if paragraph.strip():
            sentences.extend(metrics.split_sentences(paragraph))
    Path(output_path).write_text("\n".join(sentences) + "\n", encoding="utf-8")
    click.echo(f"{len(sentences)} sentences -> {output_path}")


if __name__ == "__main__":
    main()
