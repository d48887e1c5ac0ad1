"""USLT: unsupervised simplification of legal text.

Lexical simplification (corpus-statistical complex-word identification,
masked-LM candidates, five-feature ranking) followed by recursive
core/context sentence splitting, with readability metrics, a weight
optimizer and a benchmark harness.
"""

from .candidates import (
    CandidateSet,
    FixtureProvider,
    HttpProvider,
    MaskedLmProvider,
    MaskedQuery,
    ProviderError,
    build_masked_query,
    generate_candidates,
)
from .cwi import (
    ComplexWordLexicon,
    CwiConfig,
    TokenSpan,
    build_complex_lexicon,
    default_ne_tags,
    identify_complex_spans,
)
from .frequency import (
    FrequencyTable,
    ZipfTable,
    build_zipf_table,
    ingest_corpus,
    zipf_value,
)
from .metrics import (
    FamiliarWordList,
    ReadabilityReport,
    count_syllables,
    dale_chall,
    fkgl,
    semantic_difference,
)
from .optimize import OptimizationTrace, SearchDomain, harmonic_mean, optimize_weights
from .pipeline import (
    BenchmarkReport,
    PipelineConfig,
    PipelineError,
    PipelineResources,
    ResourceError,
    SimplificationRecord,
    load_resources,
    run_benchmark,
    simplify,
)
from .ranking import (
    CandidateFeatures,
    RankingWeights,
    WordResources,
    aggregate_score,
    compute_features,
    eliminate_candidates,
    select_substitutions,
)
from .splitting import SplitConfig, SplitNode, flatten_tree, split_sentence
from .stats import wilcoxon_signed_rank

__version__ = "0.1.0"
