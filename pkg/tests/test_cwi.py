import numpy as np
import pytest

from uslt.cwi import (
    RULE_DOMAIN,
    RULE_GENERAL,
    ComplexWordLexicon,
    CwiConfig,
    TokenSpan,
    build_complex_lexicon,
    default_ne_tags,
    identify_complex_spans,
    read_lexicon,
    write_lexicon,
)
from uslt.frequency import FrequencyTable, build_zipf_table, zipf_value


def table_from_counts(counts, label):
    freq = FrequencyTable(dict(counts), sum(counts.values()), len(counts))
    return build_zipf_table(freq, label)


def brute_force_membership(zipf_general, zipf_legal, config):
    """Direct re-evaluation of both inequalities over the whole vocabulary."""
    flagged = set()
    cut = zipf_general.mean - config.k_general * zipf_general.std
    for word in set(zipf_general.zipf) | set(zipf_legal.zipf):
        z_s = zipf_general.value(word)
        if z_s < cut:
            flagged.add(word)
        elif word in zipf_general.zipf and word in zipf_legal.zipf:
            if z_s < zipf_legal.zipf[word] - config.k_domain * zipf_legal.std:
                flagged.add(word)
    return flagged


@pytest.fixture
def toy_tables():
    # tight general distribution: the count-0 fallback (~5.4) falls below the
    # rule-1 cut (~6.8), and "plaintiff"/"writ" are domain-heavy (rule 2)
    general = table_from_counts(
        {"the": 900, "cat": 800, "dog": 750, "house": 700, "walk": 650,
         "court": 400, "plaintiff": 30, "writ": 25},
        "general",
    )
    legal = table_from_counts(
        {"the": 9000, "plaintiff": 900, "writ": 850, "court": 1200, "motion": 700},
        "legal",
    )
    return general, legal


class TestBuildLexicon:
    def test_word_at_mean_not_complex_by_rule1(self):
        general = table_from_counts({"a": 100, "b": 100, "c": 100}, "g")
        legal = table_from_counts({"x": 5}, "l")
        lexicon = build_complex_lexicon(general, legal)
        # all general words sit exactly at the mean; strict inequality
        assert not any(w in lexicon.complex_words for w in ("a", "b", "c"))

    def test_oracle_equivalence_random_regimes(self):
        rng = np.random.default_rng(42)
        for regime in range(5):
            spread = rng.uniform(0.5, 4.0)
            vocab = [f"w{i}" for i in range(200)]
            counts_g = {
                w: int(10 ** rng.uniform(0, spread)) for w in vocab[:170]
            }
            counts_l = {
                w: int(10 ** rng.uniform(0, spread)) for w in vocab[100:]
            }
            general = table_from_counts(counts_g, "g")
            legal = table_from_counts(counts_l, "l")
            config = CwiConfig(2.0, 2.0)
            lexicon = build_complex_lexicon(general, legal, config=config)
            assert lexicon.complex_words == brute_force_membership(general, legal, config)

    def test_rule2_flags_domain_specific_word(self, toy_tables):
        general, legal = toy_tables
        lexicon = build_complex_lexicon(general, legal)
        # "plaintiff": rare in general corpus, frequent in legal corpus
        assert "plaintiff" in lexicon.complex_words
        # "the" is frequent in both
        assert "the" not in lexicon.complex_words

    def test_provenance_tags(self, toy_tables):
        general, legal = toy_tables
        lexicon = build_complex_lexicon(general, legal)
        for word in lexicon.complex_words:
            assert lexicon.provenance[word] in (RULE_GENERAL, RULE_DOMAIN)

    def test_raising_thresholds_never_adds_words(self, toy_tables):
        general, legal = toy_tables
        rng = np.random.default_rng(7)
        base = build_complex_lexicon(general, legal, config=CwiConfig(1.0, 1.0))
        previous = base.complex_words
        for k in (1.5, 2.0, 3.0, 5.0):
            jitter = float(rng.uniform(0, 0.1))
            current = build_complex_lexicon(
                general, legal, config=CwiConfig(k + jitter, k + jitter)
            ).complex_words
            assert current <= previous
            previous = current

    def test_phrase_file(self, tmp_path, toy_tables):
        general, legal = toy_tables
        phrase_file = tmp_path / "phrases.txt"
        phrase_file.write_text(
            "# legal expressions\nactus reus\nmens rea\nhereinafter\n"
        )
        lexicon = build_complex_lexicon(general, legal, phrase_file)
        assert ("actus", "reus") in lexicon.complex_phrases
        assert ("mens", "rea") in lexicon.complex_phrases
        # single-word entries become complex words
        assert "hereinafter" in lexicon.complex_words
        assert lexicon.provenance["hereinafter"] == "phrase-list"

    def test_missing_phrase_file_is_error(self, tmp_path, toy_tables):
        general, legal = toy_tables
        with pytest.raises(OSError):
            build_complex_lexicon(general, legal, tmp_path / "nope.txt")

    def test_absent_word_uses_count_zero_fallback(self, toy_tables):
        general, legal = toy_tables
        lexicon = build_complex_lexicon(general, legal)
        # "motion" only exists in the legal table; its general-side value is
        # the unseen fallback, far below the general mean
        fallback = zipf_value(0, general.w_millions, general.n_millions)
        assert general.value("motion") == fallback
        assert "motion" in lexicon.complex_words


class TestSpanIdentification:
    @pytest.fixture
    def lexicon(self):
        lex = ComplexWordLexicon()
        lex.complex_words.update({"plaintiff", "injunction", "hereinafter"})
        lex.provenance.update({"plaintiff": "rule2", "injunction": "rule1",
                               "hereinafter": "phrase-list"})
        lex.complex_phrases.add(("actus", "reus"))
        lex.provenance[("actus", "reus")] = "phrase-list"
        return lex

    def test_nothing_flagged(self, lexicon):
        tokens = "The court convened".split()
        assert identify_complex_spans(tokens, lexicon, [False] * 3) == []

    def test_word_and_phrase(self, lexicon):
        tokens = "the plaintiff committed the actus reus".split()
        spans = identify_complex_spans(tokens, lexicon, [False] * 6)
        assert spans == [
            TokenSpan(1, 2, "plaintiff"),
            TokenSpan(4, 6, "actus reus"),
        ]

    def test_named_entity_excluded(self, lexicon):
        lexicon.complex_words.add("smith")
        tokens = "Smith filed an injunction".split()
        ne = default_ne_tags(tokens, gazetteer={"smith"})
        spans = identify_complex_spans(tokens, lexicon, ne)
        assert spans == [TokenSpan(3, 4, "injunction")]

    def test_phrase_list_words_exempt_from_ne(self, lexicon):
        tokens = "the Hereinafter clause".split()
        ne = default_ne_tags(tokens)
        assert ne[1]  # capitalized off sentence start
        spans = identify_complex_spans(tokens, lexicon, ne)
        assert spans == [TokenSpan(1, 2, "Hereinafter")]

    def test_phrase_matched_case_insensitively(self, lexicon):
        tokens = "The Actus Reus was proven".split()
        spans = identify_complex_spans(tokens, lexicon, [False] * 5)
        assert spans == [TokenSpan(1, 3, "Actus Reus")]

    def test_longest_match_wins(self):
        lex = ComplexWordLexicon()
        lex.complex_phrases.update({("ex", "parte"), ("ex", "parte", "order")})
        tokens = "an ex parte order issued".split()
        spans = identify_complex_spans(tokens, lex, [False] * 5)
        assert spans == [TokenSpan(1, 4, "ex parte order")]

    def test_length_mismatch_rejected(self, lexicon):
        with pytest.raises(ValueError):
            identify_complex_spans(["a"], lexicon, [False, False])

    def test_spans_disjoint_sorted_on_random_sentences(self, lexicon):
        rng = np.random.default_rng(3)
        vocab = ["the", "plaintiff", "actus", "reus", "court", "injunction",
                 "ruled", "hereinafter", "a", "motion"]
        for _ in range(200):
            tokens = [vocab[i] for i in rng.integers(0, len(vocab), size=12)]
            ne = list(rng.random(12) < 0.2)
            spans = identify_complex_spans(tokens, lexicon, ne)
            again = identify_complex_spans(tokens, lexicon, ne)
            assert spans == again  # deterministic
            for a, b in zip(spans, spans[1:]):
                assert a.end <= b.start  # disjoint and sorted


class TestNeHeuristic:
    def test_sentence_initial_capital_not_ne(self):
        assert default_ne_tags(["Smith", "went", "home"]) == [False, False, False]

    def test_mid_sentence_capital_is_ne(self):
        assert default_ne_tags(["the", "Smith", "case"]) == [False, True, False]

    def test_gazetteer_overrides_position(self):
        tags = default_ne_tags(["smith", "street"], gazetteer={"smith"})
        assert tags == [True, False]


def test_lexicon_round_trip(tmp_path):
    lex = ComplexWordLexicon()
    lex.complex_words.update({"writ", "estoppel"})
    lex.complex_phrases.add(("res", "judicata"))
    lex.provenance.update(
        {"writ": "rule1", "estoppel": "rule2", ("res", "judicata"): "phrase-list"}
    )
    path = tmp_path / "lex.tsv"
    write_lexicon(lex, path)
    loaded = read_lexicon(path)
    assert loaded.complex_words == lex.complex_words
    assert loaded.complex_phrases == lex.complex_phrases
    assert loaded.provenance == lex.provenance


def test_shipped_phrase_list_has_400_entries():
    from importlib.resources import files

    data = files("uslt").joinpath("data/legal_phrases.txt").read_text(encoding="utf-8")
    entries = [ln for ln in data.splitlines() if ln.strip() and not ln.startswith("#")]
    assert len(entries) == 400
    assert "actus reus" in entries
