import math

import pytest

from uslt.frequency import (
    FrequencyTable,
    TableError,
    build_zipf_table,
    ingest_corpus,
    read_frequency_table,
    read_zipf_table,
    write_frequency_table,
    write_zipf_table,
    zipf_value,
)


class TestIngest:
    def test_empty_corpus(self):
        table = ingest_corpus([])
        assert table.counts == {}
        assert table.total_tokens == 0
        assert table.total_types == 0
        assert table.is_empty

    def test_hand_counted(self):
        table = ingest_corpus(["the the cat"])
        assert table.counts == {"the": 2, "cat": 1}
        assert table.total_words_millions == 3e-6
        assert table.total_types_millions == 2e-6

    def test_lowercasing_and_punctuation(self):
        table = ingest_corpus(["The cat, the DOG."])
        assert table.counts == {"the": 2, "cat": 1, "dog": 1}

    def test_digits_discarded_but_internal_joiners_kept(self):
        table = ingest_corpus(["section 42 re-filed the state's brief"])
        assert "42" not in table.counts
        assert table.counts["re-filed"] == 1
        assert table.counts["state's"] == 1

    def test_token_total_matches_count_sum(self):
        table = ingest_corpus(["a b c", "a a b"])
        assert sum(table.counts.values()) == table.total_tokens
        assert len(table.counts) == table.total_types


class TestZipfValue:
    def test_unseen_word(self):
        assert zipf_value(0, 1.0, 0.0) == 3.0

    def test_thousand_per_million(self):
        assert zipf_value(999, 1.0, 0.0) == 6.0

    def test_zipf_class_five(self):
        # ~100 occurrences per million in a large corpus sits at class 5
        w_millions = 50.0
        count = int(100 * w_millions)
        z = zipf_value(count, w_millions, 0.05)
        assert 4.9 < z < 5.1

    def test_domain_error(self):
        with pytest.raises(TableError):
            zipf_value(10, 0.0, 0.0)
        with pytest.raises(TableError):
            zipf_value(-1, 1.0, 0.0)

    def test_strictly_increasing_in_count(self):
        values = [zipf_value(c, 0.5, 0.01) for c in range(0, 2000)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_decade_shift_is_exactly_one(self):
        # multiplying count+1 by 10 adds exactly 1.0, for arbitrary counts
        for w, n in ((1.0, 0.0), (0.011111, 5e-6), (3.7, 0.21)):
            for c in (0, 1, 4, 12, 99, 123, 999, 54321):
                low = zipf_value(c, w, n)
                high = zipf_value(10 * (c + 1) - 1, w, n)
                assert high - low == 1.0


class TestBuildZipfTable:
    def test_single_word_table(self):
        freq = FrequencyTable({"a": 999}, 999, 1)
        table = build_zipf_table(freq, "tiny")
        expected = zipf_value(999, 999e-6, 1e-6)
        assert table.zipf["a"] == expected
        assert table.mean == expected
        assert table.std == 0.0

    def test_equal_counts_zero_std(self):
        freq = FrequencyTable({"a": 7, "b": 7, "c": 7}, 21, 3)
        table = build_zipf_table(freq, "flat")
        assert len(set(table.zipf.values())) == 1
        assert table.std == 0.0

    def test_five_word_oracle(self):
        # frozen from a 40-digit mpmath evaluation of the closed form
        freq = FrequencyTable({"a": 1, "b": 10, "c": 100, "d": 1000, "e": 10000}, 11111, 5)
        table = build_zipf_table(freq, "synth")
        expected = {
            "a": 5.2550814575586469,
            "b": 5.9954441470528908,
            "c": 6.9583728356773083,
            "d": 7.9544855393739844,
            "e": 8.9540948891715284,
        }
        for word, value in expected.items():
            assert table.zipf[word] == pytest.approx(value, abs=1e-9)
        assert table.mean == pytest.approx(7.0234957737668717, abs=1e-9)
        assert table.std == pytest.approx(1.3253207329617471, abs=1e-9)

    def test_matches_zipf_value_for_every_word(self):
        freq = ingest_corpus(["the court held the motion", "a writ of habeas corpus"])
        table = build_zipf_table(freq, "mixed")
        w, n = freq.total_words_millions, freq.total_types_millions
        for word, count in freq.counts.items():
            assert table.zipf[word] == zipf_value(count, w, n)

    def test_count_order_implies_zipf_order(self):
        freq = ingest_corpus(["b b b c c a"])
        table = build_zipf_table(freq, "ord")
        assert table.zipf["b"] > table.zipf["c"] > table.zipf["a"]

    def test_empty_table_rejected(self):
        with pytest.raises(TableError):
            build_zipf_table(ingest_corpus([]), "empty")

    def test_unseen_fallback(self):
        freq = FrequencyTable({"a": 99}, 99, 1)
        table = build_zipf_table(freq, "t")
        assert table.value("zzz") == zipf_value(0, 99e-6, 1e-6)
        assert table.value("a") == table.zipf["a"]


class TestRoundTrip:
    def test_frequency_round_trip(self, tmp_path):
        table = ingest_corpus(["the quick brown fox", "the lazy dog", "the fox"])
        path = tmp_path / "freq.tsv"
        write_frequency_table(table, path)
        loaded = read_frequency_table(path)
        assert loaded.counts == table.counts
        assert loaded.total_tokens == table.total_tokens
        assert loaded.total_types == table.total_types

    def test_zipf_round_trip_bit_exact(self, tmp_path):
        freq = ingest_corpus(["a a a b b c d e f g h i j k l m n o p q r"])
        table = build_zipf_table(freq, "rt")
        path = tmp_path / "zipf.tsv"
        write_zipf_table(table, path)
        loaded = read_zipf_table(path)
        assert loaded.zipf == table.zipf
        assert loaded.mean == table.mean
        assert loaded.std == table.std
        assert loaded.source_label == table.source_label
        assert loaded.w_millions == table.w_millions
        assert loaded.n_millions == table.n_millions

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bogus.tsv"
        path.write_text("word\t3\n")
        with pytest.raises(TableError):
            read_frequency_table(path)


def test_mean_std_are_population_statistics():
    freq = FrequencyTable({"a": 1, "b": 100}, 101, 2)
    table = build_zipf_table(freq, "pop")
    values = list(table.zipf.values())
    mean = sum(values) / 2
    var = sum((v - mean) ** 2 for v in values) / 2  # population, not sample
    assert table.mean == pytest.approx(mean, abs=1e-12)
    assert table.std == pytest.approx(math.sqrt(var), abs=1e-12)
