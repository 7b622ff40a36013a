import numpy as np
import pytest

import cathist.domain as domain_mod
from cathist.core import ExplicitList, SizeOnly, ValidityError, WordList, WordPairs
from cathist.domain import load_domain, load_words
from cathist.numerics import make_rng

from conftest import WORDLIST_SIZE


class TestExplicitSampler:
    def setup_method(self):
        self.sampler = load_domain(ExplicitList(labels=tuple("abcdefghij")))

    def test_size(self):
        assert self.sampler.size == 10

    def test_encode_decode_bijection(self):
        for i in range(10):
            assert self.sampler.encode(self.sampler.decode(i)) == i

    def test_contains(self):
        assert self.sampler.contains("a")
        assert not self.sampler.contains("z")

    def test_unknown_label_errors(self):
        with pytest.raises(ValidityError):
            self.sampler.encode("z")

    def test_sampling_is_roughly_uniform(self):
        rng = make_rng(201)
        counts = {label: 0 for label in "abcdefghij"}
        for _ in range(100_000):
            counts[self.sampler.sample_distinct(rng, 1)[0]] += 1
        for label, c in counts.items():
            assert c / 100_000 == pytest.approx(0.1, abs=0.01), label

    def test_exclusion_is_respected(self):
        rng = make_rng(202)
        exclude = {"a", "b", "c"}
        for _ in range(2_000):
            drawn = self.sampler.sample_distinct(rng, 3, exclude)
            assert len(set(drawn)) == 3
            assert not (set(drawn) & exclude)

    def test_draw_everything_not_excluded(self):
        rng = make_rng(203)
        drawn = self.sampler.sample_distinct(rng, 7, {"a", "b", "c"})
        assert sorted(drawn) == list("defghij")

    def test_requesting_too_many_is_exhaustion(self):
        rng = make_rng(204)
        with pytest.raises(ValidityError, match="domain exhausted"):
            self.sampler.sample_distinct(rng, 8, {"a", "b", "c"})

    def test_exclusion_of_foreign_labels_does_not_count(self):
        rng = make_rng(205)
        drawn = self.sampler.sample_distinct(rng, 10, {"not-here", "nor-this"})
        assert sorted(drawn) == list("abcdefghij")

    def test_retry_cap_trips_under_heavy_collision(self, monkeypatch):
        monkeypatch.setattr(domain_mod, "RETRY_FACTOR", 1)
        sampler = load_domain(ExplicitList(labels=tuple(f"x{i}" for i in range(50))))
        with pytest.raises(ValidityError, match="rejection attempts"):
            sampler.sample_distinct(make_rng(206), 50)

    def test_k_zero(self):
        assert self.sampler.sample_distinct(make_rng(207), 0) == []


class TestWordListSampler:
    def test_loads_trims_and_dedupes(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("  alpha  \nbeta\n\nalpha\ngamma\n   \n", encoding="utf-8")
        words = load_words(path)
        assert words == ("alpha", "beta", "gamma")

    def test_empty_file_is_an_error(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("\n  \n", encoding="utf-8")
        with pytest.raises(ValidityError, match="no words"):
            load_words(path)

    def test_full_wordlist_size(self, wordlist_path):
        sampler = load_domain(WordList(wordlist_path))
        assert sampler.size == WORDLIST_SIZE
        assert sampler.contains("Male")
        assert sampler.contains("Female")

    def test_encode_decode_round_trip(self, small_wordlist_path):
        sampler = load_domain(WordList(small_wordlist_path))
        for i in range(sampler.size):
            assert sampler.encode(sampler.decode(i)) == i


class TestWordPairSampler:
    def test_size_is_square(self, small_wordlist_path):
        sampler = load_domain(WordPairs(small_wordlist_path))
        assert sampler.size == 100 * 100

    def test_full_wordlist_pair_size(self, wordlist_path):
        sampler = load_domain(WordPairs(wordlist_path))
        assert sampler.size == WORDLIST_SIZE**2

    def test_round_trip_on_random_indices(self, wordlist_path):
        sampler = load_domain(WordPairs(wordlist_path))
        rng = np.random.default_rng(208)
        for index in rng.integers(sampler.size, size=10_000):
            index = int(index)
            label = sampler.decode(index)
            first, space, second = label.partition(" ")
            assert space == " " and first and second
            assert sampler.encode(label) == index

    def test_single_words_are_not_pairs(self, small_wordlist_path):
        sampler = load_domain(WordPairs(small_wordlist_path))
        with pytest.raises(ValidityError, match="not a word pair"):
            sampler.encode("Male")
        with pytest.raises(ValidityError):
            sampler.encode("Male Female extra")

    def test_unknown_word_in_pair(self, small_wordlist_path):
        sampler = load_domain(WordPairs(small_wordlist_path))
        with pytest.raises(ValidityError, match="not in the word-pair domain"):
            sampler.encode("Male zzzzz")

    def test_sampling_draws_pairs(self, small_wordlist_path):
        sampler = load_domain(WordPairs(small_wordlist_path))
        rng = make_rng(209)
        for label in sampler.sample_distinct(rng, 25):
            assert sampler.contains(label)
            assert label.count(" ") == 1


class TestSizeOnlySampler:
    def test_decode_format(self):
        sampler = load_domain(SizeOnly(size=1_000))
        assert sampler.decode(0) == "cat-0"
        assert sampler.decode(999) == "cat-999"

    def test_custom_prefix(self):
        sampler = load_domain(SizeOnly(size=5, prefix="tok"))
        assert sampler.decode(3) == "tok-3"
        assert sampler.encode("tok-3") == 3

    def test_encode_rejects_non_canonical(self):
        sampler = load_domain(SizeOnly(size=1_000))
        for bad in ("cat-007", "cat-", "cat", "dog-1", "cat-1000", "cat--1", "cat-1.5"):
            with pytest.raises(ValidityError):
                sampler.encode(bad)

    def test_huge_domain_sampling(self):
        sampler = load_domain(SizeOnly(size=10**12))
        rng = make_rng(210)
        labels = sampler.sample_distinct(rng, 100)
        assert len(set(labels)) == 100
        for label in labels:
            assert sampler.contains(label)

    def test_prefix_containing_hyphen_round_trips(self):
        sampler = load_domain(SizeOnly(size=10, prefix="a-b"))
        assert sampler.encode(sampler.decode(7)) == 7
