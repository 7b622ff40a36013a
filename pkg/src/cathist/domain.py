"""Uniform sampling of distinct categories from large implicit domains.

A domain is never materialized. Each sampler pairs an exact size with an
integer indexer (a bijection between [0, size) and labels), so drawing a
uniform category is drawing a uniform index. Distinctness and exclusion are
handled by rejection, which stays cheap while the number of requested
categories is far below the domain size.
"""

from __future__ import annotations

from pathlib import Path

from .core import DomainSpec, ExplicitList, SizeOnly, ValidityError, WordList, WordPairs
from .numerics import Rng

# Rejection attempts allowed per requested category before giving up.
RETRY_FACTOR = 10_000


class DomainSampler:
    """Base interface: exact size, decode/encode bijection, membership."""

    spec: DomainSpec
    size: int

    def decode(self, index: int) -> str:
        raise NotImplementedError

    def encode(self, label: str) -> int:
        """Index of label, raising ValidityError when it is not in the domain."""
        raise NotImplementedError

    def contains(self, label: str) -> bool:
        try:
            self.encode(label)
        except ValidityError:
            return False
        return True

    def sample_distinct(self, rng: Rng, k: int, exclude: frozenset[str] | set[str] = frozenset()) -> list[str]:
        """Draw k distinct uniform categories, none of them in exclude."""
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        if k == 0:
            return []
        excluded_members = sum(1 for label in exclude if self.contains(label))
        if k > self.size - excluded_members:
            raise ValidityError(
                f"domain exhausted: requested {k} distinct categories from a domain of "
                f"size {self.size} with {excluded_members} excluded"
            )
        chosen: list[str] = []
        rejected = set(exclude)
        attempts = 0
        limit = RETRY_FACTOR * k
        while len(chosen) < k:
            attempts += 1
            if attempts > limit:
                raise ValidityError(
                    f"domain exhausted: {attempts - 1} rejection attempts for {k} categories"
                )
            label = self.decode(int(rng.integers(self.size)))
            if label in rejected:
                continue
            rejected.add(label)
            chosen.append(label)
        return chosen


class _ExplicitSampler(DomainSampler):
    def __init__(self, spec: ExplicitList) -> None:
        self.spec = spec
        self._labels = spec.labels
        self._index = {label: i for i, label in enumerate(spec.labels)}
        self.size = len(spec.labels)

    def decode(self, index: int) -> str:
        return self._labels[index]

    def encode(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidityError(f"category {label!r} is not in the domain") from None


class _WordListSampler(DomainSampler):
    def __init__(self, spec: WordList, words: tuple[str, ...]) -> None:
        self.spec = spec
        self._words = words
        self._index = {w: i for i, w in enumerate(words)}
        self.size = len(words)

    def decode(self, index: int) -> str:
        return self._words[index]

    def encode(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidityError(f"category {label!r} is not in the word domain") from None


class _WordPairSampler(DomainSampler):
    """Ordered pairs "first second" over one wordlist; size is the square."""

    def __init__(self, spec: WordPairs, words: tuple[str, ...]) -> None:
        self.spec = spec
        self._words = words
        self._index = {w: i for i, w in enumerate(words)}
        self._m = len(words)
        self.size = self._m * self._m

    def decode(self, index: int) -> str:
        first, second = divmod(index, self._m)
        return f"{self._words[first]} {self._words[second]}"

    def encode(self, label: str) -> int:
        parts = label.split(" ")
        if len(parts) != 2 or not all(parts):
            raise ValidityError(f"category {label!r} is not a word pair")
        try:
            return self._index[parts[0]] * self._m + self._index[parts[1]]
        except KeyError:
            raise ValidityError(f"category {label!r} is not in the word-pair domain") from None


class _SizeOnlySampler(DomainSampler):
    def __init__(self, spec: SizeOnly) -> None:
        self.spec = spec
        self.size = spec.size
        self._prefix = spec.prefix

    def decode(self, index: int) -> str:
        return f"{self._prefix}-{index}"

    def encode(self, label: str) -> int:
        prefix, sep, digits = label.rpartition("-")
        if sep and prefix == self._prefix and digits.isdigit() and str(int(digits)) == digits:
            index = int(digits)
            if 0 <= index < self.size:
                return index
        raise ValidityError(f"category {label!r} is not in the generated domain")


def load_words(path: Path) -> tuple[str, ...]:
    """Read a UTF-8 wordlist, one word per line, trimmed, blanks ignored,
    duplicates removed keeping first occurrence."""
    with open(path, encoding="utf-8") as fh:
        words = dict.fromkeys(w for line in fh if (w := line.strip()))
    if not words:
        raise ValidityError(f"wordlist {path} contains no words")
    return tuple(words)


def load_domain(spec: DomainSpec) -> DomainSampler:
    """Materialize a sampler for a domain description (reads wordlist files)."""
    if isinstance(spec, ExplicitList):
        return _ExplicitSampler(spec)
    if isinstance(spec, WordList):
        return _WordListSampler(spec, load_words(spec.path))
    if isinstance(spec, WordPairs):
        return _WordPairSampler(spec, load_words(spec.path))
    if isinstance(spec, SizeOnly):
        return _SizeOnlySampler(spec)
    raise TypeError(f"unknown domain spec: {spec!r}")
