"""Finitely supported probabilities on words, with exact weights."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Iterator

from .automaton import Automaton, StateSet, Word, popcount, preimage
from .linalg import char_vector, distribution_matrix, dot, row_times

SUPPORT_CAP = 10**6


class DistributionError(ValueError):
    pass


class WordDistribution(Mapping):
    """Immutable map ``word -> weight`` with positive weights summing to 1."""

    __slots__ = ("_w",)

    def __init__(self, weights: Mapping[Word, Fraction] | Iterable[tuple[Word, Fraction]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        acc: dict[Word, Fraction] = {}
        for w, p in items:
            p = Fraction(p)
            if p < 0:
                raise DistributionError(f"negative weight {p} on {w}")
            w = tuple(w)
            acc[w] = acc.get(w, Fraction(0)) + p
        acc = {w: p for w, p in acc.items() if p}
        if not acc:
            raise DistributionError("empty support")
        if sum(acc.values()) != 1:
            raise DistributionError(f"weights sum to {sum(acc.values())}, not 1")
        self._w = acc

    def __getitem__(self, w: Word) -> Fraction:
        return self._w.get(tuple(w), Fraction(0))

    def __iter__(self) -> Iterator[Word]:
        return iter(self._w)

    def __len__(self) -> int:
        return len(self._w)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._w

    @property
    def support(self) -> frozenset[Word]:
        return frozenset(self._w)

    @property
    def max_length(self) -> int:
        return max(len(w) for w in self._w)

    @property
    def min_length(self) -> int:
        return min(len(w) for w in self._w)

    def __mul__(self, other: "WordDistribution") -> "WordDistribution":
        return product(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, WordDistribution):
            return self._w == other._w
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._w.items()))

    def __repr__(self):
        body = ", ".join(f"{w}: {p}" for w, p in sorted(self._w.items()))
        return f"WordDistribution({{{body}}})"


def point_mass(w: Word = ()) -> WordDistribution:
    return WordDistribution({tuple(w): Fraction(1)})


def uniform_on(words: Iterable[Word]) -> WordDistribution:
    words = [tuple(w) for w in words]
    if not words:
        raise DistributionError("uniform distribution on an empty set")
    if len(set(words)) != len(words):
        raise DistributionError("duplicate words")
    p = Fraction(1, len(words))
    return WordDistribution({w: p for w in words})


def letter_distribution(weights: Mapping[int, Fraction] | Iterable[Fraction]) -> WordDistribution:
    """Distribution supported on single letters, from ``{letter: weight}`` or a weight list."""
    if not isinstance(weights, Mapping):
        weights = dict(enumerate(weights))
    return WordDistribution({(a,): Fraction(p) for a, p in weights.items()})


def product(P: WordDistribution, Q: WordDistribution, cap: int = SUPPORT_CAP) -> WordDistribution:
    """Convolution: weight of ``w`` is the sum of ``P(u) Q(v)`` over ``uv == w``."""
    if len(P) * len(Q) > cap:
        raise DistributionError(f"product support {len(P)}x{len(Q)} exceeds cap {cap}")
    acc: dict[Word, Fraction] = {}
    for u, p in P.items():
        for v, q in Q.items():
            w = u + v
            acc[w] = acc.get(w, Fraction(0)) + p * q
    return WordDistribution(acc)


def cesaro_average(P: WordDistribution, n: int, cap: int = SUPPORT_CAP) -> WordDistribution:
    """``(1/n) * sum_{m<n} P^m`` with ``P^0`` the point mass on the empty word."""
    if n < 1:
        raise DistributionError("Cesaro average needs n >= 1")
    power = point_mass(())
    acc: dict[Word, Fraction] = {}
    for m in range(n):
        if m:
            power = product(power, P, cap)
        for w, p in power.items():
            acc[w] = acc.get(w, Fraction(0)) + p / n
        if len(acc) > cap:
            raise DistributionError(f"Cesaro support exceeds cap {cap}")
    return WordDistribution(acc)


def uniform_up_to(k: int, d: int, cap: int = SUPPORT_CAP) -> WordDistribution:
    """Uniform distribution on all words of length ``<= d`` over ``k`` letters."""
    size = sum(k**m for m in range(d + 1))
    if size > cap:
        raise DistributionError(f"support {size} exceeds cap {cap}")
    return uniform_on(w for m in range(d + 1) for w in cartesian(range(k), repeat=m))


def all_words_up_to(k: int, d: int) -> set[Word]:
    return {w for m in range(d + 1) for w in cartesian(range(k), repeat=m)}


def expectation_ZS(A: Automaton, P: WordDistribution, S: StateSet, R: StateSet) -> Fraction:
    """``E_P |S w^-1 & R|`` computed as ``[R] pi(P) [S]^T``."""
    M = distribution_matrix(A, P)
    return dot(row_times(char_vector(R, A.n), M), char_vector(S, A.n))


def expectation_ZS_direct(A: Automaton, P: WordDistribution, S: StateSet, R: StateSet) -> Fraction:
    """Same expectation by enumerating the support."""
    return sum((p * popcount(preimage(A, S, w) & R) for w, p in P.items()), Fraction(0))


def preserves(A: Automaton, P: WordDistribution, R: StateSet) -> bool:
    """``[R] pi(P) == [R]``."""
    r = char_vector(R, A.n)
    return row_times(r, distribution_matrix(A, P)) == r


__all__ = [
    "WordDistribution", "DistributionError", "point_mass", "uniform_on", "letter_distribution",
    "product", "cesaro_average", "uniform_up_to", "all_words_up_to", "expectation_ZS",
    "expectation_ZS_direct", "preserves",
]
