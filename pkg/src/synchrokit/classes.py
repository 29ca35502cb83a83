"""Automaton classes the averaging construction applies to, and their witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .automaton import Automaton, StateSet, Word, apply, is_strongly_connected, mask, members, popcount
from .lp import solve_lp


class InconsistencyError(RuntimeError):
    """A detector produced a witness that fails its own validation."""


def in_degrees(A: Automaton) -> list[int]:
    deg = [0] * A.n
    for row in A.delta:
        for t in row:
            deg[t] += 1
    return deg


def preimage_counts(A: Automaton) -> list[list[int]]:
    """``counts[q][a] == |q a^-1|``."""
    counts = [[0] * A.k for _ in range(A.n)]
    for p in range(A.n):
        for a, t in enumerate(A.delta[p]):
            counts[t][a] += 1
    return counts


def is_eulerian(A: Automaton) -> bool:
    return all(d == A.k for d in in_degrees(A)) and is_strongly_connected(A)


def is_pseudo_eulerian_witness(A: Automaton, weights: Sequence[Fraction]) -> bool:
    """Strictly positive letter weights summing to 1 with every column of the
    weighted transition matrix summing to 1 as well."""
    if len(weights) != A.k or any(Fraction(p) <= 0 for p in weights):
        return False
    if sum(weights) != 1:
        return False
    counts = preimage_counts(A)
    return all(sum(p * counts[q][a] for a, p in enumerate(weights)) == 1 for q in range(A.n))


def pseudo_eulerian_witness(A: Automaton) -> list[Fraction] | None:
    """Strictly positive ``p_a`` making the weighted transition matrix doubly
    stochastic, or None.

    Solves ``max t`` over ``p_a = t + y_a`` with ``y_a >= 0``; a positive
    solution exists iff the optimum has ``t > 0``.
    """
    if 0 in in_degrees(A) or not is_strongly_connected(A):
        return None
    k = A.k
    counts = preimage_counts(A)
    # variables: t, y_0..y_{k-1}
    rows = [[Fraction(k)] + [Fraction(1)] * k]
    for q in range(A.n):
        rows.append([Fraction(sum(counts[q]))] + [Fraction(c) for c in counts[q]])
    res = solve_lp([1] + [0] * k, rows, [1] * (A.n + 1))
    if res.status != "optimal" or res.x[0] <= 0:
        return None
    t = res.x[0]
    weights = [t + y for y in res.x[1:]]
    if not is_pseudo_eulerian_witness(A, weights):
        raise InconsistencyError(f"LP returned an invalid witness {weights}")
    return weights


def functional_cycles(f: Sequence[int]) -> list[StateSet]:
    """Cycles of the functional graph ``q -> f[q]``, each as a state set."""
    n = len(f)
    color = [0] * n  # 0 new, 1 on current path, 2 done
    cycles = []
    for start in range(n):
        path = []
        q = start
        while color[q] == 0:
            color[q] = 1
            path.append(q)
            q = f[q]
        if color[q] == 1:
            cycles.append(mask(path[path.index(q):]))
        for p in path:
            color[p] = 2
    return cycles


def one_cluster_detect(A: Automaton) -> list[tuple[int, StateSet]]:
    """Letters whose functional graph has a single cycle, with that cycle."""
    out = []
    for a in range(A.k):
        cyc = functional_cycles(A.letter_map(a))
        if len(cyc) == 1:
            out.append((a, cyc[0]))
    return out


@dataclass(frozen=True)
class UniformWSet:
    words: tuple[Word, ...]
    k: int
    R: StateSet

    @property
    def r(self) -> int:
        return popcount(self.R)

    @property
    def ell(self) -> int:
        return min(len(w) for w in self.words)

    @property
    def L(self) -> int:
        return max(len(w) for w in self.words)

    @property
    def w0(self) -> Word:
        """Lexicographically least among the shortest words."""
        return min(w for w in self.words if len(w) == self.ell)


def verify_uniform_W(A: Automaton, W: Sequence[Word], k: int = 0) -> UniformWSet | None:
    """Check that every state reaches every state of ``R = QW`` by exactly ``k``
    words of ``W``.  ``k == 0`` infers ``k = |W| / |R|``."""
    words = tuple(tuple(w) for w in W)
    if not words:
        raise ValueError("W must be non-empty")
    if len(set(words)) != len(words):
        return None
    R = 0
    for w in words:
        R |= apply(A, A.all_states, w)
    r = popcount(R)
    if k == 0:
        if len(words) % r:
            return None
        k = len(words) // r
    if len(words) != k * r:
        return None
    maps = [A.transformation(w) for w in words]
    targets = members(R)
    for q in range(A.n):
        hits = {s: 0 for s in targets}
        for t in maps:
            hits[t[q]] += 1
        if any(h != k for h in hits.values()):
            return None
    return UniformWSet(words, k, R)


def one_cluster_W(A: Automaton, a: int, R: StateSet) -> UniformWSet:
    n, r = A.n, popcount(R)
    W = [(a,) * m for m in range(n - r, n)]
    ws = verify_uniform_W(A, W, 1)
    if ws is None or ws.R != R:
        raise InconsistencyError(f"one-cluster word set for letter {A.alphabet[a]!r} failed validation")
    return ws
