"""Exact rational linear algebra for the transition representation.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.  The
representation sends a word ``w`` to the 0/1 matrix with entry ``(q, r)`` equal
to 1 iff ``q.w == r``.  Row vectors are acted on from the right
(``psi . pi(w)``), column vectors from the left (``pi(w) . s``).
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .automaton import Automaton, StateSet, Word

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum((x * y for x, y in zip(u, v)), ZERO)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((ZERO,) * n for _ in range(n))


def matmul(X: Matrix, Y: Matrix) -> Matrix:
    cols = list(zip(*Y))
    return tuple(tuple(dot(row, col) for col in cols) for row in X)


def matadd(X: Matrix, Y: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(rx, ry)) for rx, ry in zip(X, Y))


def scale(c: Fraction, X: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in X)


def row_times(psi: Vector, X: Matrix) -> Vector:
    return tuple(dot(psi, col) for col in zip(*X))


def times_col(X: Matrix, s: Vector) -> Vector:
    return tuple(dot(row, s) for row in X)


def row_sums(X: Matrix) -> list[Fraction]:
    return [sum(row, ZERO) for row in X]


def col_sums(X: Matrix) -> list[Fraction]:
    return [sum(col, ZERO) for col in zip(*X)]


def is_doubly_stochastic(X: Matrix) -> bool:
    return (all(x >= 0 for row in X for x in row)
            and all(s == 1 for s in row_sums(X))
            and all(s == 1 for s in col_sums(X)))


def word_matrix(A: Automaton, w: Word) -> Matrix:
    t = A.transformation(w)
    return tuple(tuple(ONE if t[q] == r else ZERO for r in range(A.n)) for q in range(A.n))


def distribution_matrix(A: Automaton, P: Mapping[Word, Fraction]) -> Matrix:
    """``sum_w P(w) pi(w)`` for a finitely supported weighting of words."""
    acc = [[ZERO] * A.n for _ in range(A.n)]
    for w, p in P.items():
        t = A.transformation(w)
        for q in range(A.n):
            acc[q][t[q]] += p
    return tuple(tuple(row) for row in acc)


def char_vector(S: StateSet, n: int) -> Vector:
    if S >> n:
        raise ValueError(f"state set {S:#b} does not fit in {n} states")
    return tuple(ONE if S >> q & 1 else ZERO for q in range(n))


def letter_on_column(A: Automaton, a: int, s: Vector) -> Vector:
    """``pi(a) . s`` without building the matrix."""
    return tuple(s[A.delta[q][a]] for q in range(A.n))


def word_on_column(A: Automaton, w: Word, s: Vector) -> Vector:
    t = A.transformation(w)
    return tuple(s[t[q]] for q in range(A.n))


def letter_on_row(A: Automaton, a: int, psi: Vector) -> Vector:
    """``psi . pi(a)``."""
    out = [ZERO] * A.n
    for q in range(A.n):
        out[A.delta[q][a]] += psi[q]
    return tuple(out)


class Subspace:
    """Span of rational vectors, kept as a reduced row-echelon basis."""

    def __init__(self, dim: int):
        self.ambient = dim
        self.basis: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.ambient:
            raise ValueError(f"dimension mismatch: {len(v)} vs {self.ambient}")
        r = [Fraction(x) for x in v]
        for b, p in zip(self.basis, self.pivots):
            if r[p]:
                f = r[p]
                r = [x - f * y for x, y in zip(r, b)]
        return r

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self._reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Extend the span by ``v``; returns True iff the dimension grew."""
        r = self._reduce(v)
        p = next((i for i, x in enumerate(r) if x), None)
        if p is None:
            return False
        f = r[p]
        r = [x / f for x in r]
        # keep the basis fully reduced so membership stays a single pass
        for i, b in enumerate(self.basis):
            if b[p]:
                g = b[p]
                self.basis[i] = [x - g * y for x, y in zip(b, r)]
        k = 0
        while k < len(self.pivots) and self.pivots[k] < p:
            k += 1
        self.basis.insert(k, r)
        self.pivots.insert(k, p)
        return True

    def vectors(self) -> list[Vector]:
        return [tuple(b) for b in self.basis]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def subspace_span(vectors: Iterable[Sequence[Fraction]], dim: int | None = None) -> Subspace:
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            raise ValueError("ambient dimension needed for an empty span")
        dim = len(vectors[0])
    sp = Subspace(dim)
    for v in vectors:
        sp.add(v)
    return sp


def ascending_chain(A: Automaton, seeds: Sequence[Vector], max_depth: int | None = None) -> list[Subspace]:
    """The chain ``W_m = Sigma^{<=m} W`` for ``W = span(seeds)`` (column action),
    built level by level until it stabilizes or ``max_depth`` is reached.

    The returned list ends with the first repeated space when the chain
    stabilized, so ``chain[-1].dim == chain[-2].dim`` signals stabilization.
    """
    W = subspace_span(seeds, A.n)
    chain = [W]
    frontier = [v for v in W.vectors()]
    m = 0
    while max_depth is None or m < max_depth:
        cur = subspace_span(W.vectors(), A.n)
        fresh = []
        for v in frontier:
            for a in range(A.k):
                u = letter_on_column(A, a, v)
                if cur.add(u):
                    fresh.append(u)
        chain.append(cur)
        m += 1
        if not fresh:
            break
        W, frontier = cur, fresh
    return chain


def escape_depth(chain: Sequence[Subspace], functional: Vector) -> int | None:
    """First ``m`` with ``W_m`` not inside ``ker(functional)``, if any."""
    for m, W in enumerate(chain):
        if any(dot(functional, b) for b in W.basis):
            return m
    return None


def ascending_chain_witness(
    A: Automaton,
    seeds: Sequence[Vector],
    functional: Vector,
    depth_cap: int | None = None,
) -> tuple[Word, int] | None:
    """Shortest ``(u, i)`` with ``functional . pi(u) . seeds[i] != 0``.

    ``V`` is the hyperplane ``ker(functional)``.  Words are tried in shortlex
    order, seeds in list order.  Returns None when no witness of length at most
    ``depth_cap`` exists; with no cap, None means ``Sigma^* W`` lies inside ``V``.

    The search runs on the dual side: row functionals ``functional . pi(u)``
    that are already in the span of earlier ones cannot produce an earlier
    witness and are pruned, so the search terminates once that span stabilizes.
    """
    if any(len(s) != A.n for s in seeds) or len(functional) != A.n:
        raise ValueError("seed/functional dimension does not match automaton")
    seen = Subspace(A.n)
    queue: deque[tuple[Word, Vector]] = deque([((), tuple(functional))])
    while queue:
        u, psi = queue.popleft()
        if not seen.add(psi):
            continue
        for i, s in enumerate(seeds):
            if dot(psi, s):
                return u, i
        if depth_cap is not None and len(u) >= depth_cap:
            continue
        for a in range(A.k):
            queue.append((u + (a,), letter_on_row(A, a, psi)))
    return None


def witness_length_bound(dim_V: int, dim_W: int) -> int:
    """Length guaranteed by the ascending chain argument: ``dim V - dim W + 1``."""
    return dim_V - dim_W + 1

