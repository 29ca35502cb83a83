"""Complete deterministic automata acting on the right of their state set.

States are the integers ``0..n-1``.  A word is a tuple of letter indices and
acts left to right, so ``q . uv == (q . u) . v``.  Sets of states are plain
``int`` bitmasks (bit ``q`` set iff ``q`` is a member).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]
StateSet = int

MAX_STATES = 64


class InvalidWordError(ValueError):
    pass


def mask(states: Iterable[int]) -> StateSet:
    m = 0
    for q in states:
        m |= 1 << q
    return m


def members(s: StateSet) -> list[int]:
    out = []
    q = 0
    while s:
        if s & 1:
            out.append(q)
        s >>= 1
        q += 1
    return out


def popcount(s: StateSet) -> int:
    return bin(s).count("1")


@dataclass(frozen=True)
class Automaton:
    """An ``n``-state complete DFA without initial or final states.

    ``delta[q][i]`` is the image of state ``q`` under letter ``alphabet[i]``.
    """

    n: int
    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        if self.n < 1:
            raise ValueError("automaton needs at least one state")
        if self.n > MAX_STATES:
            raise ValueError(f"n={self.n} exceeds MAX_STATES={MAX_STATES}")
        if not self.alphabet:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet letters must be distinct")
        if len(self.delta) != self.n:
            raise ValueError(f"delta has {len(self.delta)} rows, expected {self.n}")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"delta row {q} has {len(row)} entries, expected {k}")
            for t in row:
                if not 0 <= t < self.n:
                    raise ValueError(f"delta row {q} has out-of-range target {t}")

    @classmethod
    def from_letter_maps(cls, alphabet: Sequence[str], maps: Sequence[Sequence[int]]) -> "Automaton":
        """Build from one transformation per letter (``maps[i][q]`` = q under letter i)."""
        n = len(maps[0])
        return cls(n, tuple(alphabet), tuple(tuple(m[q] for m in maps) for q in range(n)))

    @property
    def k(self) -> int:
        return len(self.alphabet)

    @property
    def all_states(self) -> StateSet:
        return (1 << self.n) - 1

    def letter_map(self, a: int) -> tuple[int, ...]:
        return tuple(self.delta[q][a] for q in range(self.n))

    def word(self, text: str | Sequence[str]) -> Word:
        """Parse letter names into a word.  A plain string is split per character
        when every letter name is a single character."""
        index = {name: i for i, name in enumerate(self.alphabet)}
        if isinstance(text, str):
            if all(len(x) == 1 for x in self.alphabet):
                tokens = list(text)
            else:
                tokens = text.split()
        else:
            tokens = list(text)
        try:
            return tuple(index[t] for t in tokens)
        except KeyError as e:
            raise InvalidWordError(f"unknown letter {e.args[0]!r}") from None

    def render(self, w: Word) -> str:
        names = [self.alphabet[i] for i in w]
        if all(len(x) == 1 for x in self.alphabet):
            return "".join(names)
        return " ".join(names)

    def check_word(self, w: Word) -> None:
        for i in w:
            if not 0 <= i < self.k:
                raise InvalidWordError(f"letter index {i} out of range for alphabet of size {self.k}")

    def state(self, q: int, w: Word) -> int:
        self.check_word(w)
        for a in w:
            q = self.delta[q][a]
        return q

    def transformation(self, w: Word) -> tuple[int, ...]:
        """The map q -> q.w as a tuple."""
        self.check_word(w)
        t = list(range(self.n))
        for a in w:
            t = [self.delta[q][a] for q in t]
        return tuple(t)


def apply(A: Automaton, S: StateSet, w: Word) -> StateSet:
    """Image ``S.w``."""
    A.check_word(w)
    for a in w:
        img = 0
        for q in members(S):
            img |= 1 << A.delta[q][a]
        S = img
    return S


def preimage(A: Automaton, S: StateSet, w: Word) -> StateSet:
    """``S w^-1 = {q : q.w in S}``."""
    t = A.transformation(w)
    out = 0
    for q in range(A.n):
        if S >> t[q] & 1:
            out |= 1 << q
    return out


def reachable_from(A: Automaton, q: int) -> StateSet:
    seen = 1 << q
    todo = [q]
    while todo:
        p = todo.pop()
        for t in A.delta[p]:
            if not seen >> t & 1:
                seen |= 1 << t
                todo.append(t)
    return seen


def is_strongly_connected(A: Automaton) -> bool:
    full = A.all_states
    if reachable_from(A, 0) != full:
        return False
    # every state reaches 0 iff 0 reaches everything in the reversed graph
    rev = [[] for _ in range(A.n)]
    for p in range(A.n):
        for t in A.delta[p]:
            rev[t].append(p)
    seen = 1
    todo = [0]
    while todo:
        p = todo.pop()
        for s in rev[p]:
            if not seen >> s & 1:
                seen |= 1 << s
                todo.append(s)
    return seen == full


def is_synchronizing(A: Automaton) -> bool:
    """Pair-automaton test: every pair of states can be merged by some word.

    Runs a reverse BFS from the diagonal over unordered pairs, O(n^2 |Sigma|).
    """
    n = A.n
    if n == 1:
        return True
    rev: list[list[list[int]]] = [[[] for _ in range(n)] for _ in range(A.k)]
    for p in range(n):
        for a, t in enumerate(A.delta[p]):
            rev[a][t].append(p)
    merged = [[False] * n for _ in range(n)]
    queue = deque()
    for q in range(n):
        merged[q][q] = True
        queue.append((q, q))
    while queue:
        p, q = queue.popleft()
        for a in range(A.k):
            for x in rev[a][p]:
                for y in rev[a][q]:
                    if not merged[x][y]:
                        merged[x][y] = merged[y][x] = True
                        queue.append((x, y))
    return all(all(row) for row in merged)


def find_collapsing_letter(A: Automaton) -> tuple[int, int] | None:
    """First ``(q, a)`` with ``|q a^-1| >= 2``, scanning states then letters."""
    for q in range(A.n):
        for a in range(A.k):
            if sum(1 for p in range(A.n) if A.delta[p][a] == q) >= 2:
                return q, a
    return None

