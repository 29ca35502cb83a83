from collections import deque
from itertools import product

import pytest
from hypothesis import strategies as st

from synchrokit.automaton import Automaton
from synchrokit.harness import cerny_automaton, four_state_example

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def ex4():
    return four_state_example()


@pytest.fixture
def c4():
    return cerny_automaton(4)


@pytest.fixture
def identity2():
    return Automaton(2, ("a",), ((0,), (1,)))


@st.composite
def automata(draw, min_n=1, max_n=6, min_k=1, max_k=3):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(min_k, max_k))
    delta = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return Automaton(n, tuple("abcdefgh"[:k]), tuple(map(tuple, delta)))


def words(k, max_len=6):
    return st.lists(st.integers(0, k - 1), max_size=max_len).map(tuple)


def state_sets(n):
    return st.integers(0, (1 << n) - 1)


# -- independent oracles -------------------------------------------------------

def brute_state(A, q, w):
    for a in w:
        q = A.delta[q][a]
    return q


def brute_preimage(A, S, w):
    return {q for q in range(A.n) if brute_state(A, q, w) in S}


def brute_shortest_sync(A, max_len):
    """Shortlex-first reset word by plain enumeration of all words."""
    for m in range(max_len + 1):
        for w in product(range(A.k), repeat=m):
            if len({brute_state(A, q, w) for q in range(A.n)}) == 1:
                return w
    return None


def monoid_words(A, cap=200_000):
    """Shortlex-least word for every element of the transition monoid."""
    start = tuple(range(A.n))
    rep = {start: ()}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for a in range(A.k):
            u = tuple(A.delta[p][a] for p in t)
            if u not in rep:
                rep[u] = rep[t] + (a,)
                queue.append(u)
                if len(rep) > cap:
                    return None
    return rep
