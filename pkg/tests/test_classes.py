from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synchrokit.automaton import Automaton, apply, mask, members
from synchrokit.classes import (
    functional_cycles,
    in_degrees,
    is_eulerian,
    is_pseudo_eulerian_witness,
    one_cluster_detect,
    one_cluster_W,
    pseudo_eulerian_witness,
    verify_uniform_W,
)
from synchrokit.harness import gen_random

from .conftest import automata

linprog = pytest.importorskip("scipy.optimize").linprog

A_, B_, C_ = 0, 1, 2


def relabel(A, perm):
    """Copy of ``A`` with state ``q`` renamed ``perm[q]``."""
    delta = [None] * A.n
    for q in range(A.n):
        delta[perm[q]] = tuple(perm[t] for t in A.delta[q])
    return Automaton(A.n, A.alphabet, tuple(delta))


def test_eulerian_examples(ex4, c4):
    assert not is_eulerian(ex4)
    assert not is_eulerian(c4)
    assert in_degrees(c4)[1] == 3
    perm = Automaton.from_letter_maps("ab", [[1, 2, 0], [0, 2, 1]])
    assert is_eulerian(perm)


def test_pseudo_eulerian_examples(ex4, c4):
    w = pseudo_eulerian_witness(ex4)
    assert w is not None and is_pseudo_eulerian_witness(ex4, w)
    assert is_pseudo_eulerian_witness(ex4, [F(1, 2), F(1, 6), F(1, 3)])
    assert not is_pseudo_eulerian_witness(ex4, [F(1, 3)] * 3)
    assert pseudo_eulerian_witness(c4) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 8), st.integers(1, 3))
def test_eulerian_implies_uniform_witness(seed, n, k):
    A = gen_random("eulerian", n, k, seed)
    assert is_eulerian(A)
    assert is_pseudo_eulerian_witness(A, [F(1, k)] * k)
    assert pseudo_eulerian_witness(A) is not None


def float_has_positive_solution(A):
    # max t subject to the column equations with p_a >= t
    import numpy as np

    k, n = A.k, A.n
    counts = np.zeros((n, k))
    for p in range(n):
        for a, t in enumerate(A.delta[p]):
            counts[t, a] += 1
    A_eq = np.vstack([np.ones(k), counts])
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=np.ones(n + 1), bounds=[(1e-6, None)] * k, method="highs")
    return res.status == 0


@settings(max_examples=150, deadline=None)
@given(automata(min_n=2, max_n=6, min_k=2, max_k=3))
def test_pseudo_eulerian_agrees_with_float_lp(A):
    from synchrokit.automaton import is_strongly_connected

    w = pseudo_eulerian_witness(A)
    if w is not None:
        assert is_pseudo_eulerian_witness(A, w)
        assert is_strongly_connected(A)
    elif is_strongly_connected(A):
        assert not float_has_positive_solution(A)


def test_functional_cycles():
    assert functional_cycles([1, 2, 0]) == [0b111]
    assert sorted(functional_cycles([0, 1, 3, 3])) == [0b0001, 0b0010, 0b1000]
    assert functional_cycles([1, 0, 1, 1]) == [0b0011]


def test_one_cluster_examples(ex4, c4):
    got = dict(one_cluster_detect(ex4))
    assert got == {B_: mask([0, 1]), C_: mask([2])}
    got = dict(one_cluster_detect(c4))
    assert got[A_] == c4.all_states
    ident = Automaton(3, ("a", "b"), tuple((q, q) for q in range(3)))
    assert one_cluster_detect(ident) == []


def test_one_cluster_W_examples(ex4, c4):
    ws = one_cluster_W(c4, A_, c4.all_states)
    assert ws.words == ((), (0,), (0, 0), (0, 0, 0)) and ws.k == 1 and ws.R == c4.all_states
    ws = one_cluster_W(ex4, B_, mask([0, 1]))
    assert ws.words == ((1, 1), (1, 1, 1)) and ws.k == 1
    assert (ws.r, ws.ell, ws.L, ws.w0) == (2, 2, 3, (1, 1))
    ws = one_cluster_W(ex4, C_, mask([2]))
    assert ws.words == ((2, 2, 2),) and ws.R == mask([2])


def test_verify_uniform_W_examples(ex4, c4, identity2):
    assert verify_uniform_W(c4, [(), (0,), (0, 0), (0, 0, 0)], 1).R == c4.all_states
    assert verify_uniform_W(identity2, [()], 1) is None
    assert verify_uniform_W(ex4, [(1, 1), (1, 1, 1)], 1).R == mask([0, 1])
    assert verify_uniform_W(ex4, [(1, 1), (1, 1, 1)]).k == 1
    assert verify_uniform_W(ex4, [(1, 1), (1, 1)]) is None
    with pytest.raises(ValueError):
        verify_uniform_W(ex4, [])


def brute_uniform(A, W, k):
    R = set()
    for w in W:
        R |= set(members(apply(A, A.all_states, w)))
    for q in range(A.n):
        for s in R:
            hits = 0
            for w in W:
                p = q
                for a in w:
                    p = A.delta[p][a]
                hits += p == s
            if hits != k:
                return None
    return R


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_one_cluster_W_is_uniform(data):
    A = data.draw(automata(min_n=1, max_n=8))
    for a, R in one_cluster_detect(A):
        ws = one_cluster_W(A, a, R)
        assert len(ws.words) == ws.k * ws.r
        assert brute_uniform(A, ws.words, ws.k) == set(members(R))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_verify_uniform_W_matches_brute(data):
    A = data.draw(automata(min_n=1, max_n=5, max_k=2))
    W = data.draw(st.lists(st.lists(st.integers(0, A.k - 1), max_size=4).map(tuple),
                           min_size=1, max_size=6, unique=True))
    got = verify_uniform_W(A, W)
    R = set()
    for w in W:
        R |= set(members(apply(A, A.all_states, w)))
    k = len(W) // len(R) if len(W) % len(R) == 0 else None
    expect = brute_uniform(A, W, k) if k else None
    assert (got is not None) == (expect is not None)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_detection_stable_under_relabeling(data):
    A = data.draw(automata(min_n=2, max_n=6, min_k=2))
    perm = data.draw(st.permutations(range(A.n)))
    B = relabel(A, perm)
    assert is_eulerian(A) == is_eulerian(B)
    assert (pseudo_eulerian_witness(A) is None) == (pseudo_eulerian_witness(B) is None)
    ra = {a: sorted(perm[q] for q in members(R)) for a, R in one_cluster_detect(A)}
    rb = {a: members(R) for a, R in one_cluster_detect(B)}
    assert ra == rb


def test_two_letter_pseudo_eulerian_is_eulerian():
    from itertools import product

    for n in (2, 3):
        for flat in product(range(n), repeat=2 * n):
            A = Automaton(n, ("a", "b"), tuple(flat[2 * q:2 * q + 2] for q in range(n)))
            assert (pseudo_eulerian_witness(A) is not None) == is_eulerian(A)
