from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synchrokit.automaton import Automaton, mask, preimage
from synchrokit.distributions import letter_distribution, product, uniform_on
from synchrokit.linalg import (
    ascending_chain,
    ascending_chain_witness,
    char_vector,
    distribution_matrix,
    dot,
    escape_depth,
    identity,
    is_doubly_stochastic,
    matadd,
    matmul,
    scale,
    subspace_span,
    vector,
    word_matrix,
    word_on_column,
)

from .conftest import automata, monoid_words, words

E = [tuple(F(int(i == j)) for j in range(4)) for i in range(4)]

EX4_MATRIX = (
    (F(1, 2), F(1, 6), F(1, 3), F(0)),
    (F(1, 6), F(1, 2), F(1, 3), F(0)),
    (F(0), F(1, 6), F(1, 3), F(1, 2)),
    (F(1, 3), F(1, 6), F(0), F(1, 2)),
)


def test_word_matrix_examples(ex4):
    assert word_matrix(ex4, ()) == identity(4)
    assert word_matrix(ex4, ex4.word("c")) == (E[2], E[2], E[2], E[0])
    assert word_matrix(ex4, ex4.word("cc")) == (E[2],) * 4


def test_distribution_matrix_four_state_example(ex4):
    P = letter_distribution([F(1, 2), F(1, 6), F(1, 3)])
    M = distribution_matrix(ex4, P)
    assert M == EX4_MATRIX
    assert is_doubly_stochastic(M)


def test_distribution_matrix_trivial(c4):
    assert distribution_matrix(c4, uniform_on([()])) == identity(4)
    M = distribution_matrix(c4, uniform_on([(0,), (1,)]))
    assert M == scale(F(1, 2), matadd(word_matrix(c4, (0,)), word_matrix(c4, (1,))))


def test_char_vector():
    assert char_vector(15, 4) == (1, 1, 1, 1)
    assert char_vector(0, 4) == (0, 0, 0, 0)
    assert char_vector(mask([0, 2]), 4) == (1, 0, 1, 0)
    with pytest.raises(ValueError):
        char_vector(1 << 5, 4)


def test_subspace_span_examples():
    assert subspace_span([], 3).dim == 0
    v = vector([1, 2, 0])
    assert subspace_span([v, tuple(2 * x for x in v)]).dim == 1
    assert subspace_span([v, vector([0, 1, 1])]).dim == 2
    with pytest.raises(ValueError):
        subspace_span([v, vector([1, 2])])


def test_subspace_echelon_invariants():
    sp = subspace_span([vector([0, 1, 1, 0]), vector([1, 1, 0, 0]), vector([1, 2, 1, 0]), vector([0, 0, 0, 5])])
    assert sp.dim == 3
    assert sp.pivots == sorted(sp.pivots)
    for b, p in zip(sp.basis, sp.pivots):
        assert b[p] == 1
        assert all(b2[p] == 0 for b2 in sp.basis if b2 is not b)
    assert sp.contains(vector([2, 3, 1, 7]))
    assert not sp.contains(vector([0, 0, 1, 0]))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_key_fact_column_action(data):
    A = data.draw(automata(max_n=10))
    S = data.draw(st.integers(0, A.all_states))
    w = data.draw(words(A.k))
    col = tuple(dot(row, char_vector(S, A.n)) for row in word_matrix(A, w))
    assert col == char_vector(preimage(A, S, w), A.n)
    assert word_on_column(A, w, char_vector(S, A.n)) == col


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_word_matrix_multiplicative(data):
    A = data.draw(automata())
    u, v = data.draw(words(A.k, 4)), data.draw(words(A.k, 4))
    assert word_matrix(A, u + v) == matmul(word_matrix(A, u), word_matrix(A, v))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_distribution_matrix_multiplicative(data):
    A = data.draw(automata(max_n=5))
    ws = st.lists(words(A.k, 3), min_size=1, max_size=4, unique=True)
    P, Q = uniform_on(data.draw(ws)), uniform_on(data.draw(ws))
    assert distribution_matrix(A, product(P, Q)) == matmul(distribution_matrix(A, P), distribution_matrix(A, Q))


def test_witness_trivial_cases(ex4):
    s = char_vector(mask([0]), 4)
    phi = char_vector(ex4.all_states, 4)
    assert ascending_chain_witness(ex4, [s], phi) == ((), 0)
    assert ascending_chain_witness(ex4, [s], (F(0),) * 4) is None
    with pytest.raises(ValueError):
        ascending_chain_witness(ex4, [s[:3]], phi)


def test_witness_permutation_stays_in_hyperplane():
    # permutations fix [Q] on the row side, so sum-zero seeds never leave [Q]-perp
    A = Automaton.from_letter_maps("ab", [[1, 2, 3, 0], [1, 0, 2, 3]])
    seeds = [vector([1, -1, 0, 0]), vector([0, 0, 2, -2])]
    assert ascending_chain_witness(A, seeds, vector([1, 1, 1, 1])) is None
    chain = ascending_chain(A, seeds)
    assert chain[-1].dim == chain[-2].dim
    assert escape_depth(chain, vector([1, 1, 1, 1])) is None


def test_witness_ex4_gamma_seed(ex4):
    # gamma for S = {3}, R = Q
    g = tuple(x - F(1, 4) for x in char_vector(mask([2]), 4))
    phi = char_vector(ex4.all_states, 4)
    got = ascending_chain_witness(ex4, [g], phi)
    assert got == ((0,), 0)  # "a": [Q] pi(a) gamma = |{3} a^-1| - 1 = -1
    assert len(got[0]) <= 4 - 1


def brute_witness(A, seeds, phi):
    reps = monoid_words(A)
    best = None
    for t, w in reps.items():
        for i, s in enumerate(seeds):
            if dot(phi, tuple(s[t[q]] for q in range(A.n))):
                key = (len(w), w, i)
                if best is None or key < best:
                    best = key
                break
    return None if best is None else (best[1], best[2])


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_witness_matches_exhaustive_monoid_search(data):
    A = data.draw(automata(min_n=2, max_n=6, max_k=2))
    coeffs = st.lists(st.integers(-2, 2), min_size=A.n, max_size=A.n).map(vector)
    seeds = data.draw(st.lists(coeffs.filter(any), min_size=1, max_size=3))
    phi = data.draw(coeffs)
    got = ascending_chain_witness(A, seeds, phi)
    assert got == brute_witness(A, seeds, phi)
    chain = ascending_chain(A, seeds)
    dims = [W.dim for W in chain]
    assert all(a < b for a, b in zip(dims[:-2], dims[1:-1]))
    depth = escape_depth(chain, phi)
    if got is None:
        assert depth is None
    else:
        assert len(got[0]) == depth
