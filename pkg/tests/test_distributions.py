from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synchrokit.distributions import (
    DistributionError,
    WordDistribution,
    all_words_up_to,
    cesaro_average,
    expectation_ZS,
    expectation_ZS_direct,
    letter_distribution,
    point_mass,
    preserves,
    product,
    uniform_on,
    uniform_up_to,
)
from synchrokit.linalg import distribution_matrix, identity

from .conftest import automata, words


def distributions(k, max_len=3, max_size=4):
    return st.lists(words(k, max_len), min_size=1, max_size=max_size, unique=True).flatmap(
        lambda ws: st.lists(st.integers(1, 5), min_size=len(ws), max_size=len(ws)).map(
            lambda cs: WordDistribution({w: F(c, sum(cs)) for w, c in zip(ws, cs)})))


def test_construction_rules():
    with pytest.raises(DistributionError):
        WordDistribution({(0,): F(1, 2)})
    with pytest.raises(DistributionError):
        WordDistribution({(0,): F(3, 2), (1,): F(-1, 2)})
    with pytest.raises(DistributionError):
        uniform_on([])
    with pytest.raises(DistributionError):
        uniform_on([(0,), (0,)])
    P = WordDistribution([((0,), F(1, 2)), ((0,), F(1, 2)), ((1,), 0)])
    assert P == point_mass((0,))
    assert (1,) not in P and P[(1,)] == 0


def test_product_example():
    P = letter_distribution([F(1, 2), F(1, 2)])
    PP = P * P
    assert PP == uniform_on([(0, 0), (0, 1), (1, 0), (1, 1)])
    # concatenations that coincide add up
    Q = uniform_on([(), (0,)])
    assert product(Q, Q) == WordDistribution({(): F(1, 4), (0,): F(1, 2), (0, 0): F(1, 4)})


def test_product_cap():
    P = uniform_up_to(2, 3)
    with pytest.raises(DistributionError):
        product(P, P, cap=100)


def test_cesaro_examples():
    P = letter_distribution([F(1, 2), F(1, 6), F(1, 3)])
    assert cesaro_average(P, 1) == point_mass(())
    C = cesaro_average(P, 3)
    assert C.support == frozenset(all_words_up_to(3, 2))
    assert C[()] == F(1, 3)
    assert C[(0,)] == F(1, 6)
    assert C[(1, 2)] == F(1, 3) * F(1, 6) * F(1, 3)
    with pytest.raises(DistributionError):
        cesaro_average(P, 0)


def test_uniform_up_to():
    U = uniform_up_to(2, 2)
    assert len(U) == 7 and set(U.values()) == {F(1, 7)}
    assert U.max_length == 2 and U.min_length == 0


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_product_laws(data):
    k = data.draw(st.integers(1, 3))
    P, Q, R = (data.draw(distributions(k)) for _ in range(3))
    PQ = product(P, Q)
    assert sum(PQ.values()) == 1
    assert PQ.support == {u + v for u in P for v in Q}
    assert product(PQ, R) == product(P, product(Q, R))
    assert product(point_mass(), P) == P == product(P, point_mass())


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_expectation_two_ways(data):
    A = data.draw(automata(max_n=6))
    P = data.draw(distributions(A.k))
    S = data.draw(st.integers(0, A.all_states))
    R = data.draw(st.integers(0, A.all_states))
    assert expectation_ZS(A, P, S, R) == expectation_ZS_direct(A, P, S, R)


def test_preserves_examples(ex4, c4):
    P = letter_distribution([F(1, 2), F(1, 6), F(1, 3)])
    assert preserves(ex4, P, ex4.all_states)
    assert not preserves(ex4, letter_distribution([F(1, 3)] * 3), ex4.all_states)
    assert preserves(c4, point_mass(), 0b0101)
    assert distribution_matrix(c4, point_mass()) == identity(4)
