"""Ground truth and workloads: exact shortest reset words, automaton families,
and the bound-tightness benchmark."""

from __future__ import annotations

import logging
import random
import time
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .automaton import Automaton, Word, is_strongly_connected, is_synchronizing
from .classes import is_eulerian, one_cluster_detect, pseudo_eulerian_witness
from .engine import EngineError, NotApplicableError, synchronize

log = logging.getLogger(__name__)

ORACLE_MAX_STATES = 20
FAMILIES = ("cerny", "ex4", "strongly-connected", "eulerian", "one-cluster", "pseudo-eulerian")


class CapExceededError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


def _image_tables(A: Automaton) -> list[list[list[int]]]:
    """``tables[a][j][b]`` = image under letter ``a`` of the states whose bits
    are ``b`` in byte ``j`` of a state mask."""
    tables = []
    for a in range(A.k):
        per = []
        for j in range(0, A.n, 8):
            row = [0] * 256
            for b in range(1, 256):
                low = b & -b
                q = j + low.bit_length() - 1
                row[b] = row[b ^ low] | (1 << A.delta[q][a] if q < A.n else 0)
            per.append(row)
        tables.append(per)
    return tables


def oracle_shortest_sync(A: Automaton, max_n: int = ORACLE_MAX_STATES) -> Word | None:
    """Shortlex-least shortest reset word, by BFS over subsets from ``Q``."""
    if A.n > max_n:
        raise CapExceededError(f"n={A.n} exceeds oracle cap {max_n}")
    full = A.all_states
    if A.n == 1:
        return ()
    tables = _image_tables(A)
    nbytes = len(tables[0])
    parent: dict[int, tuple[int, int]] = {full: (-1, -1)}
    queue = deque([full])
    while queue:
        S = queue.popleft()
        for a in range(A.k):
            tab = tables[a]
            T = 0
            x = S
            for j in range(nbytes):
                T |= tab[j][x & 0xFF]
                x >>= 8
            if T in parent:
                continue
            parent[T] = (S, a)
            if T & (T - 1) == 0:
                word = []
                while T != full:
                    T, a = parent[T]
                    word.append(a)
                return tuple(reversed(word))
            queue.append(T)
    return None


def cerny_automaton(n: int) -> Automaton:
    """``a`` cycles the states, ``b`` sends 0 to 1 and fixes the rest."""
    if n < 2:
        raise ValueError("Cerny automaton needs n >= 2")
    a = [(q + 1) % n for q in range(n)]
    b = [1] + list(range(1, n))
    return Automaton.from_letter_maps("ab", [a, b])


def four_state_example() -> Automaton:
    """The four-state pseudo-Eulerian example, states ``1..4`` stored as ``0..3``."""
    return Automaton.from_letter_maps("abc", [[0, 1, 3, 3], [1, 0, 1, 1], [2, 2, 2, 0]])


def _random_delta(rng: random.Random, n: int, k: int) -> list[list[int]]:
    return [[rng.randrange(n) for _ in range(k)] for _ in range(n)]


def _eulerian_delta(rng: random.Random, n: int, k: int) -> list[list[int]]:
    # every state appears k times as a target; slots (q, a) take the shuffled list
    heads = [q for q in range(n) for _ in range(k)]
    rng.shuffle(heads)
    return [heads[q * k:(q + 1) * k] for q in range(n)]


def _one_cluster_delta(rng: random.Random, n: int, k: int) -> list[list[int]]:
    order = list(range(n))
    rng.shuffle(order)
    r = rng.randint(1, n)
    f = [0] * n
    cycle = order[:r]
    for i, q in enumerate(cycle):
        f[q] = cycle[(i + 1) % r]
    for i in range(r, n):
        # attach to an earlier state so the only cycle stays the one above
        f[order[i]] = order[rng.randrange(i)]
    delta = _random_delta(rng, n, k)
    for q in range(n):
        delta[q][0] = f[q]
    return delta


def _pseudo_eulerian_delta(rng: random.Random, n: int, k: int) -> list[list[int]]:
    """Letter weights ``d_a / D`` and per-letter in-degree profiles ``m_a`` with
    ``sum_a d_a m_a(q) == D`` at every state, realized as random maps.

    Starts from the all-ones profile and applies moves ``m_a(q) += x_a``,
    ``m_a(r) -= x_a`` with ``sum_a d_a x_a == 0``, which keep both the
    per-letter totals and the weighted in-degree at every state.
    """
    d = [rng.randint(1, 3) for _ in range(k)]
    # with two letters only equal weights leave room to move (the class is
    # then exactly the Eulerian one), so unequal weights are forced for k >= 3
    while k > 2 and len(set(d)) == 1:
        d = [rng.randint(1, 3) for _ in range(k)]
    moves = [x for x in product(range(-2, 3), repeat=k)
             if any(x) and sum(di * xi for di, xi in zip(d, x)) == 0] if k <= 5 else []
    m = [[1] * n for _ in range(k)]
    for _ in range(20 * n if moves and n > 1 else 0):
        x = rng.choice(moves)
        q, r = rng.sample(range(n), 2)
        if all(m[a][q] + x[a] >= 0 and m[a][r] - x[a] >= 0 for a in range(k)):
            for a in range(k):
                m[a][q] += x[a]
                m[a][r] -= x[a]
    delta = [[0] * k for _ in range(n)]
    for a in range(k):
        heads = [q for q in range(n) for _ in range(m[a][q])]
        rng.shuffle(heads)
        for p, q in enumerate(heads):
            delta[p][a] = q
    return delta


def in_family(A: Automaton, family: str) -> bool:
    if family == "strongly-connected":
        return is_strongly_connected(A)
    if family == "eulerian":
        return is_eulerian(A)
    if family == "one-cluster":
        return bool(one_cluster_detect(A))
    if family == "pseudo-eulerian":
        return pseudo_eulerian_witness(A) is not None
    raise ValueError(f"unknown random family {family!r}")


def gen_random(family: str, n: int, k: int, seed: int, synchronizing: bool = False,
               max_tries: int = 10000) -> Automaton:
    """Rejection-sample an ``n``-state automaton over ``k`` letters that the
    family's detector accepts.  Deterministic in ``seed``."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    rng = random.Random(f"{family}:{n}:{k}:{seed}")
    alphabet = [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"x{i}" for i in range(k)]
    for _ in range(max_tries):
        if family == "eulerian":
            delta = _eulerian_delta(rng, n, k)
        elif family == "one-cluster":
            delta = _one_cluster_delta(rng, n, k)
        elif family == "pseudo-eulerian":
            delta = _pseudo_eulerian_delta(rng, n, k)
        elif family == "strongly-connected":
            delta = _random_delta(rng, n, k)
        else:
            raise ValueError(f"unknown random family {family!r}")
        A = Automaton(n, tuple(alphabet), tuple(map(tuple, delta)))
        if not in_family(A, family):
            continue
        if synchronizing and not is_synchronizing(A):
            continue
        return A
    raise GenerationError(f"no {family} automaton with n={n}, k={k} after {max_tries} tries")


def make_family(family: str, n: int, k: int = 2, seed: int = 0, synchronizing: bool = False) -> Automaton:
    if family == "cerny":
        return cerny_automaton(n)
    if family == "ex4":
        return four_state_example()
    return gen_random(family, n, k, seed, synchronizing)


@dataclass
class BenchRecord:
    family: str
    n: int
    method: str
    word_length: int | None
    bound: int | None
    oracle_length: int | None
    seconds: float
    status: str = "ok"

    CSV_COLUMNS = ("family", "n", "method", "word_length", "bound", "oracle_length", "seconds")

    def csv_row(self) -> list[str]:
        opt = lambda v: "" if v is None else str(v)  # noqa: E731
        return [self.family, str(self.n), self.method, opt(self.word_length), opt(self.bound),
                opt(self.oracle_length), f"{self.seconds:.6f}"]


def bench_automata(items: Iterable[tuple[str, Automaton]], methods: Sequence[str],
                   with_oracle: bool = False, oracle_max_n: int = ORACLE_MAX_STATES) -> list[BenchRecord]:
    records = []
    for family, A in items:
        oracle_len = None
        if with_oracle:
            try:
                w = oracle_shortest_sync(A, oracle_max_n)
                oracle_len = None if w is None else len(w)
            except CapExceededError as e:
                log.warning("%s n=%d: %s", family, A.n, e)
        for m in methods:
            t0 = time.perf_counter()
            try:
                cert = synchronize(A, m)
            except NotApplicableError as e:
                records.append(BenchRecord(family, A.n, m, None, None, oracle_len,
                                           time.perf_counter() - t0, f"skipped: {e}"))
                continue
            except EngineError as e:
                records.append(BenchRecord(family, A.n, m, None, None, oracle_len,
                                           time.perf_counter() - t0, f"error: {e}"))
                continue
            records.append(BenchRecord(family, A.n, m, cert.length, cert.bound, oracle_len,
                                       time.perf_counter() - t0))
    return records


def bench_run(families: Sequence[str], n_values: Iterable[int], methods: Sequence[str],
              with_oracle: bool = False, k: int = 2, seed: int = 0, samples: int = 1,
              oracle_max_n: int = ORACLE_MAX_STATES) -> list[BenchRecord]:
    """One record per (automaton, method); random families draw ``samples``
    synchronizing automata per ``n``."""
    n_values = list(n_values)

    def items():
        for fam in families:
            if fam == "ex4":
                if n_values:
                    yield fam, four_state_example()
                continue
            for n in n_values:
                reps = 1 if fam == "cerny" else samples
                for i in range(reps):
                    yield fam, make_family(fam, n, k, seed + i, synchronizing=True)

    return bench_automata(items(), methods, with_oracle, oracle_max_n)


@dataclass
class BenchConfig:
    """Parameters of a benchmark sweep; ``run`` expands to :func:`bench_run`."""

    families: tuple[str, ...] = ("cerny",)
    n_min: int = 4
    n_max: int = 8
    methods: tuple[str, ...] = ("one-cluster",)
    with_oracle: bool = True
    k: int = 2
    seed: int = 0
    samples: int = 1
    oracle_max_n: int = ORACLE_MAX_STATES

    def run(self) -> list[BenchRecord]:
        return bench_run(self.families, range(self.n_min, self.n_max + 1), self.methods,
                         self.with_oracle, self.k, self.seed, self.samples, self.oracle_max_n)
