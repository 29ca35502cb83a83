"""Synchronizing-word construction by repeated averaging expansions.

An instance fixes a target set ``R``, a word set ``X`` (the support of a
distribution ``P1``), a word ``w0`` with ``Q.w0`` inside ``R`` and a constant
``c`` in {1, 2}.  Starting from a small set ``S`` the engine repeatedly finds a
word ``w = u.x`` (``u`` short, ``x`` in ``X``) with ``|S w^-1 & R| > |S|`` and
replaces ``S`` by that preimage, until ``S`` covers ``R``.  Concatenating the
expansion words in reverse order gives a word collapsing ``R`` to a point.

The search is a plain bounded BFS.  :func:`certify_step` re-derives the length
cap of a step from the linear algebra (the vector ``gamma`` and the ascending
chain of subspaces) as an independent check.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .automaton import (
    Automaton,
    StateSet,
    Word,
    apply,
    find_collapsing_letter,
    is_synchronizing,
    members,
    popcount,
    preimage,
    reachable_from,
)
from .classes import UniformWSet, one_cluster_detect, one_cluster_W, pseudo_eulerian_witness
from .distributions import (
    SUPPORT_CAP,
    DistributionError,
    WordDistribution,
    all_words_up_to,
    cesaro_average,
    letter_distribution,
    point_mass,
    preserves,
    product,
    uniform_on,
    uniform_up_to,
)
from .linalg import (
    Vector,
    ascending_chain,
    ascending_chain_witness,
    char_vector,
    dot,
    subspace_span,
    word_on_column,
)

log = logging.getLogger(__name__)

C_BRUTEFORCE_CAP = 20


class EngineError(Exception):
    pass


class NotApplicableError(EngineError):
    pass


class NotSynchronizingError(EngineError):
    pass


class HypothesisViolation(EngineError):
    pass


def shortlex_key(w: Word) -> tuple[int, Word]:
    return len(w), w


@dataclass(frozen=True)
class AveragingInstance:
    A: Automaton
    P1: WordDistribution
    R: StateSet
    w0: Word = ()
    c: int = 1
    method: str = "custom"

    def __post_init__(self):
        if self.c not in (1, 2):
            raise ValueError("c must be 1 or 2")
        if not self.R or self.R >> self.A.n:
            raise ValueError("R must be a non-empty subset of the states")

    @property
    def X(self) -> list[Word]:
        """Support of ``P1`` in shortlex order (the fixed enumeration used by the search)."""
        return sorted(self.P1.support, key=shortlex_key)

    @property
    def L(self) -> int:
        return self.P1.max_length

    @property
    def ell(self) -> int:
        return len(self.w0)

    @property
    def r(self) -> int:
        return popcount(self.R)

    @property
    def full(self) -> bool:
        return self.R == self.A.all_states

    def bound(self, odd_r_improvement: bool = False) -> int:
        return theorem_bound(self.A.n, self.r, self.c, self.L, self.ell, self.full, odd_r_improvement)


@dataclass(frozen=True)
class ExpansionStep:
    before: StateSet
    word: Word
    after: StateSet
    cap: int  # bound on |u|; the full word is at most cap + L long


@dataclass
class SyncCertificate:
    word: Word
    steps: list[ExpansionStep]
    initial: tuple[int, int] | None  # collapsing (state, letter) when R == Q, else None (w0 path)
    bound: int
    method: str
    instance: AveragingInstance

    def __len__(self):
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def is_valid(self) -> bool:
        A = self.instance.A
        return popcount(apply(A, A.all_states, self.word)) == 1 and len(self.word) <= self.bound


def theorem_bound(n: int, r: int, c: int, L: int, ell: int, full: bool, odd_r_improvement: bool = False) -> int:
    """Length bound for an averaging instance.

    ``c + (n-2)(n-c+L)`` when ``R == Q`` and ``(r-1)(n-c+L) + ell + c - 1``
    otherwise; with ``odd_r_improvement`` and ``r`` odd the ``c - 1`` slack for
    the half-size step is dropped.
    """
    if c not in (1, 2):
        raise ValueError("c must be 1 or 2")
    if full != (r == n) or not 1 <= r <= n:
        raise ValueError(f"inconsistent parameters: n={n}, r={r}, full={full}")
    slack = 0 if (odd_r_improvement and r % 2) else c - 1
    if full:
        return 1 + slack + (n - 2) * (n - c + L)
    return (r - 1) * (n - c + L) + ell + slack


@dataclass
class HypothesisReport:
    preservation: bool
    preservation_via: str  # "P2" or "P1"
    support_ok: bool | None
    reachability: bool
    w0_into_R: bool
    c: int
    c_bruteforce: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.preservation and self.support_ok is not False and self.reachability
                and self.w0_into_R and (self.c_bruteforce is None or self.c_bruteforce >= self.c))


def verify_hypotheses(inst: AveragingInstance, P2: WordDistribution | None = None,
                      c_check_cap: int = 14) -> HypothesisReport:
    """Check the three hypotheses of the averaging construction.

    With ``P2`` given, its support must be exactly the words of length at most
    ``n - c`` and ``[R] pi(P2 P1) == [R]`` is tested.  Without it the
    sufficient condition ``[R] pi(P1) == [R]`` is tested instead, which is
    enough for the word-set instances: there the columns of ``pi(P1)`` are
    constant, so ``pi(P2 P1) == pi(P1)`` for every row-stochastic ``pi(P2)``.
    """
    A, R = inst.A, inst.R
    notes = []
    if P2 is not None:
        expected = all_words_up_to(A.k, A.n - inst.c) if A.n - inst.c >= 0 else set()
        support_ok = set(P2.support) == expected
        if not support_ok:
            notes.append("support of P2 is not all words of length <= n - c")
        preservation = preserves(A, product(P2, inst.P1), R)
        via = "P2"
    else:
        support_ok = None
        preservation = preserves(A, inst.P1, R)
        via = "P1"
    if not preservation:
        notes.append("[R] is not preserved")
    reach = all((reachable_from(A, q) & R) == R for q in members(R))
    if not reach:
        notes.append("some state of R does not reach all of R")
    into = (apply(A, A.all_states, inst.w0) & ~R) == 0
    if not into:
        notes.append("Q.w0 is not inside R")
    cb = compute_c_bruteforce(A, inst.X, R) if inst.r <= c_check_cap else None
    if cb is not None and cb < inst.c:
        notes.append(f"c={inst.c} but the preimage condition only gives c={cb}")
    return HypothesisReport(preservation, via, support_ok, reach, into, inst.c, cb, notes)


def compute_c_bruteforce(A: Automaton, X: Sequence[Word], R: StateSet, cap: int = C_BRUTEFORCE_CAP) -> int:
    """2 iff every proper non-empty ``S`` inside ``R`` has two words of ``X``
    with different preimages; enumerates all such ``S``."""
    r = popcount(R)
    if r > cap:
        raise ValueError(f"|R|={r} exceeds brute-force cap {cap}")
    maps = {A.transformation(w) for w in X}
    if len(maps) < 2:
        return 2 if r == 1 else 1
    maps = list(maps)
    elems = members(R)
    for size in range(1, r):
        for sub in combinations(elems, size):
            S = 0
            for q in sub:
                S |= 1 << q
            first = None
            for t in maps:
                pre = sum(1 << q for q in range(A.n) if S >> t[q] & 1)
                if first is None:
                    first = pre
                elif pre != first:
                    break
            else:
                return 1
    return 2


def zscore(A: Automaton, S: StateSet, R: StateSet, w: Word) -> int:
    """``|S w^-1 & R|``."""
    return popcount(preimage(A, S, w) & R)


def step_cap(n: int, c: int, s: int, r: int) -> int:
    """Bound on the prefix length for expanding a set of size ``s``."""
    if c == 2 and 2 * s == r:
        return n - 1
    return n - c


def expand_once(A: Automaton, S: StateSet, R: StateSet, X: Sequence[Word], c: int) -> ExpansionStep:
    """Shortest ``u.x`` (prefixes in shortlex order, then ``X`` in order) with
    ``|S (ux)^-1 & R| > |S|``.

    Prefixes with a transformation already seen are skipped; any extension of
    them is matched by an earlier prefix with the same effect.
    """
    s, r = popcount(S), popcount(R)
    if not S or (S & ~R) or S == R:
        raise ValueError("expansion needs a non-empty proper subset of R")
    cap = step_cap(A.n, c, s, r)
    targets = [preimage(A, S, x) for x in X]
    rmembers = members(R)
    start = tuple(range(A.n))
    seen = {start}
    queue = deque([((), start)])
    while queue:
        u, t = queue.popleft()
        for x, T in zip(X, targets):
            z = sum(1 for q in rmembers if T >> t[q] & 1)
            if z > s:
                w = u + tuple(x)
                return ExpansionStep(S, w, preimage(A, S, w) & R, cap)
        if len(u) < cap:
            for a in range(A.k):
                nt = tuple(A.delta[p][a] for p in t)
                if nt not in seen:
                    seen.add(nt)
                    queue.append((u + (a,), nt))
    raise HypothesisViolation(
        f"no expanding word of prefix length <= {cap} for S={members(S)}, R={members(R)}")


def synchronize_core(inst: AveragingInstance, odd_r_improvement: bool = False) -> SyncCertificate:
    A, R = inst.A, inst.R
    if not is_synchronizing(A):
        raise NotSynchronizingError("automaton has no synchronizing word")
    X = inst.X
    bound = inst.bound(odd_r_improvement)
    steps: list[ExpansionStep] = []
    initial = None
    if inst.full:
        if A.n == 1:
            return SyncCertificate((), [], None, bound, inst.method, inst)
        pick = find_collapsing_letter(A)
        if pick is None:
            raise NotSynchronizingError("every letter permutes the states")
        q, a = pick
        S = preimage(A, 1 << q, (a,))
        initial = (q, a)
        tail: Word = (a,)
        head: Word = ()
    else:
        S = R & -R  # lowest member of R
        tail = ()
        head = inst.w0
    while S != R:
        step = expand_once(A, S, R, X, inst.c)
        log.debug("expand %s -> %s by %s", members(step.before), members(step.after), step.word)
        steps.append(step)
        S = step.after
    word = head + tuple(x for st in reversed(steps) for x in st.word) + tail
    cert = SyncCertificate(word, steps, initial, bound, inst.method, inst)
    if popcount(apply(A, A.all_states, word)) != 1:
        raise EngineError(f"assembled word {word} does not synchronize")
    if len(word) > bound:
        raise EngineError(f"assembled word of length {len(word)} exceeds bound {bound}")
    return cert


# -- verification of a single step through the linear algebra ---------------

def gamma(S: StateSet, R: StateSet, n: int) -> Vector:
    """``[S]^T - (|S|/r) [Q]^T``."""
    f = Fraction(popcount(S), popcount(R))
    return tuple(v - f for v in char_vector(S, n))


@dataclass
class StepCertificate:
    direct: Word | None  # some x in X already moves Z_S off |S|
    prefix: Word | None
    seed_word: Word | None
    dim_W: int
    cap: int

    @property
    def word(self) -> Word:
        if self.direct is not None:
            return self.direct
        return self.prefix + self.seed_word


def certify_step(A: Automaton, S: StateSet, R: StateSet, X: Sequence[Word], c: int) -> StepCertificate:
    """Find ``v`` in ``Sigma^{<=cap} X`` with ``Z_S(v) != |S|`` through the
    gamma-vector argument, checking each claim on the way.

    Once such a ``v`` exists, averaging over ``P2 P1`` forces some supported
    word above ``|S|``, which is what makes the BFS cap in
    :func:`expand_once` sound.
    """
    s, r, n = popcount(S), popcount(R), A.n
    cap = step_cap(n, c, s, r)
    for x in X:
        if zscore(A, S, R, x) != s:
            return StepCertificate(tuple(x), None, None, 0, cap)
    g = gamma(S, R, n)
    rvec = char_vector(R, n)
    seeds = [word_on_column(A, x, g) for x in X]
    for v in seeds:
        if not any(v):
            raise HypothesisViolation("x.gamma vanished")
        if dot(rvec, v) != 0:
            raise HypothesisViolation("x.gamma left [R]-perp although Z_S(x) == |S|")
    dim_W = subspace_span(seeds, n).dim
    need = 1 if (c == 2 and 2 * s == r) else c
    if dim_W < need:
        raise HypothesisViolation(f"dim W = {dim_W} < {need}")
    hit = ascending_chain_witness(A, seeds, rvec)
    if hit is None:
        raise HypothesisViolation("Sigma^* W stays inside [R]-perp; the automaton cannot synchronize into R")
    u, i = hit
    if len(u) > (n - 1) - dim_W + 1 or len(u) > cap:
        raise HypothesisViolation(f"chain witness of length {len(u)} exceeds its guarantee")
    v = u + tuple(X[i])
    if zscore(A, S, R, v) == s:
        raise HypothesisViolation("chain witness does not move Z_S")
    return StepCertificate(None, u, tuple(X[i]), dim_W, cap)


def chain_dims(A: Automaton, S: StateSet, R: StateSet, X: Sequence[Word]) -> list[int]:
    """Dimensions of ``W_0, W_1, ...`` for ``W = span{x.gamma}``."""
    g = gamma(S, R, A.n)
    return [W.dim for W in ascending_chain(A, [word_on_column(A, x, g) for x in X])]


# -- wrappers -----------------------------------------------------------------

@dataclass
class Verification:
    report: HypothesisReport
    step_certificates: list[StepCertificate]
    P2_materialized: bool


def _verify(cert: SyncCertificate, P2_factory, cap: int) -> Verification:
    inst = cert.instance
    P2 = None
    try:
        P2 = P2_factory(cap)
    except DistributionError as e:
        log.info("P2 not materialized: %s", e)
    if P2 is not None and len(P2) * len(inst.P1) > cap:
        P2 = None
    report = verify_hypotheses(inst, P2)
    certs = [certify_step(inst.A, st.before, inst.R, inst.X, inst.c) for st in cert.steps]
    return Verification(report, certs, P2 is not None)


def pseudo_eulerian_instance(A: Automaton) -> tuple[AveragingInstance, list[Fraction]]:
    weights = pseudo_eulerian_witness(A)
    if weights is None:
        raise NotApplicableError("automaton is not pseudo-Eulerian")
    inst = AveragingInstance(A, point_mass(()), A.all_states, (), 1, "pseudo-eulerian")
    return inst, weights


def sync_pseudo_eulerian(A: Automaton, verify: bool = False, odd_r_improvement: bool = False,
                         support_cap: int = SUPPORT_CAP):
    """Certificate within ``1 + (n-2)(n-1)``; with ``verify`` also returns a
    :class:`Verification` (P2 is the Cesaro average of the witness)."""
    inst, weights = pseudo_eulerian_instance(A)
    cert = synchronize_core(inst, odd_r_improvement)
    if not verify:
        return cert
    P = letter_distribution(weights)
    return cert, _verify(cert, lambda cap: cesaro_average(P, A.n, cap), support_cap)


def w_set_instance(A: Automaton, ws: UniformWSet, method: str = "w-set") -> AveragingInstance:
    return AveragingInstance(A, uniform_on(ws.words), ws.R, ws.w0, 2, method)


def sync_via_W(A: Automaton, ws: UniformWSet, verify: bool = False, odd_r_improvement: bool = False,
               support_cap: int = SUPPORT_CAP, method: str = "w-set"):
    inst = w_set_instance(A, ws, method)
    cert = synchronize_core(inst, odd_r_improvement)
    if not verify:
        return cert
    return cert, _verify(cert, lambda cap: uniform_up_to(A.k, A.n - 2, cap), support_cap)


def one_cluster_bound(n: int) -> int:
    return 2 * n * n - 7 * n + 8


def one_cluster_candidates(A: Automaton, odd_r_improvement: bool = False) -> list[tuple[int, UniformWSet, int]]:
    """``(letter, W, bound)`` for every one-cluster letter, best bound first
    (ties in alphabet order)."""
    out = []
    for a, R in one_cluster_detect(A):
        ws = one_cluster_W(A, a, R)
        out.append((a, ws, w_set_instance(A, ws).bound(odd_r_improvement)))
    out.sort(key=lambda t: (t[2], t[0]))
    return out


def sync_one_cluster(A: Automaton, verify: bool = False, odd_r_improvement: bool = False,
                     support_cap: int = SUPPORT_CAP):
    cands = one_cluster_candidates(A, odd_r_improvement)
    if not cands:
        raise NotApplicableError("no letter has a single cycle")
    _, ws, _ = cands[0]
    res = sync_via_W(A, ws, verify, odd_r_improvement, support_cap, method="one-cluster")
    cert = res[0] if verify else res
    if cert.length > one_cluster_bound(A.n):
        raise EngineError(f"one-cluster certificate of length {cert.length} exceeds 2n^2-7n+8")
    return res


METHODS = ("pseudo-eulerian", "one-cluster", "w-set")


def synchronize(A: Automaton, method: str = "auto", ws: UniformWSet | None = None, **kw):
    """Dispatch to a wrapper; ``auto`` tries them in :data:`METHODS` order."""
    if method == "auto":
        last = None
        for m in METHODS:
            if m == "w-set" and ws is None:
                continue
            try:
                return synchronize(A, m, ws, **kw)
            except NotApplicableError as e:
                last = e
        raise last or NotApplicableError("no method applies")
    if method == "pseudo-eulerian":
        return sync_pseudo_eulerian(A, **kw)
    if method == "one-cluster":
        return sync_one_cluster(A, **kw)
    if method == "w-set":
        if ws is None:
            raise NotApplicableError("w-set method needs a word set")
        return sync_via_W(A, ws, **kw)
    raise ValueError(f"unknown method {method!r}")
