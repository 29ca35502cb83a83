"""Dense two-phase simplex over ``Fraction`` with Bland's rule.

Small and exact; meant for systems with a handful of variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list[Fraction] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    T[r] = [v / piv for v in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c]:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _run(T, basis, cost, allowed) -> str:
    """Maximize ``cost . x`` on tableau ``T`` (last column is the rhs)."""
    while True:
        # reduced cost d_j = c_j - c_B . column_j
        enter = None
        for j in allowed:
            d = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
            if d > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave = None
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def solve_lp(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence) -> LPResult:
    """Maximize ``c . x`` subject to ``A_eq x == b_eq`` and ``x >= 0``."""
    m, nv = len(A_eq), len(c)
    c = [Fraction(v) for v in c]
    rows = []
    for row, rhs in zip(A_eq, b_eq):
        row = [Fraction(v) for v in row]
        rhs = Fraction(rhs)
        if len(row) != nv:
            raise ValueError("constraint row length does not match objective")
        if rhs < 0:
            row, rhs = [-v for v in row], -rhs
        rows.append((row, rhs))

    width = nv + m
    T = []
    for i, (row, rhs) in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    basis = list(range(nv, width))

    phase1 = [Fraction(0)] * nv + [Fraction(-1)] * m
    _run(T, basis, phase1, range(width))
    if sum((T[i][-1] for i in range(len(T)) if basis[i] >= nv), Fraction(0)) > 0:
        return LPResult("infeasible")

    # drive zero-level artificials out; rows that cannot be pivoted are redundant
    i = 0
    while i < len(T):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j]), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, j)
        i += 1

    cost = c + [Fraction(0)] * m
    if _run(T, basis, cost, range(nv)) == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * nv
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))
