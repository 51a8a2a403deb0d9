"""Exact rational simplex for small linear programs.

Solves   min c.x  s.t.  A x = b,  x >= 0   entirely over Fractions.
Bland's rule (smallest-index entering and leaving variable) rules out
cycling, so termination is unconditional.  Phase 1 minimises the sum of
artificial variables; phase 2 optimises the caller's objective.

Instances here are tiny (tens of rows, at most a few thousand columns),
so a dense tableau is the simplest correct choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[list[Fraction]] = None
    objective: Optional[Fraction] = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows          # m x n coefficient matrix
        self.rhs = rhs            # m, kept nonnegative
        self.basis = basis        # basic variable per row

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        inv = _ONE / piv
        self.rows[r] = [x * inv for x in self.rows[r]]
        self.rhs[r] *= inv
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [x - f * y for x, y in zip(row, self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # c_j - c_B . B^-1 A_j, computed column-wise from the tableau
        m = len(self.rows)
        cb = [cost[self.basis[i]] for i in range(m)]
        n = len(self.rows[0])
        red = list(cost)
        for i in range(m):
            if cb[i] != 0:
                row = self.rows[i]
                f = cb[i]
                red = [rj - f * aij for rj, aij in zip(red, row)]
        return red

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum(
            (cost[self.basis[i]] * self.rhs[i] for i in range(len(self.rows))), _ZERO
        )

    def optimise(self, cost: Sequence[Fraction], ncols: int) -> str:
        """Run Bland pivots on columns [0, ncols); return optimal/unbounded."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in range(ncols) if red[j] < 0), None)
            if enter is None:
                return OPTIMAL
            leave = None
            best: Optional[Fraction] = None
            for i, row in enumerate(self.rows):
                if row[enter] > 0:
                    ratio = self.rhs[i] / row[enter]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leave])
                    ):
                        best = ratio
                        leave = i
            if leave is None:
                return UNBOUNDED
            self.pivot(leave, enter)


def solve_lp(
    a: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
    c: Sequence[Fraction],
) -> LPResult:
    """Minimise c.x subject to A x = b, x >= 0, exactly."""
    m = len(a)
    n = len(c)
    rows = [[Fraction(x) for x in row] for row in a]
    rhs = [Fraction(x) for x in b]
    if any(len(row) != n for row in rows) or len(rhs) != m:
        raise ValueError("inconsistent LP dimensions")
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]

    # Phase 1: artificial variable per row.
    for i in range(m):
        rows[i] = rows[i] + [_ONE if j == i else _ZERO for j in range(m)]
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase1_cost = [_ZERO] * n + [_ONE] * m
    status = tab.optimise(phase1_cost, n + m)
    assert status == OPTIMAL, "phase-1 objective is bounded below by zero"
    if tab.objective(phase1_cost) != 0:
        return LPResult(INFEASIBLE)

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(len(tab.rows)):
        if tab.basis[i] >= n:
            piv = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if piv is None:
                continue  # redundant constraint
            tab.pivot(i, piv)
        keep.append(i)
    tab.rows = [tab.rows[i][:n] for i in keep]
    tab.rhs = [tab.rhs[i] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    # Phase 2 on the original objective.
    cost = [Fraction(x) for x in c]
    status = tab.optimise(cost, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [_ZERO] * n
    for i, var in enumerate(tab.basis):
        x[var] = tab.rhs[i]
    return LPResult(OPTIMAL, x, tab.objective(cost))


def feasible_point(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> Optional[list[Fraction]]:
    """A basic feasible solution of A x = b, x >= 0, or None if infeasible."""
    n = len(a[0]) if a else 0
    res = solve_lp(a, b, [_ZERO] * n)
    return res.x if res.status == OPTIMAL else None
