"""Exact primal simplex for ``min c.x  s.t.  A x >= b,  0 <= x <= 1``.

The tableau is kept fraction-free: every entry is a Python int and the whole
tableau shares one positive denominator (Bareiss/Edmonds integer pivoting).
Upper bounds are handled by complementing variables (x -> 1 - x), so no
explicit bound rows are stored. Pivoting follows Bland's rule, which together
with exact arithmetic rules out cycling and makes every solve deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import kernels


_PIVOT_CAP = 200_000


class LPInfeasible(Exception):
    pass


@dataclass
class LinearProgram:
    """Rows are ``(coeffs, rhs)`` meaning ``sum(coeffs[j] * x_j) >= rhs``."""

    num_vars: int
    objective: list[Fraction]
    rows: list[tuple[dict[int, Fraction], Fraction]] = field(default_factory=list)

    def add_row(self, coeffs: dict[int, object], rhs) -> int:
        for j in coeffs:
            if not 0 <= j < self.num_vars:
                raise ValueError(f"row references unknown variable {j}")
        self.rows.append(({j: Fraction(a) for j, a in coeffs.items()}, Fraction(rhs)))
        return len(self.rows) - 1


@dataclass
class LPResult:
    """An optimal basic solution.

    ``tight_rows`` and ``bound_vars`` together list the constraints that are
    nonbasic at the optimum (row ids whose slack is nonbasic, and variable
    ids sitting at bound 0 or 1). ``denominator`` is the basis determinant
    (in absolute value): every value is an integer multiple of its inverse.
    """

    values: list[Fraction]
    objective: Fraction
    tight_rows: list[int]
    bound_vars: list[int]
    denominator: int
    pivots: int


def _int_row(coeffs: dict[int, Fraction], rhs: Fraction, nv: int) -> tuple[list[int], int]:
    scale = lcm(rhs.denominator, *(a.denominator for a in coeffs.values()))
    row = [0] * nv
    for j, a in coeffs.items():
        row[j] = int(a * scale)
    return row, int(rhs * scale)


class _Tableau:
    def __init__(self, lp: LinearProgram):
        nv = lp.num_vars
        m = len(lp.rows)
        self.nv, self.m = nv, m
        width = nv + m + 1  # structural, slacks, rhs
        self.rows: list[list[int]] = []
        self.basis: list[int] = []  # column id, or -1 for an artificial
        for i, (coeffs, rhs) in enumerate(lp.rows):
            a, b = _int_row(coeffs, rhs, nv)
            row = [0] * width
            if b > 0:
                row[:nv] = a
                row[nv + i] = -1
                row[-1] = b
                self.basis.append(-1)
            else:
                row[:nv] = [-x for x in a]
                row[nv + i] = 1
                row[-1] = -b
                self.basis.append(nv + i)
            self.rows.append(row)
        self.d = 1
        self.flipped = [False] * nv
        self.pivots = 0
        cscale = lcm(1, *(c.denominator for c in lp.objective))
        self.cost = [int(c * cscale) for c in lp.objective] + [0] * m

    def is_upper_bounded(self, j: int) -> bool:
        return j < self.nv

    def set_phase1_objective(self) -> None:
        width = self.nv + self.m + 1
        obj = [0] * width
        for i, row in enumerate(self.rows):
            if self.basis[i] == -1:
                for j in range(width):
                    obj[j] -= row[j]
        self.obj = obj

    def set_phase2_objective(self) -> None:
        # d * reduced cost; basic columns hold d * unit vectors so they cancel.
        d = self.d
        cost = [(-c if j < self.nv and self.flipped[j] else c) for j, c in enumerate(self.cost)]
        obj = [d * c for c in cost] + [0]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                obj = [o - cb * x for o, x in zip(obj, row)]
        self.obj = obj

    def _pivot(self, r: int, c: int) -> None:
        allrows = self.rows + [self.obj]
        self.d = kernels.pivot(allrows, r, c, self.d)
        self.rows = allrows[:-1]
        self.obj = allrows[-1]
        self.basis[r] = c
        self.pivots += 1

    def _complement_nonbasic(self, j: int) -> None:
        for row in self.rows + [self.obj]:
            a = row[j]
            if a:
                row[-1] -= a
                row[j] = -a
        self.flipped[j] = not self.flipped[j]

    def _complement_basic(self, r: int) -> None:
        j = self.basis[r]
        row = self.rows[r]
        for col in range(len(row) - 1):
            if col != j:
                row[col] = -row[col]
        row[-1] = self.d - row[-1]
        self.flipped[j] = not self.flipped[j]

    def run(self) -> None:
        """Bland's-rule primal simplex until no improving column remains."""
        ncols = self.nv + self.m
        while True:
            if self.pivots > _PIVOT_CAP:
                raise AssertionError("simplex pivot cap exceeded")
            basic = set(self.basis)
            enter = -1
            for j in range(ncols):
                if self.obj[j] < 0 and j not in basic:
                    enter = j
                    break
            if enter < 0:
                return
            self._step(enter)

    def _step(self, j: int) -> None:
        # Candidate step lengths as (num, den, kind, row, var-id); smallest
        # length wins, ties go to the smallest variable id (Bland).
        best = None
        if self.is_upper_bounded(j):
            best = (self.d, self.d, "flip", -1, j)
        d = self.d
        for i, row in enumerate(self.rows):
            a = row[j]
            if a == 0:
                continue
            var = self.basis[i]
            var_key = -1 if var == -1 else var
            if a > 0:
                cand = (row[-1], a, "zero", i, var_key)
            elif var != -1 and self.is_upper_bounded(var):
                cand = (d - row[-1], -a, "upper", i, var_key)
            else:
                continue
            if best is None:
                best = cand
                continue
            lhs = cand[0] * best[1]
            rhs = best[0] * cand[1]
            if lhs < rhs or (lhs == rhs and cand[4] < best[4]):
                best = cand
        if best is None:
            raise AssertionError("unbounded direction in a boxed LP")
        kind, r = best[2], best[3]
        if kind == "flip":
            self._complement_nonbasic(j)
            return
        if kind == "upper":
            self._complement_basic(r)
        self._pivot(r, j)

    def drive_out_artificials(self) -> None:
        for i in range(len(self.rows)):
            if self.basis[i] != -1:
                continue
            row = self.rows[i]
            if row[-1] != 0:
                raise AssertionError("artificial left at a positive level")
            basic = set(self.basis)
            for j in range(self.nv + self.m):
                if row[j] != 0 and j not in basic:
                    self._pivot(i, j)
                    break
            else:
                raise AssertionError("redundant row in a system with slack columns")

    def values(self) -> list[Fraction]:
        vals = [Fraction(0)] * self.nv
        for i, j in enumerate(self.basis):
            if 0 <= j < self.nv:
                vals[j] = Fraction(self.rows[i][-1], self.d)
        return [1 - v if self.flipped[j] else v for j, v in enumerate(vals)]


def simplex_solve(lp: LinearProgram) -> LPResult:
    """Optimal vertex of ``lp``; raises :class:`LPInfeasible` if empty."""
    nv = lp.num_vars
    if len(lp.objective) != nv:
        raise ValueError("objective length differs from variable count")
    t = _Tableau(lp)
    if -1 in t.basis:
        t.set_phase1_objective()
        t.run()
        if any(t.basis[i] == -1 and t.rows[i][-1] != 0 for i in range(len(t.rows))):
            raise LPInfeasible("no point satisfies the rows and the box")
        t.drive_out_artificials()
    t.set_phase2_objective()
    t.run()
    x = t.values()
    basic = set(t.basis)
    tight = [i for i in range(t.m) if nv + i not in basic]
    bound = [j for j in range(nv) if j not in basic]
    value = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    return LPResult(x, value, tight, bound, t.d, t.pivots)


def row_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Exact rank of integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        top = rows[rank]
        p = top[col]
        for i in range(rank + 1, len(rows)):
            a = rows[i][col]
            if a:
                new = [x * p - a * y for x, y in zip(rows[i], top)]
                g = gcd(*new)
                rows[i] = [x // g for x in new] if g > 1 else new
        rank += 1
        if rank == len(rows):
            break
    return rank
