"""Row-generation driver: an optimal extreme point of the residual cut LP.

Solve over the rows known so far, ask the min-cut oracle for violated cuts,
add them, and re-solve from scratch. A vertex of the relaxed polytope that
satisfies every cut is a vertex of the full polytope, so the result is an
extreme point of the full LP. Cuts are remembered on the state as sets of
original nodes and reused by later solves while they stay expressible.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .mincut import violated_cuts
from .simplex import LinearProgram, LPInfeasible, row_rank, simplex_solve
from .state import InfeasibleInstance, InvariantViolation, SolverState, eval_f

_ROUND_CAP = int(os.environ.get("KECSS_MAX_LP_ROUNDS", "10000"))


@dataclass
class FracSolution:
    values: dict[int, Fraction]
    objective: Fraction
    tight_cuts: list[frozenset[int]]
    bound_edges: list[int]
    denominator: int
    rounds: int
    rows: int

    def fractional(self) -> list[int]:
        return [e for e, v in self.values.items() if 0 < v < 1]


def is_integral_at(x: FracSolution, e: int, threshold) -> bool:
    """Exact ``x_e >= threshold``; threshold 0 tests ``x_e == 0``."""
    if e not in x.values:
        raise KeyError(f"edge {e} is not a variable of this solution")
    threshold = Fraction(threshold)
    if threshold == 0:
        return x.values[e] == 0
    return x.values[e] >= threshold


def _current_cut(state: SolverState, orig: frozenset[int], owner: dict[int, int]):
    side = frozenset(owner[o] for o in orig)
    if state.g.preimage(side) != orig or len(side) == len(state.g.nodes):
        return None
    return side


def _remember(state: SolverState, side: frozenset[int]) -> None:
    orig = state.g.preimage(side)
    allv = state.g.original_nodes()
    if min(allv) in orig:
        orig = frozenset(allv - orig)
    if orig not in state.pool_index:
        state.pool_index.add(orig)
        state.cut_pool.append(orig)


def _rows(state: SolverState, edges: list[int], cuts):
    """Deduplicated LP rows: coefficient set -> (rhs, cut), max rhs kept."""
    col = {e: j for j, e in enumerate(edges)}
    g = state.g
    rows: dict[frozenset[int], tuple[int, frozenset[int]]] = {}
    for side in cuts:
        f = eval_f(state, side)
        if f <= 0:
            continue
        support = frozenset(col[e] for e in edges
                            if (g.edges[e][0] in side) != (g.edges[e][1] in side))
        if not support:
            raise InfeasibleInstance(
                f"cut {sorted(g.preimage(side))} needs {f} more edges but has none left", side)
        if support not in rows or rows[support][0] < f:
            rows[support] = (f, side)
    return rows


def cutting_plane_extreme_point(state: SolverState) -> FracSolution:
    """Optimal extreme point of the residual cut LP for the current state.

    Raises :class:`InfeasibleInstance` when no fractional completion exists.
    """
    g = state.g
    edges = sorted(state.E)
    if not edges:
        raise ValueError("no fractional edges left")
    owner = {o: v for v, mem in g.members.items() for o in mem}
    cuts: list[frozenset[int]] = []
    known = set()
    for orig in state.cut_pool:
        side = _current_cut(state, orig, owner)
        if side is not None and side not in known:
            known.add(side)
            cuts.append(side)
    for v in sorted(g.nodes):
        side = frozenset([v])
        if side not in known and len(g.nodes) > 1:
            known.add(side)
            cuts.append(side)
    rounds = 0
    while True:
        rounds += 1
        if rounds > _ROUND_CAP:
            raise InvariantViolation("cutting-plane round cap hit")
        rows = _rows(state, edges, cuts)
        row_list = list(rows.items())
        lp = LinearProgram(len(edges), [g.cost(e) for e in edges])
        for support, (f, _) in row_list:
            lp.add_row({j: 1 for j in support}, f)
        try:
            res = simplex_solve(lp)
        except LPInfeasible:
            ones = {e: Fraction(1) for e in edges}
            witness = next(iter(violated_cuts(state, ones)), None)
            raise InfeasibleInstance("residual cut LP is infeasible", witness) from None
        x = dict(zip(edges, res.values))
        new = violated_cuts(state, x)
        if not new:
            break
        for side in new:
            if side not in known:
                known.add(side)
                cuts.append(side)
            _remember(state, side)
    defining = [[1 if j in support else 0 for j in range(len(edges))]
                for support, _ in (row_list[i] for i in res.tight_rows)]
    defining += [[1 if j == i else 0 for j in range(len(edges))] for i in res.bound_vars]
    if len(defining) != len(edges) or row_rank(defining) != len(edges):
        raise InvariantViolation("returned point is not a vertex of the cut LP")
    return FracSolution(
        values=x,
        objective=res.objective,
        tight_cuts=[row_list[i][1][1] for i in res.tight_rows],
        bound_edges=[edges[i] for i in res.bound_vars],
        denominator=res.denominator,
        rounds=rounds,
        rows=len(row_list),
    )
