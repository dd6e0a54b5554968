"""Brute-force oracles and small builders shared by the tests.

None of these reuse solver internals beyond the graph container.
"""
from __future__ import annotations

import copy
from fractions import Fraction
from itertools import combinations

from kecss.multigraph import MultiGraph
from kecss.state import SolverState, eval_f


def graph(n: int, edges, costs=None) -> MultiGraph:
    """Nodes 1..n, edge ids 1..m; costs default to 1."""
    costs = costs or [1] * len(edges)
    return MultiGraph.from_edges(range(1, n + 1),
                                 ((i + 1, u, v, c) for i, ((u, v), c) in enumerate(zip(edges, costs))))


def all_sides(nodes):
    """Every nonempty proper subset, each cut in both orientations."""
    nodes = sorted(nodes)
    for r in range(1, len(nodes)):
        for side in combinations(nodes, r):
            yield frozenset(side)


def crossing(g: MultiGraph, s) -> list[int]:
    return [e for e, (u, v, _) in g.edges.items() if (u in s) != (v in s)]


def naive_min_cut(g: MultiGraph, weights=None):
    if weights is None:
        weights = {e: 1 for e in g.edges}
    return min(sum(Fraction(weights.get(e, 0)) for e in crossing(g, s)) for s in all_sides(g.nodes))


def naive_st_cut(nodes, arcs, src, snk):
    """Min capacity over all node sets containing src and avoiding snk."""
    rest = sorted(set(nodes) - set(src) - set(snk))
    best = None
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            s = set(src) | set(extra)
            cap = sum((Fraction(c) for u, v, c in arcs if (u in s) != (v in s)), Fraction(0))
            if best is None or cap < best:
                best = cap
    return best


def naive_opt(g: MultiGraph, k: int):
    """Cheapest k-edge-connected edge subset by plain enumeration (or None)."""
    edges = sorted(g.edges)
    best = None
    for r in range(len(edges) + 1):
        for sub in combinations(edges, r):
            cost = sum((g.cost(e) for e in sub), Fraction(0))
            if best is not None and cost >= best:
                continue
            chosen = set(sub)
            if all(len([e for e in crossing(g, s) if e in chosen]) >= k for s in all_sides(g.nodes)):
                best = cost
    return best


def x_crossing(state: SolverState, x, s) -> Fraction:
    g = state.g
    return sum((x[e] for e in state.E if (g.edges[e][0] in s) != (g.edges[e][1] in s)), Fraction(0))


def exhaustive_violated(state: SolverState, x) -> list[frozenset]:
    return [s for s in all_sides(state.g.nodes) if x_crossing(state, x, s) < eval_f(state, s)]


def exhaustive_cores(state: SolverState, x) -> set[frozenset]:
    """Inclusion-minimal f-positive x-tight sets, straight from the definition."""
    tight = [s for s in all_sides(state.g.nodes)
             if eval_f(state, s) > 0 and x_crossing(state, x, s) == eval_f(state, s)]
    return {s for s in tight if not any(t < s for t in tight)}


def capture_core_calls(run, g, k):
    """Run ``run(g, k)`` and record (state, x) at every core search."""
    import kecss.bicriteria as bic

    seen = []
    real = bic.find_cores

    def spy(state, x):
        seen.append((copy.deepcopy(state), dict(x)))
        return real(state, x)

    bic.find_cores = spy
    try:
        run(g, k)
    finally:
        bic.find_cores = real
    return seen


def solve_dense(a, b):
    """Exact solution of a square system, or None if singular."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(bb)] for row, bb in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def lp_by_vertices(num_vars, objective, rows):
    """min c.x s.t. rows (>=) and 0<=x<=1 by enumerating every basis; None if infeasible."""
    cons = [(dict(co), Fraction(rhs)) for co, rhs in rows]
    cons += [({j: 1}, Fraction(0)) for j in range(num_vars)]
    cons += [({j: -1}, Fraction(-1)) for j in range(num_vars)]
    best = None
    for pick in combinations(range(len(cons)), num_vars):
        a = [[cons[i][0].get(j, 0) for j in range(num_vars)] for i in pick]
        x = solve_dense(a, [cons[i][1] for i in pick])
        if x is None:
            continue
        if all(sum(co.get(j, 0) * x[j] for j in range(num_vars)) >= rhs for co, rhs in cons):
            val = sum(Fraction(c) * v for c, v in zip(objective, x))
            if best is None or val < best:
                best = val
    return best
