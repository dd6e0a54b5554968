"""The two iterative relaxation/rounding algorithms.

``run_algorithm1`` returns a (k-4)-edge-connected spanning subgraph of cost at
most the Cut-LP optimum; ``run_algorithm2`` a (k-2)-edge-connected one of
cost at most 3/2 times it. Both are deterministic state machines over
:class:`~kecss.state.SolverState`; every structural property the analysis relies on is
re-checked at runtime and written to the state's ledger.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .cutting_plane import FracSolution, cutting_plane_extreme_point
from .instances import fmt
from .mincut import CoreCandidate, find_cores
from .multigraph import MultiGraph, contract
from .state import (ALG1, ALG2, GhostEdge, InfeasibleInstance, InvariantViolation,
                    SolverState, eval_f)
from .verify import Certificate, certify

ALGORITHM_NAMES = {ALG1: "bicriteria1", ALG2: "bicriteria2"}
ROUND_THRESHOLD = {ALG1: Fraction(1), ALG2: Fraction(2, 3)}


@dataclass
class Solution:
    edges: list[int]
    cost: Fraction
    lp0: Fraction
    iterations: int = 0
    trace: list[str] = field(default_factory=list)


def iteration_bound(n0: int) -> int:
    return 3 * (2 * n0 - 1)


def iteration_cap(n0: int) -> int:
    env = os.environ.get("ECSS_MAX_ITERS")
    if env:
        return int(env)
    return 10 * (2 * n0 - 1) * 3


def find_ghost_pair(state: SolverState) -> tuple[int, int] | None:
    """First pair u < v in U with d_I(u, v) >= mu and no ghost edge between them."""
    nodes = sorted(state.U)
    if len(nodes) < 2:
        return None
    g = state.g
    between: dict[tuple[int, int], int] = {}
    for e in state.live_I():
        u, v = g.endpoints(e)
        key = (u, v) if u < v else (v, u)
        between[key] = between.get(key, 0) + 1
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            if between.get((u, v), 0) >= state.mu and state.ghost_between(u, v) == 0:
                return u, v
    return None


def add_ghost_edge(state: SolverState, u: int, v: int) -> GhostEdge:
    if u not in state.U or v not in state.U or u == v:
        raise InvariantViolation(f"ghost edge {u}-{v} needs two distinct relaxed nodes")
    if state.ghost_between(u, v):
        raise InvariantViolation(f"nodes {u} and {v} already share a ghost edge")
    g = state.g
    witness = frozenset(e for e in state.live_I() if set(g.endpoints(e)) == {u, v})
    if len(witness) < state.mu:
        raise InvariantViolation(f"only {len(witness)} integral {u}-{v} edges, need {state.mu}")
    h = GhostEdge(u, v, witness, state.iteration)
    state.H.append(h)
    state.U -= {u, v}
    return h


def check_core(state: SolverState, core: CoreCandidate) -> None:
    """Hard preconditions for contracting ``core``; the degree equalities go to the ledger."""
    it = state.iteration
    if not (core.f_value > 0 and core.x_boundary == core.f_value and core.d_E in (2, 3)):
        raise InvariantViolation(f"core {sorted(core.members)} is not a tight f-positive set "
                                 f"with 2 or 3 fractional edges")
    if state.variant == ALG2 and core.f_value != 1:
        raise InvariantViolation(f"core {sorted(core.members)} has f = {core.f_value}, expected 1")
    k = state.k
    if state.variant == ALG1:
        ok = (core.d_H <= 1 and core.x_boundary in (1, 2)
              and core.d_I == k - 2 * core.d_H - core.x_boundary)
        state.ledger.check("lemma3_core_degrees", it, ok,
                           f"d_H={core.d_H} x={fmt(core.x_boundary)} d_I={core.d_I}")
    else:
        ok = core.d_H <= 1 and core.x_boundary == 1 and core.d_I == k - core.d_H - 1
        state.ledger.check("lemma19_core_degrees", it, ok,
                           f"d_H={core.d_H} x={fmt(core.x_boundary)} d_I={core.d_I}")


def inner_fractional(state: SolverState, c) -> list[int]:
    g = state.g
    return sorted(e for e in state.E if g.edges[e][0] in c and g.edges[e][1] in c)


def contract_core(state: SolverState, core: CoreCandidate) -> int:
    check_core(state, core)
    c = core.members
    inner = inner_fractional(state, c)
    state.ledger.check("lemma1_core_no_inner_fractional_edge", state.iteration, not inner,
                       f"inner={inner}" if inner else "")
    state.g, vc = contract(state.g, c, state.forest, state.iteration)
    state.E -= set(inner)
    for h in state.H:
        if not h.alive:
            continue
        u = vc if h.u in c else h.u
        v = vc if h.v in c else h.v
        if u == v:
            h.u = h.v = None
        else:
            h.u, h.v = u, v
    state.U = (state.U - c) | {vc}
    return vc


def check_state(state: SolverState) -> None:
    """Per-iteration invariants (relaxed-node degrees, witnesses, forest)."""
    it = state.iteration
    k = state.k
    led = state.ledger
    bad_u = []
    low_u = []
    for u in sorted(state.U):
        s = frozenset([u])
        dh, di = state.d_H(s), state.d_I(s)
        if state.variant == ALG1:
            ok = dh <= 1 and di + 2 * dh >= k - 2
        else:
            ok = dh <= 1 and di + dh == k - 1
            if not (dh <= 1 and di + dh >= k - 1):
                low_u.append(f"{u}:d_I={di},d_H={dh}")
        if not ok:
            bad_u.append(f"{u}:d_I={di},d_H={dh}")
    name = "lemma4_u_degrees" if state.variant == ALG1 else "lemma20_u_degrees"
    led.check(name, it, not bad_u, " ".join(bad_u))
    if state.variant == ALG2:
        # the equality can be lost when a later rounding step adds edges at u;
        # the lower bound is what the cut analysis uses
        led.check("u_degrees_lower_bound", it, not low_u, " ".join(low_u))
    bad_v = [v for v in sorted(state.g.nodes - state.U) if state.d_H(frozenset([v])) > 2]
    led.check("ghost_degree_outside_u", it, not bad_v, " ".join(map(str, bad_v)))
    disjoint = True
    seen: set[int] = set()
    for h in state.H:
        if seen & h.witness:
            disjoint = False
        seen |= h.witness
    led.check("lemma2_witness_disjoint", it, disjoint)
    n0 = len(state.g.original_nodes())
    led.check("forest_laminar", it, state.forest.is_laminar())
    led.check("forest_size", it, len(state.forest) <= 2 * n0 - 1, f"size={len(state.forest)}")


def run_algorithm(g0: MultiGraph, k: int, variant: int = ALG1,
                  trace=None) -> tuple[Solution, Certificate]:
    """Run one of the two bicriteria algorithms on ``g0``.

    ``trace`` is an optional callable receiving one line per iteration.
    Raises :class:`InfeasibleInstance` if the Cut-LP of ``g0`` is infeasible
    and :class:`InvariantViolation` if a step the analysis guarantees fails.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    state = SolverState.initial(g0, k, variant)
    n0 = len(g0.nodes)
    threshold = ROUND_THRESHOLD[variant]
    cap = iteration_cap(n0)
    led = state.ledger
    lp0 = None
    notes: list[str] = []

    def say(msg: str) -> None:
        line = f"iter {state.iteration}: {msg}"
        state.events.append(line)
        if trace is not None:
            trace(line)

    if not state.E and n0 > 1 and k > 0:
        raise InfeasibleInstance("graph has no edges", frozenset([min(g0.nodes)]))
    while state.E:
        state.iteration += 1
        if state.iteration > cap:
            raise InvariantViolation(f"iteration cap {cap} exceeded")
        x: FracSolution = cutting_plane_extreme_point(state)
        if lp0 is None:
            lp0 = x.objective
        it = state.iteration
        n = len(state.g.nodes)
        frac = x.fractional()
        led.check("lemma7_fractional_count", it, len(frac) <= 2 * n - 1,
                  f"fractional={len(frac)} n={n}")
        led.check("cost_monotone", it, state.rounded_share + x.objective <= lp0,
                  f"share={fmt(state.rounded_share)} lp={fmt(x.objective)}")
        zeros = [e for e in sorted(state.E) if x.values[e] == 0]
        for e in zeros:
            state.E.discard(e)
            state.g.remove_edge(e)
        ups = [e for e in sorted(state.E) if x.values[e] >= threshold]
        msg = (f"lp={fmt(x.objective)} rows={x.rows} rounds={x.rounds} "
               f"fractional={len(frac)} dropped={len(zeros)}")
        if ups:
            for e in ups:
                state.E.discard(e)
                state.I.add(e)
                state.rounded_share += x.values[e] * g0.cost(e)
            say(f"{msg} rounded={len(ups)}")
            check_state(state)
            continue
        if not state.E:
            say(msg)
            check_state(state)
            break
        cores = find_cores(state, x.values)
        # Contracting a core with a fractional edge inside would delete that
        # edge as a loop; only cores with an empty fractional interior qualify.
        usable = [c for c in cores if c.d_E in (2, 3)
                  and (variant == ALG1 or c.f_value == 1)
                  and not inner_fractional(state, c.members)]
        if usable:
            core = usable[0]
            if variant == ALG2 and core.d_H == 1:
                notes.append(f"iteration {it}: contracted a core with d_H=1 and d_I={core.d_I}=k-2")
            vc = contract_core(state, core)
            say(f"{msg} contract core {sorted(state.g.members[vc])} -> node {vc}")
            check_state(state)
            continue
        pair = find_ghost_pair(state)
        if pair is not None:
            add_ghost_edge(state, *pair)
            say(f"{msg} ghost edge {pair[0]}-{pair[1]}")
            check_state(state)
            continue
        led.check("branch_totality", it, False, f"cores={len(cores)} U={sorted(state.U)}")
        raise InvariantViolation(f"iteration {it}: no core with 2 or 3 fractional edges "
                                 f"and no ghost pair")
    if lp0 is None:
        lp0 = Fraction(0)
    bound = iteration_bound(n0)
    led.check("lemma7_iterations", state.iteration, state.iteration <= bound,
              f"iterations={state.iteration} bound={bound}")
    edges = sorted(state.I)
    cost = sum((g0.cost(e) for e in edges), Fraction(0))
    sol = Solution(edges, cost, lp0, state.iteration, list(state.events))
    cert = certify(edges, g0, k, ALGORITHM_NAMES[variant], lp0, ledger=led,
                   iterations=state.iteration, iteration_bound=bound, notes=notes)
    return sol, cert


def run_algorithm1(g0: MultiGraph, k: int, trace=None) -> tuple[Solution, Certificate]:
    return run_algorithm(g0, k, ALG1, trace)


def run_algorithm2(g0: MultiGraph, k: int, trace=None) -> tuple[Solution, Certificate]:
    return run_algorithm(g0, k, ALG2, trace)


__all__ = [
    "Solution", "run_algorithm", "run_algorithm1", "run_algorithm2", "find_ghost_pair",
    "add_ghost_edge", "contract_core", "check_core", "eval_f", "iteration_bound",
]
