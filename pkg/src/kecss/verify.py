"""Independent checkers: certificates, brute-force optima, the full cut LP.

Nothing here reads solver state. ``certify`` starts from the input graph and
a list of chosen edges and recomputes every headline number itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .instances import fmt, instance_from_graph
from .mincut import global_min_cut
from .multigraph import MultiGraph
from .simplex import LinearProgram, LPInfeasible, simplex_solve
from .state import InfeasibleInstance, Ledger

ALGORITHMS = {
    # name: (connectivity loss p, cost factor)
    "bicriteria1": (4, Fraction(1)),
    "bicriteria2": (2, Fraction(3, 2)),
    "ecsm": (0, None),
}


class InstanceTooLarge(ValueError):
    pass


@dataclass
class Certificate:
    instance_digest: str
    algorithm: str
    k: int
    n: int
    m: int
    solution_edges: int
    cost: Fraction
    lp0: Fraction
    cost_bound: Fraction
    mincut: int | None  # None: single node, every cut condition is vacuous
    connectivity_target: int
    iterations: int = 0
    iteration_bound: int | None = None
    ledger: Ledger = field(default_factory=Ledger)
    notes: list[str] = field(default_factory=list)

    @property
    def cost_ok(self) -> bool:
        return self.cost <= self.cost_bound

    @property
    def connectivity_ok(self) -> bool:
        return self.mincut is None or self.mincut >= self.connectivity_target

    @property
    def valid(self) -> bool:
        return self.cost_ok and self.connectivity_ok and self.ledger.clean

    @property
    def status(self) -> str:
        return "VALID" if self.valid else "INVALID"

    def dumps(self) -> str:
        lines = [
            "certificate v1",
            f"instance_digest={self.instance_digest}",
            f"algorithm={self.algorithm}",
            f"k={self.k}",
            f"n={self.n}",
            f"m={self.m}",
            f"solution_edges={self.solution_edges}",
            f"solution_cost={fmt(self.cost)}",
            f"lp0={fmt(self.lp0)}",
            f"cost_bound={fmt(self.cost_bound)}",
            f"cost_ok={str(self.cost_ok).lower()}",
            f"mincut={'inf' if self.mincut is None else self.mincut}",
            f"connectivity_target={self.connectivity_target}",
            f"connectivity_ok={str(self.connectivity_ok).lower()}",
            f"iterations={self.iterations}",
            f"iteration_bound={'none' if self.iteration_bound is None else self.iteration_bound}",
            f"ledger_failures={len(self.ledger.failures())}",
            f"status={self.status}",
        ]
        lines += [f"note={n}" for n in self.notes]
        lines.append("ledger:")
        for e in self.ledger.entries:
            tail = f" {e.detail}" if e.detail else ""
            lines.append(f"  {e.name} {e.iteration} {'PASS' if e.passed else 'FAIL'}{tail}")
        return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> dict[str, str]:
    """Key/value header of a certificate file (the ledger block is skipped)."""
    out = {}
    for line in text.splitlines():
        if line == "ledger:":
            break
        if "=" in line:
            key, val = line.split("=", 1)
            out[key] = val
    return out


def subgraph(g0: MultiGraph, edges) -> MultiGraph:
    h = MultiGraph()
    for v in sorted(g0.nodes):
        h.add_node(v)
    for e in edges:
        h.add_edge(e, *g0.edges[e])
    return h


def connectivity(g0: MultiGraph, multiplicity: dict[int, int]) -> int | None:
    """Edge connectivity of the multiset of ``g0`` edges, None for one node."""
    if len(g0.nodes) < 2:
        return None
    h = subgraph(g0, [e for e, mlt in multiplicity.items() if mlt > 0])
    weights = {e: multiplicity[e] for e in h.edges}
    return global_min_cut(h, weights)[0]


def certify(solution_edges, g0: MultiGraph, k: int, algorithm: str, lp0,
            ledger: Ledger | None = None, iterations: int = 0,
            iteration_bound: int | None = None, multiplicity: dict[int, int] | None = None,
            notes=()) -> Certificate:
    """Re-derive cost and connectivity of a solution and compare them with
    the algorithm's guarantees. Failures are recorded, never raised."""
    loss, factor = ALGORITHMS[algorithm]
    if multiplicity is None:
        multiplicity = {e: 1 for e in solution_edges}
    for e in multiplicity:
        if e not in g0.edges:
            raise ValueError(f"solution edge {e} is not an edge of the instance")
    cost = sum((g0.cost(e) * mlt for e, mlt in multiplicity.items()), Fraction(0))
    lp0 = Fraction(lp0)
    bound = lp0 if factor is None else factor * lp0
    try:
        digest = instance_from_graph(g0, k).digest()
    except ValueError:
        digest = "unavailable"
    return Certificate(
        instance_digest=digest,
        algorithm=algorithm,
        k=k,
        n=len(g0.nodes),
        m=len(g0.edges),
        solution_edges=sum(multiplicity.values()),
        cost=cost,
        lp0=lp0,
        cost_bound=bound,
        mincut=connectivity(g0, multiplicity),
        connectivity_target=max(0, k - loss),
        iterations=iterations,
        iteration_bound=iteration_bound,
        ledger=ledger if ledger is not None else Ledger(),
        notes=list(notes),
    )


def _all_cuts(nodes: list[int]):
    """Every cut once, as the side avoiding ``nodes[0]``."""
    rest = nodes[1:]
    for r in range(1, len(rest) + 1):
        for side in combinations(rest, r):
            yield frozenset(side)


def lp_by_enumeration(g0: MultiGraph, k: int) -> Fraction:
    """Cut-LP optimum with every cut constraint written out.

    All 2^(n-1)-1 rows are materialized up front. The simplex runs on a
    growing active subset; after each solve the point is checked against
    every materialized row and the most violated ones join the active set,
    so the returned value is the optimum over all of them. No min-cut code
    is involved.
    """
    nodes = sorted(g0.nodes)
    if len(nodes) > 12:
        raise InstanceTooLarge("lp_by_enumeration is limited to 12 nodes")
    edges = sorted(g0.edges)
    if len(nodes) < 2 or k <= 0:
        return Fraction(0)
    rows: list[frozenset[int]] = []
    seen = set()
    for side in _all_cuts(nodes):
        support = frozenset(j for j, e in enumerate(edges)
                            if (g0.edges[e][0] in side) != (g0.edges[e][1] in side))
        if not support:
            raise InfeasibleInstance(f"cut {sorted(side)} has no edges", side)
        if support not in seen:
            seen.add(support)
            rows.append(support)
    costs = [g0.cost(e) for e in edges]
    active = rows[:len(nodes) - 1]  # the singleton cuts come first
    while True:
        lp = LinearProgram(len(edges), costs)
        for support in active:
            lp.add_row({j: 1 for j in support}, k)
        try:
            res = simplex_solve(lp)
        except LPInfeasible:
            raise InfeasibleInstance("cut LP is infeasible") from None
        x = res.values
        violated = sorted((sum(x[j] for j in r) - k, i) for i, r in enumerate(rows)
                          if sum(x[j] for j in r) < k)
        if not violated:
            return res.objective
        active = active + [rows[i] for _, i in violated[:len(nodes)]]


def _connected_enough(nodes, edges_uv, k, cache) -> bool:
    key = tuple(sorted(edges_uv))
    hit = cache.get(key)
    if hit is None:
        h = MultiGraph()
        for v in nodes:
            h.add_node(v)
        for i, (u, v) in enumerate(edges_uv):
            h.add_edge(i, u, v)
        hit = global_min_cut(h)[0] >= k
        cache[key] = hit
    return hit


def brute_force_opt(g0: MultiGraph, k: int, max_edges: int = 20):
    """Exact min-cost k-edge-connected spanning subgraph by branch and bound.

    Returns ``(edge ids, cost)`` or None when even E is not k-connected.
    """
    edges = sorted(g0.edges, key=lambda e: (-g0.cost(e), e))
    if len(edges) > max_edges:
        raise InstanceTooLarge(f"brute_force_opt is limited to {max_edges} edges")
    nodes = sorted(g0.nodes)
    if k <= 0 or len(nodes) < 2:
        return [], Fraction(0)
    cache: dict = {}
    uv = {e: g0.endpoints(e) for e in edges}
    if not _connected_enough(nodes, [uv[e] for e in edges], k, cache):
        return None
    best: list = [None, None]

    def rec(i: int, chosen: list[int], cost: Fraction, avail: list[int]) -> None:
        if best[1] is not None and cost >= best[1]:
            return
        if i == len(edges):
            best[0], best[1] = sorted(chosen), cost
            return
        e = edges[i]
        # Drop e first only if the rest still allows k-connectivity.
        rest = [f for f in avail if f != e]
        if _connected_enough(nodes, [uv[f] for f in rest], k, cache):
            rec(i + 1, chosen, cost, rest)
        chosen.append(e)
        rec(i + 1, chosen, cost + g0.cost(e), avail)
        chosen.pop()

    rec(0, [], Fraction(0), list(edges))
    return best[0], best[1]


def sandwich_check(g0: MultiGraph, k: int, cost) -> dict:
    """brute_force_opt(k-4) <= cost <= brute_force_opt(k); the lower end only
    when k-4 >= 1."""
    upper = brute_force_opt(g0, k)
    if upper is None:
        return {"feasible": False, "ok": None, "lower": None, "upper": None}
    cost = Fraction(cost)
    ok = cost <= upper[1]
    lower = None
    if k - 4 >= 1:
        low = brute_force_opt(g0, k - 4)
        lower = low[1]
        ok = ok and lower <= cost
    return {"feasible": True, "ok": ok, "lower": lower, "upper": upper[1]}


def brute_force_ecsm(g0: MultiGraph, k: int, max_mult: int | None = None):
    """Exact min-cost k-edge-connected multiset, multiplicities in [0, max_mult]."""
    nodes = sorted(g0.nodes)
    edges = sorted(g0.edges)
    if len(nodes) > 4 or len(edges) > 4 or k > 4:
        raise InstanceTooLarge("brute_force_ecsm is limited to 4 nodes, 4 edges, k <= 4")
    if max_mult is None:
        max_mult = k
    if len(nodes) < 2 or k <= 0:
        return {}, Fraction(0)
    cuts = list(_all_cuts(nodes))
    best = None
    for mult in product(range(max_mult + 1), repeat=len(edges)):
        ok = all(sum(m for e, m in zip(edges, mult)
                     if (g0.edges[e][0] in s) != (g0.edges[e][1] in s)) >= k for s in cuts)
        if not ok:
            continue
        cost = sum((g0.cost(e) * m for e, m in zip(edges, mult)), Fraction(0))
        if best is None or cost < best[1]:
            best = ({e: m for e, m in zip(edges, mult) if m}, cost)
    return best
