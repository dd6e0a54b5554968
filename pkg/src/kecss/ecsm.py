"""k-ECSM through edge replication: k+4 copies per edge, target k+4, fold back."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bicriteria import iteration_bound, run_algorithm1
from .multigraph import MultiGraph
from .verify import Certificate, certify


@dataclass
class MultiSolution:
    multiplicity: dict[int, int]
    cost: Fraction
    lp0: Fraction = Fraction(0)
    iterations: int = 0
    trace: list[str] = field(default_factory=list)


def replicate(g0: MultiGraph, copies: int) -> tuple[MultiGraph, dict[int, int]]:
    """Graph with ``copies`` parallel copies of every edge, plus copy -> original."""
    g = MultiGraph()
    for v in sorted(g0.nodes):
        g.add_node(v)
    origin: dict[int, int] = {}
    nxt = 1
    for e in sorted(g0.edges):
        u, v, c = g0.edges[e]
        for _ in range(copies):
            g.add_edge(nxt, u, v, c)
            origin[nxt] = e
            nxt += 1
    return g, origin


def solve_ecsm(g0: MultiGraph, k: int, trace=None) -> tuple[MultiSolution, Certificate]:
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(g0.nodes) < 2:
        sol = MultiSolution({}, Fraction(0))
        return sol, certify([], g0, k, "ecsm", 0, multiplicity={})
    kp = k + 4
    g, origin = replicate(g0, kp)
    inner, inner_cert = run_algorithm1(g, kp, trace=trace)
    mult: dict[int, int] = {}
    for e in inner.edges:
        mult[origin[e]] = mult.get(origin[e], 0) + 1
    cost = sum((g0.cost(e) * m for e, m in mult.items()), Fraction(0))
    sol = MultiSolution(dict(sorted(mult.items())), cost, inner.lp0, inner.iterations, inner.trace)
    cert = certify(None, g0, k, "ecsm", inner.lp0, ledger=inner_cert.ledger,
                   iterations=inner.iterations, iteration_bound=iteration_bound(len(g.nodes)),
                   multiplicity=sol.multiplicity,
                   notes=[f"replicated each edge {kp} times, target {kp}"] + inner_cert.notes)
    return sol, cert
