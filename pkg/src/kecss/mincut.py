"""Exact max-flow / min-cut and the cut-LP separation oracle.

Capacities are rationals; a network scales them by the lcm of their
denominators and hands integers to the flow kernel.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from . import kernels
from .multigraph import MultiGraph
from .state import InvariantViolation, SolverState, eval_f


class Network:
    """Undirected capacitated network over a fixed node set."""

    def __init__(self, nodes: Iterable[int], arcs: Iterable[tuple[int, int, Fraction]]):
        self.order = sorted(nodes)
        self.index = {v: i for i, v in enumerate(self.order)}
        merged: dict[tuple[int, int], Fraction] = {}
        for u, v, c in arcs:
            if c == 0:
                continue
            if c < 0:
                raise ValueError("negative capacity")
            key = (u, v) if u < v else (v, u)
            merged[key] = merged.get(key, 0) + Fraction(c)
        self.arcs = sorted(merged.items())
        self.scale = lcm(1, *(c.denominator for _, c in self.arcs))
        self.tails = [self.index[u] for (u, _), _ in self.arcs]
        self.heads = [self.index[v] for (_, v), _ in self.arcs]
        self.caps = [int(c * self.scale) for _, c in self.arcs]

    def flow(self, sources: Iterable[int], sinks: Iterable[int]) -> tuple[Fraction, frozenset[int]]:
        """Max-flow value and the minimal minimum cut (source side)."""
        n = len(self.order)
        src = [0] * n
        snk = [0] * n
        for v in sources:
            src[self.index[v]] = 1
        for v in sinks:
            if src[self.index[v]]:
                raise ValueError("source and sink sets overlap")
            snk[self.index[v]] = 1
        value, reach = kernels.max_flow(n, self.tails, self.heads, self.caps, src, snk)
        side = frozenset(self.order[i] for i in range(n) if reach[i])
        return Fraction(value, self.scale), side

    def capacity(self, s) -> Fraction:
        return sum((c for (u, v), c in self.arcs if (u in s) != (v in s)), Fraction(0))


@dataclass
class CapacityAssignment:
    """Per-edge capacities: x on fractional edges, 1 on I, ghost weight on H."""

    arcs: list[tuple[int, int, Fraction]]
    ghost_weight: int

    @classmethod
    def from_state(cls, state: SolverState, x: Mapping[int, Fraction]) -> "CapacityAssignment":
        g = state.g
        arcs = []
        for e in sorted(state.E):
            u, v = g.endpoints(e)
            arcs.append((u, v, Fraction(x[e])))
        for e in state.live_I():
            u, v = g.endpoints(e)
            arcs.append((u, v, Fraction(1)))
        for h in state.H:
            if h.alive:
                arcs.append((h.u, h.v, Fraction(state.ghost_weight)))
        return cls(arcs, state.ghost_weight)


def max_flow(g: MultiGraph, caps, s, t) -> tuple[Fraction, frozenset[int]]:
    """Max s-t flow in ``g``; ``caps`` maps edge id -> capacity or is a
    :class:`CapacityAssignment`. ``s``/``t`` may be nodes or node sets."""
    if isinstance(caps, CapacityAssignment):
        arcs = caps.arcs
    else:
        arcs = [(*g.endpoints(e), Fraction(c)) for e, c in caps.items()]
    src = {s} if isinstance(s, int) else set(s)
    snk = {t} if isinstance(t, int) else set(t)
    if src & snk:
        raise ValueError("s and t must differ")
    return Network(g.nodes, arcs).flow(src, snk)


def _seed_pairs(s: int, t: int, nodes: list[int], relaxed: set[int]):
    """Source/sink seed sets covering every s-t cut whose side is not a
    relaxed singleton ({s} with s relaxed, or the complement {t})."""
    srcs = [(s,)] if s not in relaxed else [(s, u) for u in nodes if u != s and u != t]
    snks = [(t,)] if t not in relaxed else [(t, v) for v in nodes if v != s and v != t]
    for a in srcs:
        for b in snks:
            if not set(a) & set(b):
                yield a, b


def _canonical(nodes: set[int], side: frozenset[int]) -> frozenset[int]:
    ref = min(nodes)
    return frozenset(nodes - side) if ref in side else side


def violated_cuts(state: SolverState, x: Mapping[int, Fraction]) -> list[frozenset[int]]:
    """Cuts S with x(delta_E(S)) < f(S), at most one per sink node.

    Empty list iff x satisfies every cut inequality.
    """
    nodes = sorted(state.g.nodes)
    if len(nodes) < 2:
        return []
    found: list[frozenset[int]] = []
    seen = set()

    def keep(side):
        c = _canonical(state.g.nodes, side)
        if c not in seen:
            seen.add(c)
            found.append(c)

    for u in sorted(state.U):
        s = frozenset([u])
        xs = sum((x[e] for e in state.E if _crosses(state.g, e, s)), Fraction(0))
        if xs < eval_f(state, s):
            keep(s)
    net = Network(nodes, CapacityAssignment.from_state(state, x).arcs)
    k = state.k
    free = [v for v in nodes if v not in state.U]
    root = free[0] if free else nodes[0]
    for t in nodes:
        if t == root:
            continue
        value, side = net.flow([root], [t])
        if value >= k:
            continue
        if not state.is_u_singleton_cut(side):
            keep(side)
            continue
        for a, b in _seed_pairs(root, t, nodes, state.U):
            value, side = net.flow(a, b)
            if value < k:
                keep(side)
                break
    return found


def separate(state: SolverState, x: Mapping[int, Fraction]) -> frozenset[int] | None:
    cuts = violated_cuts(state, x)
    return cuts[0] if cuts else None


def _crosses(g: MultiGraph, e: int, s) -> bool:
    u, v = g.endpoints(e)
    return (u in s) != (v in s)


@dataclass(frozen=True)
class CoreCandidate:
    members: frozenset[int]
    capacity: Fraction
    d_E: int
    x_boundary: Fraction
    f_value: int
    d_I: int
    d_H: int


def describe_cut(state: SolverState, x: Mapping[int, Fraction], s, capacity=None) -> CoreCandidate:
    s = frozenset(s)
    cross = [e for e in state.E if _crosses(state.g, e, s)]
    xb = sum((x[e] for e in cross), Fraction(0))
    d_i = state.d_I(s)
    d_h = state.d_H(s)
    if capacity is None:
        capacity = xb + d_i + state.ghost_weight * d_h
    return CoreCandidate(s, Fraction(capacity), len(cross), xb, eval_f(state, s), d_i, d_h)


def find_cores(state: SolverState, x: Mapping[int, Fraction]) -> list[CoreCandidate]:
    """All x-cores: inclusion-minimal non-relaxed sets of capacity exactly k
    with a fractional edge on their boundary, in discovery order."""
    g = state.g
    nodes = sorted(g.nodes)
    net = Network(nodes, CapacityAssignment.from_state(state, x).arcs)
    k = state.k
    pairs: list[tuple[int, int]] = []
    seen_pairs = set()
    for e in sorted(state.E):
        u, v = g.endpoints(e)
        for st in ((min(u, v), max(u, v)), (max(u, v), min(u, v))):
            if st not in seen_pairs:
                seen_pairs.add(st)
                pairs.append(st)
    cands: list[frozenset[int]] = []
    known = set()

    def add(side):
        if side not in known:
            known.add(side)
            cands.append(side)

    for s, t in pairs:
        value, side = net.flow([s], [t])
        if value > k:
            continue
        if value == k and not state.is_u_singleton_cut(side):
            add(side)
            continue
        for a, b in _seed_pairs(s, t, nodes, state.U):
            value, side = net.flow(a, b)
            if value < k:
                raise InvariantViolation(f"cut {sorted(side)} violated while searching cores")
            if value == k:
                add(side)
    minimal = [c for c in cands if not any(d < c for d in cands)]
    out = []
    for c in minimal:
        cand = describe_cut(state, x, c)
        if not (cand.d_E > 0 and cand.f_value > 0 and cand.x_boundary == cand.f_value):
            raise InvariantViolation(f"core candidate {sorted(c)} failed re-verification")
        out.append(cand)
    return out


def global_min_cut(g: MultiGraph, weights: Mapping[int, object] | None = None):
    """Exact global minimum cut ``(value, side)`` via n-1 max-flows from a
    fixed root. ``weights`` maps edge id -> weight (default 1 per edge)."""
    nodes = sorted(g.nodes)
    if len(nodes) < 2:
        raise ValueError("global min cut needs at least two nodes")
    if weights is None:
        weights = {e: 1 for e in g.edges}
    arcs = [(*g.endpoints(e), Fraction(w)) for e, w in weights.items()]
    net = Network(nodes, arcs)
    best = None
    root = nodes[0]
    for t in nodes[1:]:
        value, side = net.flow([root], [t])
        if best is None or value < best[0]:
            best = (value, side)
    value, side = best
    if value.denominator == 1:
        value = int(value)
    return value, side
