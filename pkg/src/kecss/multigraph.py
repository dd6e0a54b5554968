"""Multigraphs with contraction and the laminar record of contracted sets."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable


class InvalidCut(ValueError):
    pass


@dataclass
class MultiGraph:
    """Undirected multigraph whose edge ids survive contraction.

    ``edges`` maps edge id -> (u, v, cost) with u != v. ``members`` maps each
    live node to the set of original nodes it stands for. Edges absorbed by a
    contraction move to ``internalized`` (edge id -> node that absorbed them).
    """

    nodes: set[int] = field(default_factory=set)
    edges: dict[int, tuple[int, int, Fraction]] = field(default_factory=dict)
    members: dict[int, frozenset[int]] = field(default_factory=dict)
    internalized: dict[int, int] = field(default_factory=dict)
    next_node: int = 0

    @classmethod
    def from_edges(cls, nodes: Iterable[int], edges: Iterable[tuple[int, int, int, object]]) -> "MultiGraph":
        g = cls()
        for v in nodes:
            g.add_node(v)
        for eid, u, v, cost in edges:
            g.add_edge(eid, u, v, cost)
        return g

    def add_node(self, v: int) -> None:
        if v in self.nodes:
            raise ValueError(f"duplicate node {v}")
        self.nodes.add(v)
        self.members[v] = frozenset([v])
        self.next_node = max(self.next_node, v + 1)

    def add_edge(self, eid: int, u: int, v: int, cost=1) -> None:
        if u == v:
            raise ValueError(f"edge {eid} is a self-loop at node {u}")
        if u not in self.nodes or v not in self.nodes:
            raise ValueError(f"edge {eid} has an endpoint that is not a node")
        if eid in self.edges or eid in self.internalized:
            raise ValueError(f"duplicate edge id {eid}")
        cost = Fraction(cost)
        if cost < 0:
            raise ValueError(f"edge {eid} has negative cost")
        self.edges[eid] = (u, v, cost)

    def remove_edge(self, eid: int) -> None:
        del self.edges[eid]

    def copy(self) -> "MultiGraph":
        return MultiGraph(set(self.nodes), dict(self.edges), dict(self.members),
                          dict(self.internalized), self.next_node)

    @property
    def n(self) -> int:
        return len(self.nodes)

    def cost(self, eid: int) -> Fraction:
        return self.edges[eid][2]

    def endpoints(self, eid: int) -> tuple[int, int]:
        u, v, _ = self.edges[eid]
        return u, v

    def preimage(self, s: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for v in s:
            out |= self.members[v]
        return frozenset(out)

    def original_nodes(self) -> frozenset[int]:
        return self.preimage(self.nodes)


def check_cut(g: MultiGraph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    if not s:
        raise InvalidCut("cut is empty")
    dead = s - g.nodes
    if dead:
        raise InvalidCut(f"cut contains dead node ids {sorted(dead)}")
    if len(s) == len(g.nodes):
        raise InvalidCut("cut contains every node")
    return s


def cut_degree(g: MultiGraph, edge_subset: Iterable[int], s: Iterable[int]) -> int:
    """Number of edges of ``edge_subset`` with exactly one end in ``s``."""
    s = s if isinstance(s, (set, frozenset)) else frozenset(s)
    count = 0
    for eid in edge_subset:
        u, v, _ = g.edges[eid]
        if (u in s) != (v in s):
            count += 1
    return count


def pair_degree(g: MultiGraph, edge_subset: Iterable[int], u: int, v: int) -> int:
    if u == v:
        raise ValueError("pair_degree needs two distinct nodes")
    pair = {u, v}
    return sum(1 for eid in edge_subset if set(g.edges[eid][:2]) == pair)


@dataclass(frozen=True)
class ForestEntry:
    members: frozenset[int]
    node: int
    iteration: int


@dataclass
class ContractionForest:
    """Original-node sets produced by contractions, in the order they happened."""

    entries: list[ForestEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def sets(self) -> list[frozenset[int]]:
        return [e.members for e in self.entries]

    def add(self, members: frozenset[int], node: int, iteration: int) -> None:
        self.entries.append(ForestEntry(members, node, iteration))

    def is_laminar(self) -> bool:
        sets = self.sets()
        for i, a in enumerate(sets):
            for b in sets[i + 1:]:
                if not _nested_or_disjoint(a, b):
                    return False
        return True


def _nested_or_disjoint(a: frozenset, b: frozenset) -> bool:
    return not (a & b) or a <= b or b <= a


def restrict_laminar_check(forest: ContractionForest, s: Iterable[int]) -> bool:
    """True iff adding ``s`` (a set of original nodes) keeps the forest laminar."""
    s = frozenset(s)
    return all(_nested_or_disjoint(r, s) for r in forest.sets())


def contract(g: MultiGraph, c_set: Iterable[int], forest: ContractionForest,
             iteration: int = 0) -> tuple[MultiGraph, int]:
    """Identify the nodes of ``c_set`` into one fresh node.

    Edges with both ends inside become internalized; the others are remapped.
    The forest gains the original-node preimage of ``c_set``.
    """
    c = check_cut(g, c_set)
    h = g.copy()
    new = h.next_node
    h.next_node += 1
    for eid, (u, v, cost) in g.edges.items():
        iu, iv = u in c, v in c
        if iu and iv:
            del h.edges[eid]
            h.internalized[eid] = new
        elif iu:
            h.edges[eid] = (new, v, cost)
        elif iv:
            h.edges[eid] = (u, new, cost)
    pre = g.preimage(c)
    for v in c:
        h.nodes.discard(v)
        del h.members[v]
    h.nodes.add(new)
    h.members[new] = pre
    forest.add(pre, new, iteration)
    if not forest.is_laminar():
        raise AssertionError("contraction forest lost laminarity")
    return h, new
