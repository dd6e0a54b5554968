"""Solver state shared by the LP driver, the separation oracle and the outer loops."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .multigraph import ContractionForest, MultiGraph, cut_degree

ALG1 = 1
ALG2 = 2


class KecssError(Exception):
    pass


class InfeasibleInstance(KecssError):
    def __init__(self, message: str, witness: frozenset | None = None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(KecssError):
    pass


@dataclass
class LedgerEntry:
    name: str
    iteration: int
    passed: bool
    detail: str = ""


@dataclass
class Ledger:
    entries: list[LedgerEntry] = field(default_factory=list)

    def check(self, name: str, iteration: int, passed: bool, detail: str = "") -> bool:
        self.entries.append(LedgerEntry(name, iteration, bool(passed), detail))
        return bool(passed)

    def failures(self) -> list[LedgerEntry]:
        return [e for e in self.entries if not e.passed]

    @property
    def clean(self) -> bool:
        return not self.failures()


@dataclass
class GhostEdge:
    """Virtual edge between two relaxed nodes; endpoints follow contractions.

    ``u``/``v`` become None once both ends are merged into one node.
    """

    u: int | None
    v: int | None
    witness: frozenset[int]
    iteration: int

    @property
    def alive(self) -> bool:
        return self.u is not None

    def crosses(self, s) -> bool:
        return self.alive and ((self.u in s) != (self.v in s))


def mu_for(k: int, variant: int) -> int:
    # ceil((k-3)/2) and ceil((k-1)/2) with floor division on negatives
    return -((3 - k) // 2) if variant == ALG1 else -((1 - k) // 2)


@dataclass
class SolverState:
    g: MultiGraph
    k: int
    variant: int = ALG1
    E: set[int] = field(default_factory=set)
    I: set[int] = field(default_factory=set)
    H: list[GhostEdge] = field(default_factory=list)
    U: set[int] = field(default_factory=set)
    forest: ContractionForest = field(default_factory=ContractionForest)
    iteration: int = 0
    cut_pool: list[frozenset[int]] = field(default_factory=list)
    pool_index: set[frozenset[int]] = field(default_factory=set, repr=False)
    rounded_share: Fraction = Fraction(0)
    ledger: Ledger = field(default_factory=Ledger)
    events: list[str] = field(default_factory=list)

    @classmethod
    def initial(cls, g0: MultiGraph, k: int, variant: int = ALG1) -> "SolverState":
        return cls(g=g0.copy(), k=k, variant=variant, E=set(g0.edges))

    @property
    def mu(self) -> int:
        return mu_for(self.k, self.variant)

    @property
    def ghost_weight(self) -> int:
        return 2 if self.variant == ALG1 else 1

    @property
    def singleton_slack(self) -> int:
        return 2 if self.variant == ALG1 else 1

    def live_I(self) -> list[int]:
        return sorted(e for e in self.I if e in self.g.edges)

    def d_I(self, s) -> int:
        return cut_degree(self.g, self.live_I(), s)

    def d_E(self, s) -> int:
        return cut_degree(self.g, self.E, s)

    def d_H(self, s) -> int:
        return sum(1 for h in self.H if h.crosses(s))

    def ghost_between(self, u: int, v: int) -> int:
        return sum(1 for h in self.H if h.alive and {h.u, h.v} == {u, v})

    def is_u_singleton_cut(self, s) -> bool:
        # with two nodes a set can be a singleton and a co-singleton at once
        if len(s) == 1 and next(iter(s)) in self.U:
            return True
        if len(s) == len(self.g.nodes) - 1:
            rest = self.g.nodes - set(s)
            return next(iter(rest)) in self.U
        return False

    def cost_of(self, edges: Iterable[int], g0: MultiGraph) -> Fraction:
        return sum((g0.cost(e) for e in edges), Fraction(0))


def eval_f(state: SolverState, s) -> int:
    """Residual requirement of cut ``s`` under the active variant."""
    s = frozenset(s)
    val = state.k - state.d_I(s) - state.ghost_weight * state.d_H(s)
    if state.is_u_singleton_cut(s):
        val -= state.singleton_slack
    return val
