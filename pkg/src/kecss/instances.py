"""Instance files, solution files, rational formatting and instance generators.

Instance grammar::

    # comment
    p kecss <n> <m> <k>
    e <u> <v> <cost>        (m lines, 1 <= u, v <= n, u != v)

Costs are nonnegative integers or exact fractions ``p/q``. Edge ids are the
1-based positions of the ``e`` records.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .mincut import global_min_cut
from .multigraph import MultiGraph


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(tok: str) -> Fraction:
    if "/" in tok:
        p, q = tok.split("/", 1)
        if not (p.lstrip("-").isdigit() and q.isdigit()) or int(q) == 0:
            raise ValueError(f"bad rational {tok!r}")
        return Fraction(int(p), int(q))
    if not tok.lstrip("-").isdigit():
        raise ValueError(f"bad rational {tok!r}")
    return Fraction(int(tok))


@dataclass
class Instance:
    n: int
    k: int
    edges: list[tuple[int, int, Fraction]]
    comments: list[str] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.edges)

    def graph(self) -> MultiGraph:
        return MultiGraph.from_edges(
            range(1, self.n + 1),
            ((i + 1, u, v, c) for i, (u, v, c) in enumerate(self.edges)))

    def emit(self) -> str:
        out = [f"# {line}" for line in self.comments]
        out.append(f"p kecss {self.n} {self.m} {self.k}")
        out += [f"e {u} {v} {fmt(c)}" for u, v, c in self.edges]
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        body = Instance(self.n, self.k, self.edges).emit()
        return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


def parse_instance_text(text: str) -> Instance:
    header = None
    edges: list[tuple[int, int, Fraction]] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(tok) != 5 or tok[1] != "kecss" or not all(t.isdigit() for t in tok[2:]):
                raise ParseError("malformed header, expected 'p kecss <n> <m> <k>'", lineno)
            header = (int(tok[2]), int(tok[3]), int(tok[4]), lineno)
            if header[0] < 1:
                raise ParseError("instance needs at least one node", lineno)
        elif tok[0] == "e":
            if header is None:
                raise ParseError("edge record before header", lineno)
            if len(tok) != 4:
                raise ParseError("malformed edge record, expected 'e <u> <v> <cost>'", lineno)
            try:
                u, v = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", lineno) from None
            n = header[0]
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"node index out of range [1, {n}]", lineno)
            if u == v:
                raise ParseError(f"self-loop at node {u}", lineno)
            try:
                cost = parse_rational(tok[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if cost < 0:
                raise ParseError("negative cost", lineno)
            edges.append((u, v, cost))
        else:
            raise ParseError(f"unknown record type {tok[0]!r}", lineno)
    if header is None:
        raise ParseError("missing header line")
    n, m, k, hline = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were given", hline)
    return Instance(n, k, edges, comments)


def parse_instance(text: str) -> tuple[MultiGraph, int]:
    inst = parse_instance_text(text)
    return inst.graph(), inst.k


def instance_from_graph(g: MultiGraph, k: int) -> Instance:
    """Inverse of :meth:`Instance.graph` for graphs on nodes 1..n with edge ids 1..m."""
    n = len(g.nodes)
    if g.nodes != set(range(1, n + 1)) or set(g.edges) != set(range(1, len(g.edges) + 1)):
        raise ValueError("graph is not in file numbering")
    return Instance(n, k, [g.edges[e] for e in range(1, len(g.edges) + 1)])


# -- generators ---------------------------------------------------------------

FAMILIES = ("gnp", "multi-cycle", "theta", "clique")


def generate(family: str, seed: int, n: int = 8, k: int = 3, p: float = 0.5,
             c_max: int = 10, dup: int = 2, paths: int = 4, length: int = 2,
             width: int | None = None) -> Instance:
    """Deterministic random instance of a named family.

    gnp: Erdos-Renyi G(n, p). multi-cycle: n-cycle with each edge copied
    ``dup`` times. theta: two hubs joined by ``paths`` internally disjoint
    paths of ``length`` edges, each path edge copied ``width`` times
    (default ceil(k/2)). clique: complete graph. Costs are uniform integers
    in [1, c_max].
    """
    rng = random.Random(f"{family}:{seed}:{n}:{k}:{p}:{c_max}:{dup}:{paths}:{length}:{width}")
    cost = lambda: Fraction(rng.randint(1, c_max))  # noqa: E731
    edges: list[tuple[int, int, Fraction]] = []
    comments = [f"family={family} seed={seed}"]
    if family == "gnp":
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                if rng.random() < p:
                    edges.append((u, v, cost()))
    elif family == "multi-cycle":
        for u in range(1, n + 1):
            v = u % n + 1
            if n == 2 and u == 2:
                break
            for _ in range(dup):
                edges.append((u, v, cost()))
    elif family == "theta":
        w = width if width is not None else max(1, -(-k // 2))
        n = 2
        for _ in range(paths):
            prev = 1
            for step in range(length):
                if step == length - 1:
                    nxt = 2
                else:
                    n += 1
                    nxt = n
                for _ in range(w):
                    edges.append((prev, nxt, cost()))
                prev = nxt
    elif family == "clique":
        for u in range(1, n + 1):
            for v in range(u + 1, n + 1):
                edges.append((u, v, cost()))
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    inst = Instance(n, k, edges, comments)
    if n > 1:
        lam = global_min_cut(inst.graph())[0] if edges else 0
        if lam < k:
            inst.comments.append(f"warning: edge connectivity {lam} < k={k}, instance is infeasible")
    return inst


# -- solution files -------------------------------------------------------------

def emit_solution(g0: MultiGraph, algorithm: str, k: int, multiplicity: dict[int, int]) -> str:
    """One ``e <id> <u> <v> <cost> <mult>`` line per chosen edge, then totals."""
    out = [f"# solution algorithm={algorithm} k={k}"]
    total = Fraction(0)
    count = 0
    for e in sorted(multiplicity):
        mult = multiplicity[e]
        if mult <= 0:
            continue
        u, v, c = g0.edges[e]
        out.append(f"e {e} {u} {v} {fmt(c)} {mult}")
        total += c * mult
        count += mult
    out.append(f"edges {count}")
    out.append(f"cost {fmt(total)}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> tuple[dict[int, int], Fraction | None]:
    mult: dict[int, int] = {}
    stated = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "e":
            if len(tok) not in (5, 6):
                raise ParseError("malformed solution edge line", lineno)
            e = int(tok[1])
            if e in mult:
                raise ParseError(f"edge {e} listed twice", lineno)
            mult[e] = int(tok[5]) if len(tok) == 6 else 1
        elif tok[0] == "cost":
            stated = parse_rational(tok[1])
        elif tok[0] == "edges":
            continue
        else:
            raise ParseError(f"unknown solution record {tok[0]!r}", lineno)
    return mult, stated


def is_flagged_infeasible(inst: Instance) -> bool:
    return any(c.startswith("warning:") for c in inst.comments)


def suite(families, count: int, seed: int, kmin: int = 3, kmax: int = 10,
          nmin: int = 4, nmax: int = 16, mmax: int = 60, attempts: int = 50):
    """``count`` feasible instances, families taken round-robin.

    Each slot draws parameters from an RNG keyed by (seed, index) and redraws
    until the instance is feasible and within the size limits.
    """
    families = list(families)
    for fam in families:
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    out = []
    for idx in range(count):
        fam = families[idx % len(families)]
        rng = random.Random(f"suite:{seed}:{idx}")
        for attempt in range(attempts):
            k = rng.randint(kmin, kmax)
            sub = rng.randrange(1 << 30)
            half = -(-k // 2)
            if fam == "gnp":
                n = rng.randint(max(nmin, k + 1), max(nmin, k + 1, min(nmax, 11)))
                inst = generate(fam, sub, n=n, k=k, p=rng.uniform(0.6, 1.0), c_max=100)
            elif fam == "multi-cycle":
                dup = rng.randint(half, max(half, min(k, mmax // nmax)))
                n = rng.randint(nmin, max(nmin, min(nmax, mmax // dup)))
                inst = generate(fam, sub, n=n, k=k, dup=dup, c_max=100)
            elif fam == "theta":
                width = rng.randint(half, max(half, k - 1))
                length = rng.randint(2, 3)
                paths = rng.randint(2, max(2, min(6, mmax // (width * length))))
                inst = generate(fam, sub, k=k, paths=paths, length=length, width=width, c_max=100)
            else:
                n = rng.randint(max(nmin, k + 1), max(nmin, k + 1, min(nmax, 11)))
                inst = generate(fam, sub, n=n, k=k, c_max=100)
            if (not is_flagged_infeasible(inst) and nmin <= inst.n <= nmax
                    and inst.m <= mmax):
                out.append(inst)
                break
        else:
            raise ValueError(f"no feasible {fam} instance for slot {idx} after {attempts} draws")
    return out
