"""``kecss`` command line: generate, solve, verify, bench.

Exit codes: 0 valid certificate, 1 parse or file error, 2 infeasible
instance, 3 invariant violation or invalid certificate.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from fractions import Fraction

from .bicriteria import run_algorithm1, run_algorithm2
from .ecsm import replicate, solve_ecsm
from .instances import (FAMILIES, ParseError, emit_solution, fmt, generate,
                        parse_instance_text, parse_solution, suite)
from .state import InfeasibleInstance, InvariantViolation, SolverState
from .verify import ALGORITHMS, certify

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_INVARIANT = 0, 1, 2, 3

SOLVERS = {"bicriteria1": run_algorithm1, "bicriteria2": run_algorithm2}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _err(msg: str) -> None:
    print(f"kecss: {msg}", file=sys.stderr)


def run_solver(algorithm: str, g, k: int, trace=None):
    """(multiplicity, certificate) for one of the three algorithms."""
    if algorithm == "ecsm":
        sol, cert = solve_ecsm(g, k, trace=trace)
        return sol.multiplicity, cert
    sol, cert = SOLVERS[algorithm](g, k, trace=trace)
    return {e: 1 for e in sol.edges}, cert


def cmd_generate(args) -> int:
    try:
        inst = generate(args.family, args.seed, n=args.n, k=args.k, p=args.p, c_max=args.c_max,
                        dup=args.dup, paths=args.paths, length=args.length, width=args.width)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    _write(args.out, inst.emit())
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        inst = parse_instance_text(_read(args.input))
    except (OSError, ParseError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    g = inst.graph()
    trace = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    try:
        mult, cert = run_solver(args.algorithm, g, inst.k, trace)
    except InfeasibleInstance as exc:
        witness = "" if exc.witness is None else f" (cut {sorted(exc.witness)})"
        _err(f"instance infeasible: {exc}{witness}")
        return EXIT_INFEASIBLE
    except InvariantViolation as exc:
        _err(f"invariant violation: {exc}")
        return EXIT_INVARIANT
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    _write(args.out, emit_solution(g, args.algorithm, inst.k, mult))
    if args.trace:
        for e in cert.ledger.entries:
            print(f"ledger {e.name} {e.iteration} {'PASS' if e.passed else 'FAIL'} {e.detail}".rstrip(),
                  file=sys.stderr)
    if args.certificate:
        _write(args.certificate, cert.dumps())
    if not cert.valid:
        for e in cert.ledger.failures():
            _err(f"ledger failure: {e.name} at iteration {e.iteration} {e.detail}".rstrip())
        if not cert.cost_ok:
            _err(f"cost {fmt(cert.cost)} exceeds bound {fmt(cert.cost_bound)}")
        if not cert.connectivity_ok:
            _err(f"min cut {cert.mincut} below target {cert.connectivity_target}")
        return EXIT_INVARIANT
    return EXIT_OK


def initial_lp_value(algorithm: str, g, k: int) -> Fraction:
    """LP bound the algorithm's cost guarantee refers to, computed afresh."""
    from .cutting_plane import cutting_plane_extreme_point

    if len(g.nodes) < 2 or k == 0:
        return Fraction(0)
    if algorithm == "ecsm":
        g, _ = replicate(g, k + 4)
        k = k + 4
    if not g.edges:
        raise InfeasibleInstance("graph has no edges")
    return cutting_plane_extreme_point(SolverState.initial(g, k)).objective


def cmd_verify(args) -> int:
    try:
        inst = parse_instance_text(_read(args.input))
        mult, stated = parse_solution(_read(args.solution))
    except (OSError, ParseError, ValueError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    g = inst.graph()
    for e in mult:
        if e not in g.edges:
            _err(f"solution edge {e} does not exist in the instance")
            return EXIT_PARSE
        if mult[e] < 0 or (args.algorithm != "ecsm" and mult[e] != 1):
            _err(f"solution edge {e} has multiplicity {mult[e]}")
            return EXIT_PARSE
    try:
        lp0 = initial_lp_value(args.algorithm, g, inst.k)
    except InfeasibleInstance as exc:
        _err(f"instance infeasible: {exc}")
        return EXIT_INFEASIBLE
    cert = certify(sorted(mult), g, inst.k, args.algorithm, lp0, multiplicity=mult)
    if stated is not None and stated != cert.cost:
        _err(f"stated cost {fmt(stated)} differs from recomputed cost {fmt(cert.cost)}")
        return EXIT_PARSE
    if args.certificate:
        _write(args.certificate, cert.dumps())
    print(f"{cert.status} cost={fmt(cert.cost)} bound={fmt(cert.cost_bound)} "
          f"mincut={'inf' if cert.mincut is None else cert.mincut} target={cert.connectivity_target}")
    return EXIT_OK if cert.valid else EXIT_INVARIANT


BENCH_FIELDS = ["n", "m", "k", "algorithm", "cost", "lp0", "mincut",
                "cost_slack", "conn_slack", "iterations", "time"]


def bench_rows(families, count: int, seed: int, kmax: int):
    for inst in suite(families, count, seed, kmax=kmax):
        g = inst.graph()
        for name in ("bicriteria1", "bicriteria2"):
            start = time.perf_counter()
            sol, cert = SOLVERS[name](g, inst.k)
            elapsed = time.perf_counter() - start
            yield {
                "n": inst.n, "m": inst.m, "k": inst.k, "algorithm": name,
                "cost": fmt(sol.cost), "lp0": fmt(sol.lp0), "mincut": cert.mincut,
                "cost_slack": fmt(cert.cost_bound - sol.cost),
                "conn_slack": cert.mincut - cert.connectivity_target,
                "iterations": sol.iterations, "time": f"{elapsed:.4f}",
            }


def cmd_bench(args) -> int:
    families = [f for part in args.families for f in part.split(",") if f]
    if args.kmax < 3:
        _err("--kmax must be at least 3")
        return EXIT_PARSE
    unknown = [f for f in families if f not in FAMILIES]
    if unknown or not families:
        _err(f"unknown family {unknown[0]!r}" if unknown else "no families given")
        return EXIT_PARSE
    try:
        rows = bench_rows(families, args.count, args.seed, args.kmax)
        writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_PARSE
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors (exit 1); argparse's own 2 means infeasible here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kecss", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--k", type=int, default=3)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--c-max", type=int, default=10)
    g.add_argument("--dup", type=int, default=2)
    g.add_argument("--paths", type=int, default=4)
    g.add_argument("--length", type=int, default=2)
    g.add_argument("--width", type=int, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance and certify the result")
    s.add_argument("--algorithm", choices=sorted(ALGORITHMS), required=True)
    s.add_argument("--input", required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--certificate", default=None)
    s.add_argument("--trace", action="store_true", help="per-iteration log and ledger on stderr")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="re-certify a solution file independently")
    v.add_argument("--algorithm", choices=sorted(ALGORITHMS), required=True)
    v.add_argument("--input", required=True)
    v.add_argument("--solution", required=True)
    v.add_argument("--certificate", default=None)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="CSV of both algorithms on generated instances")
    b.add_argument("--families", nargs="+", default=["gnp", "multi-cycle", "theta"])
    b.add_argument("--count", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--kmax", type=int, default=10)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
