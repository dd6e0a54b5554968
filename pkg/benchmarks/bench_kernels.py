"""Compare the compiled and pure-Python kernels.

Kernel inputs are recorded while solving a few generated instances, then
replayed through every available backend. A second table times whole
solver runs with each backend selected at import.

    python benchmarks/bench_kernels.py --count 6 --repeat 3
"""
import argparse
import os
import subprocess
import sys
import time

from kecss import kernels
from kecss.bicriteria import run_algorithm1, run_algorithm2
from kecss.instances import suite


def record_calls(instances, limit):
    flows, pivots = [], []
    real_flow, real_pivot = kernels.max_flow, kernels.pivot

    def spy_flow(*args):
        if len(flows) < limit:
            flows.append(tuple(list(a) if isinstance(a, list) else a for a in args))
        return real_flow(*args)

    def spy_pivot(rows, r, c, d):
        if len(pivots) < limit:
            pivots.append(([list(row) for row in rows], r, c, d))
        return real_pivot(rows, r, c, d)

    kernels.max_flow, kernels.pivot = spy_flow, spy_pivot
    try:
        for inst in instances:
            run_algorithm1(inst.graph(), inst.k)
            run_algorithm2(inst.graph(), inst.k)
    finally:
        kernels.max_flow, kernels.pivot = real_flow, real_pivot
    return flows, pivots


def time_flows(mod, flows, repeat):
    best = []
    for _ in range(repeat):
        start = time.perf_counter()
        for args in flows:
            mod.max_flow(*args)
        best.append(time.perf_counter() - start)
    return min(best)


def time_pivots(mod, pivots, repeat):
    best = []
    for _ in range(repeat):
        # pivot works in place, so every replay gets fresh rows
        batch = [([list(row) for row in rows], r, c, d) for rows, r, c, d in pivots]
        start = time.perf_counter()
        for rows, r, c, d in batch:
            mod.pivot(rows, r, c, d)
        best.append(time.perf_counter() - start)
    return min(best)


def end_to_end(count, seed, pure):
    code = ("import time,sys\n"
            "from kecss import kernels\n"
            "from kecss.bicriteria import run_algorithm1, run_algorithm2\n"
            "from kecss.instances import suite\n"
            f"insts = suite(['gnp','multi-cycle','theta'], {count}, {seed})\n"
            "t = time.perf_counter()\n"
            "for i in insts:\n"
            "    run_algorithm1(i.graph(), i.k); run_algorithm2(i.graph(), i.k)\n"
            "print(kernels.BACKEND, time.perf_counter() - t)\n")
    env = dict(os.environ)
    if pure:
        env["KECSS_PURE_PYTHON"] = "1"
    else:
        env.pop("KECSS_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True).stdout.split()
    return out[0], float(out[1])


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=6, help="instances to record from")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--limit", type=int, default=5000, help="max recorded calls per kernel")
    args = p.parse_args(argv)

    instances = suite(["gnp", "multi-cycle", "theta"], args.count, args.seed)
    flows, pivots = record_calls(instances, args.limit)
    print(f"recorded {len(flows)} max_flow and {len(pivots)} pivot calls "
          f"from {len(instances)} instances")
    results = {}
    for name, mod in kernels.backends():
        results[name] = (time_flows(mod, flows, args.repeat), time_pivots(mod, pivots, args.repeat))
    print(f"{'backend':<8} {'max_flow s':>11} {'pivot s':>9}")
    for name, (tf, tp) in results.items():
        print(f"{name:<8} {tf:>11.4f} {tp:>9.4f}")
    if "cython" in results:
        tf0, tp0 = results["python"]
        tf1, tp1 = results["cython"]
        print(f"speedup  {tf0 / tf1:>10.1f}x {tp0 / tp1:>8.1f}x")

    print()
    rows = [end_to_end(args.count, args.seed, pure) for pure in (True, False)]
    for backend, secs in rows:
        print(f"end-to-end {backend:<8} {secs:.3f} s")
    if len({b for b, _ in rows}) == 2:
        print(f"end-to-end speedup {rows[0][1] / rows[1][1]:.2f}x")


if __name__ == "__main__":
    main()
