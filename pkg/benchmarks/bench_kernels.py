"""Compare the compiled and pure-Python domination kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Workloads: exact gamma over a corpus slice, exact gamma of Cartesian products
(the sweep's hot path) and gamma-set enumeration. Both backends must return the
same answers; timings are best-of-repeat wall clock.
"""

from __future__ import annotations

import argparse
import sys
import time

from vizbound import kernels
from vizbound.domination import domination_number
from vizbound.graph import cartesian_product, load_corpus, make_family


def workloads(quick: bool):
    corpus = load_corpus(7 if quick else 8)
    yield "gamma, connected n=7" if quick else "gamma, connected n=8", [
        ("min", g.closed_rows(), g.n) for g in corpus
    ]

    factors = load_corpus(5)[:: 3 if quick else 1]
    hs = [make_family("cycle", 5), make_family("path", 6)]
    prods = [cartesian_product(g, h).base for g in factors for h in hs]
    yield f"gamma of {len(prods)} products (order 25-30)", [("min", p.closed_rows(), p.n) for p in prods]

    pairs = [(("cycle", 6), ("cycle", 6)), (("path", 8), ("path", 8))]
    if not quick:
        pairs.append((("path", 6), ("cycle", 10)))
    grids = [cartesian_product(make_family(*a), make_family(*b)).base for a, b in pairs]
    label = ", ".join(f"{a[0][0].upper()}{a[1]}x{b[0][0].upper()}{b[1]}" for a, b in pairs)
    yield f"gamma of {label}", [("min", p.closed_rows(), p.n) for p in grids]

    enum = [(g, domination_number(g)) for g in load_corpus(7)]
    yield "gamma-set enumeration, n=7", [("enum", g.closed_rows(), g.n, k) for g, k in enum]


def run(job, prefer):
    if job[0] == "min":
        return kernels.min_dominating_set(job[1], job[2], prefer=prefer)
    return kernels.dominating_sets_of_size(job[1], job[2], job[3], prefer=prefer)


def best_of(jobs, prefer, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = [run(j, prefer) for j in jobs]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled kernel not built; only the Python backend is available", file=sys.stderr)
        return 1

    print(f"{'workload':<44}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, jobs in workloads(args.quick):
        tp, rp = best_of(jobs, "python", args.repeat)
        tc, rc = best_of(jobs, None, args.repeat)
        if [r if isinstance(r, list) else r[0] for r in rp] != [r if isinstance(r, list) else r[0] for r in rc]:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name:<44}{tp:>10.3f}{tc:>10.3f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
