"""Compare the compiled and pure-Python kernel backends on representative workloads.

    python benchmarks/bench_kernels.py --repeat 3
"""

from __future__ import annotations

import argparse
import time
from typing import Callable

from backforth import kernels
from backforth.analysis import search_disjoint_pair
from backforth.construction import GraphParams, quotient_dv, truncation
from backforth.flows import global_bruteforce, global_edge_connectivity
from backforth.graphcore import S, T


def workloads() -> list[tuple[str, Callable[[], object]]]:
    d2_3 = truncation(GraphParams(2), 3)
    d2_4 = truncation(GraphParams(2), 4)
    d3_2 = truncation(GraphParams(3), 2)
    dv3 = quotient_dv(GraphParams(3))
    return [
        ("pair_search k=2 depth=3", lambda: search_disjoint_pair(d2_3, S(), T())),
        ("pair_search k=2 depth=4", lambda: search_disjoint_pair(d2_4, S(), T())),
        ("pair_search k=3 depth=2", lambda: search_disjoint_pair(d3_2, S(), T())),
        ("max_flow global k=2 depth=4", lambda: global_edge_connectivity(d2_4)),
        ("max_flow global k=3 depth=2", lambda: global_edge_connectivity(d3_2)),
        ("bruteforce global quotient k=3", lambda: global_bruteforce(dv3, bound=4)),
    ]


def best_of(fn: Callable[[], object], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv: list[str] | None = None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = kernels.available()
    previous = kernels.backend()
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    try:
        for name, fn in workloads():
            times = []
            for b in backends:
                kernels.use(b)
                fn()  # warm caches shared by both backends
                times.append(best_of(fn, args.repeat))
            line = f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
            if len(times) == 2:
                line += f"{times[1] / times[0]:11.1f}x"
            print(line)
    finally:
        kernels.use(previous)


if __name__ == "__main__":
    main()
