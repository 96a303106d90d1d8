"""Measure how the total worst-case path length scales with n.

For each scenario family and size, replays the run and prints the sum
of finite worst-case distances next to the n*log2(n) reference and the
fitted constant C with sum ~ C * n * log2(n).  The pendant-chain family
is the adversarial one: its sum actually grows like n*log n, while
random trees stay far below it.

Run:  python3 demos/scaling_bench.py [max_exponent]
        (default 10, i.e. sizes 64..1024; 13 reproduces the n=8192 runs
         and takes minutes)
"""

import math
import sys
import time

from sap_forest import INF, ScenarioAnalysis
from sap_forest.scenarios import generate

FAMILIES = ("pendant_chain", "star_burst", "random_tree", "degree2")


def main() -> None:
    max_exp = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    sizes = [2 ** k for k in range(6, max_exp + 1)]
    print(f"{'family':>14} {'n':>6} {'sum dist':>9} {'n*log2(n)':>10} "
          f"{'C':>6} {'deaths':>7} {'seconds':>8}")
    for family in FAMILIES:
        for n in sizes:
            inst = generate(family, n, seed=0)
            t0 = time.perf_counter()
            analysis = ScenarioAnalysis(inst.white_count, inst.arrivals,
                                        with_sap=False)
            dt = time.perf_counter() - t0
            total = sum(int(r.dist) for r in analysis.records
                        if r.dist != INF)
            deaths = sum(len(r.deaths) for r in analysis.records)
            ref = n * math.log2(n)
            print(f"{family:>14} {n:>6} {total:>9} {ref:>10.0f} "
                  f"{total / ref:>6.3f} {deaths:>7} {dt:>8.2f}")


if __name__ == "__main__":
    main()
