"""Time the compiled coset kernel against the pure-Python one.

Run with ``python3 benchmarks/bench_coset.py [--repeat N]``.  The workload is
the order computation of the row-1 group (41040 cosets of the trivial
subgroup) plus the index of the subgroup generated by the first generator.
"""

import argparse
import statistics
import time

from sextic.fpgroup import _coset_py, coset_enumerate
from sextic.pipeline import paper_relations

try:
    from sextic.fpgroup import _coset as compiled
except ImportError:
    compiled = None


def timed(kernel, presentation, subgroup, repeat):
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        table = coset_enumerate(presentation, subgroup, kernel=kernel)
        samples.append(time.perf_counter() - start)
    return table.coset_count, statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    g = paper_relations(1)
    cases = [("order", []), ("index <a1>", [(1,)])]
    kernels = [("python", _coset_py)]
    if compiled is not None:
        kernels.insert(0, ("compiled", compiled))
    else:
        print("compiled kernel not built; timing the fallback only")

    print(f"{'workload':<12} {'kernel':<9} {'cosets':>7} {'median s':>9}")
    for label, sub in cases:
        times = {}
        for name, kernel in kernels:
            n, t = timed(kernel, g, sub, args.repeat)
            times[name] = t
            print(f"{label:<12} {name:<9} {n:>7} {t:>9.3f}")
        if len(times) == 2:
            print(f"{'':<12} speedup   {times['python'] / times['compiled']:>17.1f}x")


if __name__ == "__main__":
    main()
