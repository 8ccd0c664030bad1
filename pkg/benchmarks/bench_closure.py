"""Benchmark the compiled reachability kernel against the pure-Python
fallback on synthetic DAGs sized like real ontology hierarchies.

Run:  python3 benchmarks/bench_closure.py [n_nodes] [avg_parents]
"""

import random
import sys
import time

from ontosub import _reach_py
from ontosub.hierarchy import ClassHierarchy

try:
    from ontosub import _reach as _reach_c
except ImportError:
    _reach_c = None


def build_hierarchy(n: int, avg_parents: float, seed: int = 7) -> ClassHierarchy:
    rng = random.Random(seed)
    names = [f"http://bench/c{i:06d}" for i in range(n)]
    edges = []
    for child in range(1, n):
        k = min(child, max(1, int(rng.expovariate(1.0 / avg_parents)) or 1))
        for parent in rng.sample(range(child), k=min(child, k)):
            edges.append((names[child], names[parent]))
    return ClassHierarchy(edges, classes=names)


def time_kernel(kernel, hier: ClassHierarchy, queries: list[int]) -> float:
    indptr, indices = hier._up_indptr, hier._up_indices
    start = time.perf_counter()
    total = 0
    for q in queries:
        reached, _ = kernel.reach(indptr, indices, q)
        total += len(reached)
    elapsed = time.perf_counter() - start
    print(f"    reached {total} ancestors over {len(queries)} queries")
    return elapsed


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 50_000
    avg_parents = float(sys.argv[2]) if len(sys.argv) > 2 else 1.5
    print(f"building hierarchy: {n} nodes, ~{avg_parents} parents per class")
    hier = build_hierarchy(n, avg_parents)
    rng = random.Random(13)
    queries = [rng.randrange(len(hier)) for _ in range(min(n, 20_000))]

    print("pure-Python kernel:")
    t_py = time_kernel(_reach_py, hier, queries)
    print(f"    {t_py:.3f}s ({len(queries) / t_py:.0f} queries/s)")

    if _reach_c is None:
        print("compiled kernel not built (pip install -e . with Cython available)")
        return
    print("compiled kernel:")
    t_c = time_kernel(_reach_c, hier, queries)
    print(f"    {t_c:.3f}s ({len(queries) / t_c:.0f} queries/s)")
    print(f"speedup: {t_py / t_c:.1f}x")


if __name__ == "__main__":
    main()
