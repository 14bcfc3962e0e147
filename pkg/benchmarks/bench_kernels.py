"""Time the compiled traversal kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--n-users N] [--sources K] [--repeat R]
"""
import argparse
import time

import numpy as np

from friendgraph.kernels import available_backends
from friendgraph.synth import generate_community, load_preset
from friendgraph.topo import build_graph


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-users", type=int, default=7172)
    ap.add_argument("--sources", type=int, default=200, help="BFS sources per timing")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    g = build_graph(generate_community(load_preset("losbanos2008", n_users=args.n_users, seed=args.seed)))
    rng = np.random.default_rng(args.seed)
    src = np.sort(rng.choice(g.n, size=min(args.sources, g.n), replace=False)).astype(np.int64)
    alive = (rng.random(g.n) < 0.9).astype(np.uint8)
    print(f"graph: {g.n} nodes, {g.m} edges; {len(src)} BFS sources; best of {args.repeat}")

    results = {}
    for name, mod in sorted(available_backends().items()):
        bfs = best_of(lambda: mod.bfs_distance_counts(g.indptr, g.indices, src), args.repeat)
        cc = best_of(lambda: mod.component_labels(g.indptr, g.indices, alive), args.repeat)
        results[name] = (bfs, cc)
        print(f"{name:>9}  bfs {bfs * 1e3:9.2f} ms   components {cc * 1e3:8.2f} ms")
    if len(results) == 2:
        (pb, pc), (cb, cc) = results["pure"], results["compiled"]
        print(f"  speedup  bfs {pb / cb:9.1f}x     components {pc / cc:8.1f}x")
    else:
        print("compiled backend unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
