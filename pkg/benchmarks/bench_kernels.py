"""Time the numba kernels against their numpy/Python reference flavours.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each row times one kernel call on a fixed workload; numba times exclude
the first (compiling) call.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from laysep import kernels
from laysep.generators import grid, grid_nn2, stacked_triangulation
from laysep.graph import Graph, bfs_layering, bfs_tree
from laysep.layout import Kind
from laysep.oracle import conflict_masks


def workloads():
    g, _ = grid(64, 64)
    indptr, indices = g.csr
    alive = np.random.default_rng(0).random(g.n) < 0.8
    yield "max_component grid 64x64", "max_component", (indptr, indices, alive)

    t, _ = stacked_triangulation(400, 0)
    parent = np.asarray(bfs_tree(t, 0), dtype=np.int64)
    pairs = np.array([(u, v) for u in range(0, t.n, 7) for v in range(u, t.n, 11)], dtype=np.int64)
    in_sub = np.ones(t.n, dtype=np.bool_)
    yield "first_balanced_pair tri 400", "first_balanced_pair", (*t.csr, in_sub, t.n, parent, pairs)

    h = grid_nn2(3)
    hl = bfs_layering(h, 0)
    yield "exact_separator grid_nn2(3) ell=1 size=4", "exact_separator", (*h.csr, hl.as_array(), 1, 4)

    rng = np.random.default_rng(1)
    m = 4000
    a = rng.integers(0, 2000, m)
    b = rng.integers(0, 2000, m)
    lo, hi = np.minimum(a, b), np.maximum(a, b) + 1
    channel = np.sort(rng.integers(0, 8, m))
    yield "conflict_pairs 4000 edges / 8 channels", "conflict_pairs", (lo, hi, channel, kernels.CROSS)

    k = stacked_triangulation(8, 2)[0]
    dense = Graph.from_edges(8, list(k.edges)[:18])
    adj = conflict_masks(dense, [0, 4, 1, 6, 2, 7, 3, 5], Kind.STACK)
    order = np.arange(adj.shape[0], dtype=np.int64)
    colors = np.zeros(adj.shape[0], dtype=np.int64)
    yield "try_k_coloring 18-edge conflict graph k=2", "try_k_coloring", (adj, order, 2, colors)


def best_of(fn, args, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':45s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for label, name, call in workloads():
        jit_fn, ref_fn = getattr(kernels.jit, name), getattr(kernels.ref, name)
        jit_fn(*call)  # compile
        tj = best_of(jit_fn, call, args.repeat)
        tr = best_of(ref_fn, call, max(1, args.repeat // 2))
        print(f"{label:45s} {tj * 1e3:10.3f} {tr * 1e3:10.3f} {tr / tj:8.1f}x")


if __name__ == "__main__":
    main()
