"""Exact stack and queue numbers of tiny graphs by brute force.

For a fixed vertex order, the edges form a conflict graph (crossing pairs
for stacks, nesting pairs for queues); the fixed-order number is its
chromatic number.  The global number is the minimum over vertex orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .graph import Graph
from .layout import Kind, LinearLayout

MAX_EDGES = 20
MAX_VERTICES = 8


class OracleTooLarge(ValueError):
    pass


def conflict_masks(g: Graph, order: Sequence[int], kind: Kind | str) -> np.ndarray:
    """Bitmask adjacency of the conflict graph on ``g.edges``."""
    pos = np.empty(g.n, dtype=np.int64)
    pos[np.asarray(order, dtype=np.int64)] = np.arange(g.n)
    e = g.edge_array()
    if e.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    p = np.sort(pos[e], axis=1)
    a, b = p[:, 0:1], p[:, 1:2]
    c, d = p[:, 0][None, :], p[:, 1][None, :]
    if Kind(kind) is Kind.STACK:
        conflict = ((a < c) & (c < b) & (b < d)) | ((c < a) & (a < d) & (d < b))
    else:
        conflict = ((a < c) & (d < b)) | ((c < a) & (b < d))
    weights = np.left_shift(np.int64(1), np.arange(conflict.shape[0], dtype=np.int64))
    return (conflict * weights[None, :]).sum(axis=1).astype(np.int64)


def _greedy_clique(adj: Sequence[int]) -> int:
    m = len(adj)
    deg = sorted(range(m), key=lambda v: -bin(adj[v]).count("1"))
    best = 1 if m else 0
    for start in deg:
        clique = [start]
        for v in deg:
            if v != start and all((adj[u] >> v) & 1 for u in clique):
                clique.append(v)
        best = max(best, len(clique))
    return best


def _greedy_coloring(adj: Sequence[int], order: Sequence[int]) -> int:
    col = [-1] * len(adj)
    for v in order:
        taken = {col[u] for u in range(len(adj)) if (adj[v] >> u) & 1}
        c = 0
        while c in taken:
            c += 1
        col[v] = c
    return max(col, default=-1) + 1


def chromatic_number(adjmask: np.ndarray) -> tuple[int, np.ndarray]:
    """Exact colouring: clique lower bound, greedy upper bound, then
    backtracking for each k in between."""
    m = adjmask.shape[0]
    colors = np.zeros(m, dtype=np.int64)
    if m == 0:
        return 0, colors
    adj = [int(x) for x in adjmask]
    order = np.array(sorted(range(m), key=lambda v: (-bin(adj[v]).count("1"), v)), dtype=np.int64)
    lo = _greedy_clique(adj)
    hi = _greedy_coloring(adj, order.tolist())
    for k in range(lo, hi + 1):
        if kernels.try_k_coloring(adjmask, order, k, colors):
            return k, colors
    raise AssertionError("greedy colouring bounds the chromatic number")  # pragma: no cover


@dataclass(frozen=True)
class OracleResult:
    number: int
    layout: LinearLayout


def _fixed(g: Graph, order: Sequence[int], kind: Kind) -> OracleResult:
    if g.m > MAX_EDGES:
        raise OracleTooLarge(f"{g.m} edges > {MAX_EDGES} for exact colouring")
    k, colors = chromatic_number(conflict_masks(g, order, kind))
    flat = {e: int(c) for e, c in zip(g.edges, colors)}
    return OracleResult(k, LinearLayout(kind, tuple(order), flat))


def fixed_order_stack_number(g: Graph, order: Sequence[int]) -> int:
    return _fixed(g, order, Kind.STACK).number


def fixed_order_queue_number(g: Graph, order: Sequence[int]) -> int:
    return _fixed(g, order, Kind.QUEUE).number


def _orders(n: int, kind: Kind, reduced: bool) -> Iterator[tuple[int, ...]]:
    if not reduced:
        yield from permutations(range(n))
        return
    if Kind(kind) is Kind.STACK:
        # crossings depend only on the circular order up to reflection
        if n <= 2:
            yield tuple(range(n))
            return
        for rest in permutations(range(1, n)):
            if rest[0] < rest[-1]:
                yield (0,) + rest
        return
    if n <= 1:
        yield tuple(range(n))
        return
    for p in permutations(range(n)):
        if p[0] < p[-1]:
            yield p


def _global(g: Graph, kind: Kind, reduced: bool) -> OracleResult:
    if g.n > MAX_VERTICES:
        raise OracleTooLarge(f"{g.n} vertices > {MAX_VERTICES} for order enumeration")
    if g.m > MAX_EDGES:
        raise OracleTooLarge(f"{g.m} edges > {MAX_EDGES} for exact colouring")
    floor = 1 if g.m else 0
    best: OracleResult | None = None
    for order in _orders(g.n, kind, reduced):
        res = _fixed(g, order, kind)
        if best is None or res.number < best.number:
            best = res
            if best.number == floor:
                break
    assert best is not None
    return best


def min_stack_number(g: Graph, *, reduced: bool = True) -> int:
    return _global(g, Kind.STACK, reduced).number


def min_queue_number(g: Graph, *, reduced: bool = True) -> int:
    return _global(g, Kind.QUEUE, reduced).number


def min_layout(g: Graph, kind: Kind | str, *, reduced: bool = True) -> OracleResult:
    """Optimal number plus a witness layout (channels numbered from 0)."""
    return _global(g, Kind(kind), reduced)


__all__ = [
    "OracleResult",
    "OracleTooLarge",
    "chromatic_number",
    "conflict_masks",
    "fixed_order_queue_number",
    "fixed_order_stack_number",
    "min_layout",
    "min_queue_number",
    "min_stack_number",
]
