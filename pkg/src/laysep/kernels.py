"""Hot inner loops, each in a numba flavour and a numpy/Python flavour.

The public names at the bottom are bound to one flavour according to
:data:`laysep._accel.USE_NUMBA`. Both flavours stay importable as
``kernels.jit`` and ``kernels.ref`` so tests and benchmarks can compare them.

Graph arguments are CSR arrays ``(indptr, indices)`` of int64.
"""

from __future__ import annotations

from types import SimpleNamespace

import numpy as np

from ._accel import USE_NUMBA, njit

# --------------------------------------------------------------------------
# component sizes of G[alive]
# --------------------------------------------------------------------------


def _max_component_loop(indptr, indices, alive):
    n = alive.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    best = 0
    for s in range(n):
        if not alive[s] or seen[s]:
            continue
        seen[s] = True
        top = 0
        stack[0] = s
        size = 0
        while top >= 0:
            u = stack[top]
            top -= 1
            size += 1
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if alive[w] and not seen[w]:
                    seen[w] = True
                    top += 1
                    stack[top] = w
        if size > best:
            best = size
    return best


def _component_labels_numpy(indptr, indices, alive):
    """Min-label propagation; label of a dead vertex is -1."""
    n = alive.shape[0]
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    keep = alive[src] & alive[indices]
    src, dst = src[keep], indices[keep]
    labels = np.where(alive, np.arange(n, dtype=np.int64), n)
    while True:
        nxt = labels.copy()
        np.minimum.at(nxt, src, labels[dst])
        if np.array_equal(nxt, labels):
            break
        labels = nxt
    labels[~alive] = -1
    return labels


def _max_component_numpy(indptr, indices, alive):
    labels = _component_labels_numpy(indptr, indices, alive)
    labels = labels[labels >= 0]
    if labels.size == 0:
        return 0
    return int(np.bincount(labels).max())


# --------------------------------------------------------------------------
# two-path separator scan
# --------------------------------------------------------------------------


def _first_balanced_pair_loop(indptr, indices, in_sub, sub_size, parent, pairs):
    """Index of the first pair whose two root paths balance ``G[in_sub]``.

    ``pairs[k] = (a, b)``; the candidate separator is the set of vertices on
    the tree paths from ``a`` and ``b`` to the root, intersected with the
    subgraph. Returns -1 if no pair works.
    """
    n = in_sub.shape[0]
    alive = np.empty(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    for k in range(pairs.shape[0]):
        for v in range(n):
            alive[v] = in_sub[v]
        hit = 0
        for j in range(2):
            v = pairs[k, j]
            while True:
                if alive[v]:
                    alive[v] = False
                    hit += 1
                p = parent[v]
                if p == v:
                    break
                v = p
        if hit == 0:
            continue
        # components of the rest, with an early exit on an oversize one
        for v in range(n):
            seen[v] = False
        ok = True
        for s in range(n):
            if not alive[s] or seen[s]:
                continue
            seen[s] = True
            top = 0
            stack[0] = s
            size = 0
            while top >= 0:
                u = stack[top]
                top -= 1
                size += 1
                if 2 * size > sub_size:
                    ok = False
                    break
                for q in range(indptr[u], indptr[u + 1]):
                    w = indices[q]
                    if alive[w] and not seen[w]:
                        seen[w] = True
                        top += 1
                        stack[top] = w
            if not ok:
                break
        if ok:
            return k
    return -1


def _first_balanced_pair_numpy(indptr, indices, in_sub, sub_size, parent, pairs):
    for k in range(pairs.shape[0]):
        alive = in_sub.copy()
        for v in (int(pairs[k, 0]), int(pairs[k, 1])):
            while True:
                alive[v] = False
                if parent[v] == v:
                    break
                v = int(parent[v])
        if np.array_equal(alive, in_sub):
            continue
        if 2 * _max_component_numpy(indptr, indices, alive) <= sub_size:
            return k
    return -1


# --------------------------------------------------------------------------
# exact layered separator search
# --------------------------------------------------------------------------


def _exact_separator_loop(indptr, indices, layer, ell, size):
    """First ``size``-subset, lexicographically, that is a layered separator.

    A subset qualifies when it has at most ``ell`` vertices per layer and
    every component of the rest has at most half of the ``n`` vertices.
    Returns a boolean membership mask, or an all-False mask plus ``found``
    False.
    """
    n = layer.shape[0]
    nlayers = 0
    for v in range(n):
        if layer[v] + 1 > nlayers:
            nlayers = layer[v] + 1
    count = np.zeros(nlayers, dtype=np.int64)
    chosen = np.empty(max(size, 1), dtype=np.int64)
    inS = np.zeros(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    depth = 0
    nxt = 0
    while True:
        if depth == size:
            # evaluate
            for v in range(n):
                seen[v] = False
            ok = True
            for s in range(n):
                if inS[s] or seen[s]:
                    continue
                seen[s] = True
                top = 0
                stack[0] = s
                csize = 0
                while top >= 0:
                    u = stack[top]
                    top -= 1
                    csize += 1
                    if 2 * csize > n and n > 1:
                        ok = False
                        break
                    for q in range(indptr[u], indptr[u + 1]):
                        w = indices[q]
                        if not inS[w] and not seen[w]:
                            seen[w] = True
                            top += 1
                            stack[top] = w
                if not ok:
                    break
            if ok:
                return inS, True
            if size == 0:
                return inS, False
            # backtrack
            depth -= 1
            v = chosen[depth]
            inS[v] = False
            count[layer[v]] -= 1
            nxt = v + 1
            continue
        # extend with the smallest admissible vertex >= nxt
        placed = False
        v = nxt
        while v <= n - (size - depth):
            if count[layer[v]] < ell:
                chosen[depth] = v
                inS[v] = True
                count[layer[v]] += 1
                depth += 1
                nxt = v + 1
                placed = True
                break
            v += 1
        if not placed:
            if depth == 0:
                return inS, False
            depth -= 1
            v = chosen[depth]
            inS[v] = False
            count[layer[v]] -= 1
            nxt = v + 1


def _exact_separator_numpy(indptr, indices, layer, ell, size):
    from itertools import combinations

    n = layer.shape[0]
    for combo in combinations(range(n), size):
        if combo and np.bincount(layer[list(combo)]).max() > ell:
            continue
        alive = np.ones(n, dtype=np.bool_)
        alive[list(combo)] = False
        if n <= 1 or 2 * _max_component_numpy(indptr, indices, alive) <= n:
            return ~alive, True
    return np.zeros(n, dtype=np.bool_), False


# --------------------------------------------------------------------------
# pairwise crossing / nesting within channels
# --------------------------------------------------------------------------

CROSS = 0
NEST = 1


def _conflicts(a, b, c, d, mode):
    if mode == 0:
        return (a < c and c < b and b < d) or (c < a and a < d and d < b)
    return (a < c and d < b) or (c < a and b < d)


def _scan_conflicts(lo, hi, channel, mode, out, fill):
    m = lo.shape[0]
    found = 0
    start = 0
    while start < m:
        stop = start
        while stop < m and channel[stop] == channel[start]:
            stop += 1
        for i in range(start, stop):
            for j in range(i + 1, stop):
                if _conflicts(lo[i], hi[i], lo[j], hi[j], mode):
                    if fill:
                        out[found, 0] = i
                        out[found, 1] = j
                    found += 1
        start = stop
    return found


def _conflict_pairs_loop(lo, hi, channel, mode):
    """Pairs ``(i, j)``, ``i < j``, of same-channel edges that conflict.

    ``lo[i] < hi[i]`` are positions of edge ``i``'s endpoints. ``mode`` is
    CROSS (strict interleaving) or NEST (strict containment). Edges must be
    grouped by channel (``channel`` non-decreasing).
    """
    out = np.empty((0, 2), dtype=np.int64)
    found = _scan_conflicts(lo, hi, channel, mode, out, False)
    out = np.empty((found, 2), dtype=np.int64)
    _scan_conflicts(lo, hi, channel, mode, out, True)
    return out


def _conflict_pairs_numpy(lo, hi, channel, mode):
    chunks = []
    bounds = np.flatnonzero(np.diff(channel)) + 1
    starts = np.concatenate(([0], bounds)) if channel.size else np.zeros(0, dtype=np.int64)
    stops = np.concatenate((bounds, [channel.size])) if channel.size else starts
    for s, t in zip(starts, stops):
        a, b = lo[s:t, None], hi[s:t, None]
        c, d = lo[None, s:t], hi[None, s:t]
        if mode == CROSS:
            bad = ((a < c) & (c < b) & (b < d)) | ((c < a) & (a < d) & (d < b))
        else:
            bad = ((a < c) & (d < b)) | ((c < a) & (b < d))
        i, j = np.nonzero(np.triu(bad, 1))
        chunks.append(np.stack([i + s, j + s], axis=1))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks).astype(np.int64)


# --------------------------------------------------------------------------
# exact colouring of a small conflict graph given as bitmasks
# --------------------------------------------------------------------------


def _try_k_coloring_loop(adjmask, order, k, colors):
    """Backtracking k-colouring. Fills ``colors`` and returns True on success."""
    m = order.shape[0]
    if m == 0:
        return True
    maxc = np.full(m + 1, -1, dtype=np.int64)
    for v in range(m):
        colors[v] = -1
    i = 0
    while i >= 0:
        if i == m:
            return True
        v = order[i]
        c = colors[v] + 1
        limit = maxc[i] + 1
        if limit > k - 1:
            limit = k - 1
        placed = False
        while c <= limit:
            clash = False
            nb = adjmask[v]
            for u in range(m):
                if (nb >> u) & 1 and colors[u] == c:
                    clash = True
                    break
            if not clash:
                placed = True
                break
            c += 1
        if placed:
            colors[v] = c
            maxc[i + 1] = maxc[i] if maxc[i] > c else c
            i += 1
        else:
            colors[v] = -1
            i -= 1
    return False


def _try_k_coloring_py(adjmask, order, k, colors):
    m = len(order)
    if m == 0:
        return True
    adj = [int(x) for x in adjmask]
    col = [-1] * m

    def rec(i: int, used: int) -> bool:
        if i == m:
            return True
        v = int(order[i])
        for c in range(min(used + 1, k)):
            if all(col[u] != c for u in range(m) if (adj[v] >> u) & 1):
                col[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
                col[v] = -1
        return False

    ok = rec(0, 0)
    if ok:
        colors[:] = col
    return ok


_conflicts = njit(_conflicts)
_scan_conflicts = njit(_scan_conflicts)

jit = SimpleNamespace(
    max_component=njit(_max_component_loop),
    first_balanced_pair=njit(_first_balanced_pair_loop),
    exact_separator=njit(_exact_separator_loop),
    conflict_pairs=njit(_conflict_pairs_loop),
    try_k_coloring=njit(_try_k_coloring_loop),
)

ref = SimpleNamespace(
    max_component=_max_component_numpy,
    first_balanced_pair=_first_balanced_pair_numpy,
    exact_separator=_exact_separator_numpy,
    conflict_pairs=_conflict_pairs_numpy,
    try_k_coloring=_try_k_coloring_py,
)

active = jit if USE_NUMBA else ref

max_component = active.max_component
first_balanced_pair = active.first_balanced_pair
exact_separator = active.exact_separator
conflict_pairs = active.conflict_pairs
try_k_coloring = active.try_k_coloring
