"""Layered separators: certificates, verification and finders.

A separator for a graph with a layering is a vertex set ``S`` holding at
most ``ell`` vertices of every layer such that every component of ``G - S``
has at most half of the vertices of ``G``.  Balance is tested as
``2 * size <= n`` in integers.  A graph with at most one vertex needs no
separator, so the balance test is waived for ``n <= 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .embedding import (
    EmbeddingError,
    check_rotation,
    euler_characteristic_ok,
    triangulation_chords,
)
from .graph import (
    Graph,
    GraphError,
    Layering,
    connected_components,
    is_connected,
    require_valid_layering,
)

EXACT_MAX_VERTICES = 20


class SeparatorError(RuntimeError):
    """A provider could not produce a separator meeting its contract."""


class ExactSearchTooLarge(SeparatorError):
    def __init__(self, n: int, limit: int):
        super().__init__(f"instance too large for exact search: {n} vertices > {limit}")
        self.n = n
        self.limit = limit


@dataclass(frozen=True)
class SeparatorCert:
    S: tuple[int, ...]
    per_layer: dict[int, tuple[int, ...]]
    ell: int
    component_sizes: tuple[int, ...]

    @property
    def members(self) -> frozenset[int]:
        return frozenset(self.S)

    def rank(self, v: int, layer: int) -> int:
        """1-based position of ``v`` within its layer's separator list."""
        return self.per_layer[layer].index(v) + 1

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "S": list(self.S),
            "per_layer": {str(i): list(vs) for i, vs in sorted(self.per_layer.items())},
            "component_sizes": list(self.component_sizes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SeparatorCert":
        return cls(
            S=tuple(sorted(int(v) for v in data["S"])),
            per_layer={int(k): tuple(int(v) for v in vs) for k, vs in data["per_layer"].items()},
            ell=int(data["ell"]),
            component_sizes=tuple(int(c) for c in data["component_sizes"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def make_cert(g: Graph, layering: Layering, S, ell: int) -> SeparatorCert:
    """Build a certificate for ``S``; each layer list is in ascending id order."""
    members = tuple(sorted(set(int(v) for v in S)))
    per_layer: dict[int, list[int]] = {}
    for v in members:
        per_layer.setdefault(layering[v], []).append(v)
    sizes = tuple(len(c) for c in connected_components(g, members))
    return SeparatorCert(
        S=members,
        per_layer={i: tuple(vs) for i, vs in sorted(per_layer.items())},
        ell=ell,
        component_sizes=sizes,
    )


class SeparatorViolation(NamedTuple):
    kind: str  # "layer" | "balance" | "membership" | "certificate"
    detail: str


def verify_separator(g: Graph, layering: Layering, cert: SeparatorCert) -> list[SeparatorViolation]:
    out = []
    listed = [v for vs in cert.per_layer.values() for v in vs]
    if sorted(listed) != sorted(cert.S) or len(set(listed)) != len(listed):
        out.append(SeparatorViolation("membership", "per-layer lists do not partition S"))
    for v in cert.S:
        if not 0 <= v < g.n:
            out.append(SeparatorViolation("membership", f"vertex {v} not in graph"))
            return out
    for i, vs in cert.per_layer.items():
        if any(layering[v] != i for v in vs):
            out.append(SeparatorViolation("membership", f"layer list {i} holds a vertex of another layer"))
        if len(vs) > cert.ell:
            out.append(SeparatorViolation("layer", f"layer {i} has {len(vs)} > {cert.ell} separator vertices"))
    comps = connected_components(g, cert.S)
    if g.n > 1:
        for comp in comps:
            if 2 * len(comp) > g.n:
                out.append(
                    SeparatorViolation(
                        "balance",
                        f"component containing {comp[0]} has {len(comp)} of {g.n} vertices",
                    )
                )
    if tuple(len(c) for c in comps) != tuple(cert.component_sizes):
        out.append(SeparatorViolation("certificate", "component_sizes do not match G - S"))
    return out


# --------------------------------------------------------------------------
# exact search
# --------------------------------------------------------------------------


def find_layered_separator_exact(
    g: Graph, layering: Layering, ell: int, *, max_vertices: int = EXACT_MAX_VERTICES
) -> SeparatorCert | None:
    """Smallest separator with at most ``ell`` vertices per layer, or None.

    Candidates are tried by increasing size, lexicographically within a size.
    """
    if g.n > max_vertices:
        raise ExactSearchTooLarge(g.n, max_vertices)
    if g.n <= 1:
        return make_cert(g, layering, (), ell)
    indptr, indices = g.csr
    layer = layering.as_array()
    # per-layer cap bounds the size of any candidate
    sizes = np.bincount(layer)
    largest = int(np.minimum(sizes, ell).sum())
    for size in range(largest + 1):
        mask, found = kernels.exact_separator(indptr, indices, layer, ell, size)
        if found:
            return make_cert(g, layering, np.flatnonzero(mask).tolist(), ell)
    return None


def find_min_ell_separator(
    g: Graph, layering: Layering, *, max_vertices: int = EXACT_MAX_VERTICES
) -> tuple[int, SeparatorCert]:
    if g.n > max_vertices:
        raise ExactSearchTooLarge(g.n, max_vertices)
    if g.n == 0:
        return 0, make_cert(g, layering, (), 0)
    widest = max(np.bincount(layering.as_array()))
    for ell in range(widest + 1):
        cert = find_layered_separator_exact(g, layering, ell, max_vertices=max_vertices)
        if cert is not None:
            return ell, cert
    raise AssertionError("the full vertex set is always a separator")  # pragma: no cover


# --------------------------------------------------------------------------
# planar graphs: two BFS-tree paths
# --------------------------------------------------------------------------


def check_bfs_tree(g: Graph, layering: Layering, parent: Sequence[int]) -> None:
    if len(parent) != g.n:
        raise GraphError("parent map does not cover the graph")
    roots = [v for v in range(g.n) if parent[v] == v]
    if len(roots) != 1:
        raise GraphError(f"BFS tree must have exactly one root, found {len(roots)}")
    if layering[roots[0]] != 0:
        raise GraphError("BFS root must lie in layer 0")
    for v, p in enumerate(parent):
        if p == v:
            continue
        if not g.has_edge(v, p) or layering[p] != layering[v] - 1:
            raise GraphError(f"parent of {v} is not a neighbor one layer up")


def random_bfs_tree(g: Graph, layering: Layering, seed: int) -> tuple[int, ...]:
    """A BFS tree of ``layering`` whose parents are drawn uniformly at random
    among each vertex's neighbors one layer up."""
    rng = np.random.default_rng(seed)
    parent = []
    for v in range(g.n):
        ups = [w for w in g.adjacency[v] if layering[w] == layering[v] - 1]
        parent.append(v if not ups else ups[int(rng.integers(len(ups)))])
    return tuple(parent)


class PlanarSeparatorProvider:
    """Two-path separators for a connected plane graph and its subgraphs.

    Every separator is the union of two root paths of a BFS tree of the
    whole graph, so it meets each BFS layer at most twice.  For an induced
    subgraph only the path vertices inside the subgraph are kept, and
    balance is checked against the subgraph's own components.

    Search order, per tree: fundamental cycles of the non-tree edges of a
    fan-triangulation of the embedding (canonical edge order), then every
    pair of subgraph vertices.  The given tree is tried first; if it yields
    nothing, up to ``extra_trees`` seeded random BFS trees of the same
    layering follow.
    """

    ell = 2

    def __init__(
        self, g: Graph, rotation, layering: Layering, parent: Sequence[int], extra_trees: int = 64
    ):
        if not is_connected(g):
            raise GraphError("planar separator needs a connected graph")
        rot = check_rotation(g, rotation)
        if not euler_characteristic_ok(g, rot):
            raise EmbeddingError("rotation system fails the Euler check; not a planar embedding")
        require_valid_layering(g, layering)
        check_bfs_tree(g, layering, parent)
        self.graph = g
        self.layering = layering
        self.extra_trees = extra_trees
        self._links = sorted(set(g.edges) | set(triangulation_chords(rot)))
        self._trees: list[tuple[np.ndarray, np.ndarray]] = []
        self._add_tree(parent)
        self.stats = {"cycle": 0, "pair": 0, "retree": 0}

    def _add_tree(self, parent: Sequence[int]) -> None:
        tree = {(min(v, p), max(v, p)) for v, p in enumerate(parent) if p != v}
        pairs = [e for e in self._links if e not in tree]
        self._trees.append(
            (np.asarray(parent, dtype=np.int64), np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
        )

    def _tree(self, t: int) -> tuple[np.ndarray, np.ndarray]:
        while len(self._trees) <= t:
            self._add_tree(random_bfs_tree(self.graph, self.layering, seed=len(self._trees)))
        return self._trees[t]

    def separator(self, subset: Sequence[int] | None = None) -> tuple[int, ...]:
        """Separator of ``G[subset]`` (default: all of G), in parent ids."""
        g = self.graph
        indptr, indices = g.csr
        if subset is None:
            in_sub = np.ones(g.n, dtype=np.bool_)
        else:
            in_sub = np.zeros(g.n, dtype=np.bool_)
            in_sub[np.asarray(list(subset), dtype=np.int64)] = True
        size = int(in_sub.sum())
        if size <= 1:
            return ()
        verts = np.flatnonzero(in_sub)
        a, b = np.triu_indices(verts.size)
        all_pairs = np.stack([verts[a], verts[b]], axis=1)
        for t in range(1 + self.extra_trees):
            parent, cycles = self._tree(t)
            for stage, pairs in (("cycle", cycles), ("pair", all_pairs)):
                k = kernels.first_balanced_pair(indptr, indices, in_sub, size, parent, pairs)
                if k >= 0:
                    self.stats["retree" if t else stage] += 1
                    return self._collect(pairs[k], parent, in_sub)
        raise SeparatorError(
            f"no balanced two-path separator for a {size}-vertex subgraph "
            f"within {1 + self.extra_trees} BFS trees"
        )

    @staticmethod
    def _collect(pair, parent, in_sub) -> tuple[int, ...]:
        S = set()
        for v in pair:
            v = int(v)
            while True:
                if in_sub[v]:
                    S.add(v)
                if parent[v] == v:
                    break
                v = int(parent[v])
        return tuple(sorted(S))

    def __call__(self, sub: Graph, layering: Layering, origin: Sequence[int]) -> SeparatorCert:
        S = self.separator(origin)
        local = {p: i for i, p in enumerate(origin)}
        return make_cert(sub, layering, [local[p] for p in S], self.ell)


def planar_two_path_separator(g: Graph, rotation, layering: Layering, parent: Sequence[int]) -> SeparatorCert:
    provider = PlanarSeparatorProvider(g, rotation, layering, parent)
    return make_cert(g, layering, provider.separator(), provider.ell)


# --------------------------------------------------------------------------
# providers for the recursive constructions
# --------------------------------------------------------------------------

# (subgraph, its restricted layering, subgraph id -> root id) -> certificate
SeparatorProvider = Callable[[Graph, Layering, Sequence[int]], SeparatorCert]


class ExactSeparatorProvider:
    def __init__(self, ell: int, max_vertices: int = EXACT_MAX_VERTICES):
        self.ell = ell
        self.max_vertices = max_vertices

    def __call__(self, sub: Graph, layering: Layering, origin: Sequence[int]) -> SeparatorCert:
        cert = find_layered_separator_exact(sub, layering, self.ell, max_vertices=self.max_vertices)
        if cert is None:
            raise SeparatorError(
                f"no layered {self.ell}-separator for a {sub.n}-vertex subgraph"
            )
        return cert
