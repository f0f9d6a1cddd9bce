"""Simple undirected graphs, layerings and the plumbing around them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph, layering or vertex reference."""


class LayeringError(GraphError):
    def __init__(self, message: str, edges: Sequence[Edge] = ()):
        super().__init__(message)
        self.edges = tuple(edges)


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` is kept sorted with the smaller endpoint first, so two graphs
    with the same edge set compare equal.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            canon.append(canonical_edge(u, v))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise GraphError(f"duplicate edge {a}")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(e[0]), int(e[1])) for e in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays, int64, neighbors sorted ascending."""
        deg = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=self.n)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        indices = np.fromiter(
            (w for a in self.adjacency for w in a), dtype=np.int64, count=int(indptr[-1])
        )
        return indptr, indices

    def edge_array(self) -> np.ndarray:
        return np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)


@dataclass(frozen=True)
class Layering:
    """Vertex -> layer index. Layer indices may skip values in subgraphs."""

    layer_of: tuple[int, ...]

    def __post_init__(self) -> None:
        layers = tuple(int(x) for x in self.layer_of)
        if any(x < 0 for x in layers):
            raise GraphError("layer indices must be non-negative")
        object.__setattr__(self, "layer_of", layers)

    def __len__(self) -> int:
        return len(self.layer_of)

    def __getitem__(self, v: int) -> int:
        return self.layer_of[v]

    @property
    def num_layers(self) -> int:
        return max(self.layer_of) + 1 if self.layer_of else 0

    def layers(self) -> dict[int, list[int]]:
        """Non-empty layers as ``{index: ascending vertex list}``."""
        out: dict[int, list[int]] = {}
        for v, i in enumerate(self.layer_of):
            out.setdefault(i, []).append(v)
        return dict(sorted(out.items()))

    def restrict(self, vmap: "VertexSubsetMap") -> "Layering":
        return Layering(tuple(self.layer_of[p] for p in vmap.to_parent))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.layer_of, dtype=np.int64)


@dataclass(frozen=True)
class VertexSubsetMap:
    """Bijection between subgraph ids ``0..k-1`` and a sorted parent subset."""

    to_parent: tuple[int, ...]
    to_child: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "to_child", {p: i for i, p in enumerate(self.to_parent)})

    def parent(self, v: int) -> int:
        return self.to_parent[v]

    def child(self, p: int) -> int:
        return self.to_child[p]

    def compose(self, inner: "VertexSubsetMap") -> "VertexSubsetMap":
        """Map of ``inner`` (a subset of this subgraph) straight to our parent."""
        return VertexSubsetMap(tuple(self.to_parent[v] for v in inner.to_parent))


def bfs_distances(g: Graph, root: int) -> list[int]:
    dist = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_layering(g: Graph, root: int) -> Layering:
    """Layer every vertex by its BFS distance from ``root``."""
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range for n={g.n}")
    dist = bfs_distances(g, root)
    for v, d in enumerate(dist):
        if d < 0:
            raise GraphError(f"graph is disconnected: vertex {v} unreachable from root {root}")
    return Layering(tuple(dist))


def bfs_tree(g: Graph, root: int) -> tuple[int, ...]:
    """Parent map of the BFS tree explored in ascending-neighbor order.

    The root is its own parent. Unreached vertices get -1.
    """
    parent = [-1] * g.n
    parent[root] = root
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if parent[w] < 0:
                parent[w] = u
                queue.append(w)
    return tuple(parent)


def validate_layering(g: Graph, layering: Layering) -> list[Edge]:
    """Edges whose endpoint layers differ by two or more."""
    return [(u, v) for u, v in g.edges if abs(layering[u] - layering[v]) > 1]


def require_valid_layering(g: Graph, layering: Layering) -> None:
    if len(layering) != g.n:
        raise LayeringError(f"layering has {len(layering)} entries for {g.n} vertices")
    bad = validate_layering(g, layering)
    if bad:
        u, v = bad[0]
        raise LayeringError(
            f"edge ({u}, {v}) spans layers {layering[u]} and {layering[v]}", bad
        )


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, VertexSubsetMap]:
    keep = sorted(set(int(v) for v in vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    vmap = VertexSubsetMap(tuple(keep))
    idx = vmap.to_child
    edges = []
    for p in keep:
        i = idx[p]
        for q in g.adjacency[p]:
            j = idx.get(q)
            if j is not None and i < j:
                edges.append((i, j))
    return Graph(len(keep), tuple(edges)), vmap


def connected_components(g: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Components of ``g - removed``, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    for v in removed:
        seen[v] = True
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# --- text formats -----------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphError("graph file must start with 'n m'")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in graph file: {exc}") from None
    n, m = nums[0], nums[1]
    body = nums[2:]
    if len(body) != 2 * m:
        raise GraphError(f"expected {m} edges, found {len(body) / 2:g}")
    return Graph.from_edges(n, zip(body[0::2], body[1::2]))


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_layering(text: str, n: int | None = None) -> Layering:
    try:
        values = [int(t) for t in text.split()]
    except ValueError as exc:
        raise GraphError(f"non-integer token in layering file: {exc}") from None
    if n is not None and len(values) != n:
        raise LayeringError(f"layering lists {len(values)} vertices, graph has {n}")
    return Layering(tuple(values))


def format_layering(layering: Layering) -> str:
    return "".join(f"{i}\n" for i in layering.layer_of)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def read_layering(path: str | Path, n: int | None = None) -> Layering:
    return parse_layering(Path(path).read_text(), n)
