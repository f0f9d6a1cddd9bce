"""Graph families at desk scale: grids, the n x n x 2 grid, stacked
triangulations and map graphs over grid hosts."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

import numpy as np

from .embedding import Rotation, rotation_from_faces, rotation_from_positions
from .graph import Graph, GraphError

Face = tuple[int, int]  # (column, row) of a unit face in a grid host


def grid(rows: int, cols: int) -> tuple[Graph, Rotation]:
    """``rows x cols`` grid; vertex ``r * cols + c`` sits at ``(c, r)``."""
    if rows < 0 or cols < 0:
        raise GraphError("grid dimensions must be non-negative")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    g = Graph.from_edges(rows * cols, edges)
    pos = [(v % cols, v // cols) for v in range(g.n)] if cols else []
    return g, rotation_from_positions(g, pos)


def grid_nn2(n: int) -> Graph:
    """Cartesian product of two n-paths and an edge; vertex ``z*n*n + r*n + c``."""
    if n < 1:
        raise GraphError("grid_nn2 needs n >= 1")
    layer, _ = grid(n, n)
    edges = list(layer.edges)
    edges += [(u + n * n, v + n * n) for u, v in layer.edges]
    edges += [(v, v + n * n) for v in range(n * n)]
    return Graph.from_edges(2 * n * n, edges)


def stacked_triangulation(n: int, seed: int = 0) -> tuple[Graph, Rotation]:
    """Maximal planar graph grown by splitting uniformly chosen faces."""
    if n < 3:
        raise GraphError("stacked triangulation needs n >= 3")
    rng = np.random.default_rng(seed)
    faces = [(0, 1, 2), (0, 2, 1)]
    edges = [(0, 1), (1, 2), (0, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(int(rng.integers(len(faces))))
        faces += [(a, b, v), (b, c, v), (c, a, v)]
        edges += [(a, v), (b, v), (c, v)]
    g = Graph.from_edges(n, edges)
    return g, rotation_from_faces(n, faces)


def _face_corners(f: Face) -> tuple[tuple[int, int], ...]:
    x, y = f
    return ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))


def map_graph_from_grid_host(w: int, h: int, nations: Iterable[Face], d_cap: int = 4) -> Graph:
    """Map graph of ``nations`` (unit faces of a ``w x h`` vertex grid).

    Vertex ``k`` of the result is the ``k``-th nation in sorted order; two
    nations are adjacent when they share at least one host vertex.
    """
    chosen = sorted(set((int(x), int(y)) for x, y in nations))
    for x, y in chosen:
        if not (0 <= x < w - 1 and 0 <= y < h - 1):
            raise GraphError(f"face ({x}, {y}) is not an internal face of a {w}x{h} host")
    touching: dict[tuple[int, int], list[int]] = {}
    for k, f in enumerate(chosen):
        for corner in _face_corners(f):
            touching.setdefault(corner, []).append(k)
    edges = set()
    for corner, ks in sorted(touching.items()):
        if len(ks) > d_cap:
            raise GraphError(f"host vertex {corner} touches {len(ks)} nations > d_cap={d_cap}")
        edges.update(combinations(ks, 2))
    return Graph.from_edges(len(chosen), sorted(edges))


def random_map_nations(w: int, h: int, count: int, seed: int = 0, d_cap: int = 4) -> list[Face]:
    """Grow a corner-connected set of ``count`` nations from a random face.

    Faces that would push a host vertex above ``d_cap`` nations are never
    chosen, so growth may stop early.
    """
    rng = np.random.default_rng(seed)
    all_faces = [(x, y) for y in range(h - 1) for x in range(w - 1)]
    if not all_faces or count <= 0:
        return []
    start = all_faces[int(rng.integers(len(all_faces)))]
    chosen = {start}
    load: dict[tuple[int, int], int] = {c: 1 for c in _face_corners(start)}

    def fits(f: Face) -> bool:
        return all(load.get(c, 0) < d_cap for c in _face_corners(f))

    while len(chosen) < count:
        frontier = sorted(
            {
                (x + dx, y + dy)
                for x, y in chosen
                for dx in (-1, 0, 1)
                for dy in (-1, 0, 1)
                if 0 <= x + dx < w - 1 and 0 <= y + dy < h - 1
            }
            - chosen
        )
        frontier = [f for f in frontier if fits(f)]
        if not frontier:
            break
        f = frontier[int(rng.integers(len(frontier)))]
        chosen.add(f)
        for c in _face_corners(f):
            load[c] = load.get(c, 0) + 1
    return sorted(chosen)


def random_map_graph(w: int, h: int, count: int, seed: int = 0, d_cap: int = 4) -> Graph:
    return map_graph_from_grid_host(w, h, random_map_nations(w, h, count, seed, d_cap), d_cap)
