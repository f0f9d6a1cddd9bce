"""Rotation systems: cyclic neighbor orders encoding a planar embedding."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Mapping, Sequence

from .graph import Edge, Graph, GraphError, canonical_edge, connected_components

Rotation = tuple[tuple[int, ...], ...]


class EmbeddingError(GraphError):
    pass


def check_rotation(g: Graph, rotation: Sequence[Sequence[int]]) -> Rotation:
    if len(rotation) != g.n:
        raise EmbeddingError(f"rotation system has {len(rotation)} entries, graph has {g.n}")
    rot = tuple(tuple(int(w) for w in r) for r in rotation)
    for v, r in enumerate(rot):
        if sorted(r) != list(g.adjacency[v]):
            raise EmbeddingError(f"rotation at vertex {v} does not list its neighbors")
    return rot


def faces(rotation: Sequence[Sequence[int]]) -> list[list[int]]:
    """Trace the faces of a rotation system.

    Each face is the cyclic vertex walk along its boundary; a dart ``u->v``
    is followed by ``v->w`` where ``w`` precedes ``u`` in the rotation at
    ``v``. Isolated vertices contribute no darts.
    """
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    seen: set[tuple[int, int]] = set()
    out = []
    for u, r in enumerate(rotation):
        for v in r:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                rv = rotation[b]
                w = rv[(pos[b][a] - 1) % len(rv)]
                a, b = b, w
            out.append(walk)
    return out


def euler_characteristic_ok(g: Graph, rotation: Sequence[Sequence[int]]) -> bool:
    """V - E + F == 1 + C, i.e. the rotation system is a planar embedding."""
    if g.n == 0:
        return True
    comps = len(connected_components(g))
    isolated = sum(1 for r in rotation if not r)
    # an isolated vertex is a component with no darts and so no traced face
    f = len(faces(rotation)) + isolated
    return g.n - g.m + f == 1 + comps


def triangulation_chords(rotation: Sequence[Sequence[int]]) -> list[Edge]:
    """Chords that fan-triangulate every face from its first boundary vertex.

    Chords that would be self-loops or repeat an existing edge (possible when
    a face boundary revisits a vertex) are dropped; the result is sorted and
    duplicate-free.
    """
    existing = {canonical_edge(u, v) for u, r in enumerate(rotation) for v in r}
    chords: set[Edge] = set()
    for walk in faces(rotation):
        if len(walk) <= 3:
            continue
        apex = walk[0]
        for w in walk[2:-1]:
            if w == apex:
                continue
            e = canonical_edge(apex, w)
            if e not in existing:
                chords.add(e)
    return sorted(chords)


def rotation_from_positions(g: Graph, pos: Mapping[int, tuple[float, float]] | Sequence) -> Rotation:
    """Counter-clockwise neighbor order from straight-line coordinates."""
    rot = []
    for v in range(g.n):
        x0, y0 = pos[v]
        rot.append(
            tuple(
                sorted(
                    g.adjacency[v],
                    key=lambda w: math.atan2(pos[w][1] - y0, pos[w][0] - x0),
                )
            )
        )
    return tuple(rot)


def rotation_from_faces(n: int, oriented_faces: Sequence[Sequence[int]]) -> Rotation:
    """Rotation system of a triangulation given consistently oriented faces."""
    succ: list[dict[int, int]] = [{} for _ in range(n)]
    for a, b, c in oriented_faces:
        succ[a][c] = b
        succ[b][a] = c
        succ[c][b] = a
    rot = []
    for v in range(n):
        if not succ[v]:
            rot.append(())
            continue
        start = min(succ[v])
        order = [start]
        w = succ[v][start]
        while w != start:
            order.append(w)
            if w not in succ[v] or len(order) > len(succ[v]):
                raise EmbeddingError(f"faces around vertex {v} do not close into one cycle")
            w = succ[v][w]
        if len(order) != len(succ[v]):
            raise EmbeddingError(f"faces around vertex {v} do not close into one cycle")
        rot.append(tuple(order))
    return tuple(rot)


def rotation_from_networkx(g: Graph) -> Rotation:
    """Find a planar embedding with networkx; raise if ``g`` is not planar."""
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    planar, emb = nx.check_planarity(h)
    if not planar:
        raise EmbeddingError("graph is not planar")
    return tuple(tuple(emb.neighbors_cw_order(v)) if g.adjacency[v] else () for v in range(g.n))


def parse_rotation(text: str, n: int) -> Rotation:
    lines = text.splitlines()
    if len(lines) < n:
        raise EmbeddingError(f"rotation file has {len(lines)} lines, expected {n}")
    return tuple(tuple(int(t) for t in line.split()) for line in lines[:n])


def read_rotation(path: str | Path, n: int) -> Rotation:
    return parse_rotation(Path(path).read_text(), n)


def format_rotation(rotation: Rotation) -> str:
    return "".join(" ".join(map(str, r)) + "\n" for r in rotation)
