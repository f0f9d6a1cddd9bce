"""Sweep graph families and tabulate channels used against the bound."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, Layering, bfs_layering, bfs_tree
from .generators import grid, grid_nn2, random_map_graph, stacked_triangulation
from .layout import Kind, channel_bound, construct_layout, construct_with_smallest_ell
from .oracle import MAX_EDGES, MAX_VERTICES, min_layout
from .separator import ExactSeparatorProvider, PlanarSeparatorProvider
from .verify import check_bounds, check_validity

CSV_HEADER = ("family", "size", "n", "m", "ell", "channels_used", "bound", "oracle_opt", "valid")
FAMILIES = ("grid", "grid_nn2", "triangulation", "mapgraph")
PLANAR_FAMILIES = {"grid", "triangulation"}


@dataclass(frozen=True)
class BenchRow:
    family: str
    size: int
    n: int
    m: int
    ell: int
    channels_used: int
    bound: int
    oracle_opt: int | None
    valid: bool

    def as_tuple(self) -> tuple:
        return (
            self.family, self.size, self.n, self.m, self.ell, self.channels_used,
            self.bound, "" if self.oracle_opt is None else self.oracle_opt, int(self.valid),
        )


def make_instance(family: str, size: int, seed: int = 0):
    """Return ``(graph, rotation or None)`` for a family and size parameter.

    ``grid``: size x size grid; ``grid_nn2``: the size x size x 2 grid;
    ``triangulation``: stacked triangulation on ``size`` vertices;
    ``mapgraph``: ``size`` nations grown on a 6 x 6 host.
    """
    if family == "grid":
        return grid(size, size)
    if family == "grid_nn2":
        return grid_nn2(size), None
    if family == "triangulation":
        return stacked_triangulation(size, seed)
    if family == "mapgraph":
        return random_map_graph(6, 6, size, seed), None
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def layout_instance(kind, g: Graph, layering: Layering, rotation, separator: str, exact_limit: int = 64):
    """Build a layout; returns ``(ell, layout)``."""
    if separator == "planar":
        if rotation is None:
            raise ValueError("planar separator needs an embedding")
        provider = PlanarSeparatorProvider(g, rotation, layering, bfs_tree(g, _root(layering)))
        return provider.ell, construct_layout(kind, g, layering, provider, provider.ell)
    return construct_with_smallest_ell(
        kind, g, layering, lambda ell: ExactSeparatorProvider(ell, exact_limit)
    )


def _root(layering: Layering) -> int:
    return layering.layer_of.index(0)


def run_bench(
    family: str,
    sizes: Iterable[int],
    kind: Kind | str = Kind.STACK,
    separator: str | None = None,
    seed: int = 0,
) -> list[BenchRow]:
    kind = Kind(kind)
    separator = separator or ("planar" if family in PLANAR_FAMILIES else "exact")
    rows = []
    for size in sizes:
        g, rotation = make_instance(family, size, seed)
        layering = bfs_layering(g, 0)
        ell, layout = layout_instance(kind, g, layering, rotation, separator)
        opt = None
        if g.n <= MAX_VERTICES and g.m <= MAX_EDGES:
            opt = min_layout(g, kind).number
        valid = not check_validity(g, layout) and check_bounds(layout, ell, g.n).ok
        rows.append(
            BenchRow(family, size, g.n, g.m, ell, layout.channel_count, channel_bound(kind, ell, g.n), opt, valid)
        )
    return rows


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_tuple())
    return buf.getvalue()
