"""Recursive stack and queue layouts from layered separators.

Both constructions split the graph with a separator ``S``, recurse on the
components of ``G - S`` and merge the component orders layer by layer, each
layer opening with its separator vertices ``rho_i``.  They differ in two
places only:

* stack layouts walk the components in ascending order on even layers and
  descending order on odd layers; queue layouts always ascend;
* stack layouts split inter-layer edges by the parity of the lower layer
  (two families of ``2 * ell`` stacks), queue layouts use one family of
  ``2 * ell`` queues.

Edges with an endpoint in ``S`` get a channel indexed by the recursion
depth, so sibling components share channels.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .graph import (
    Edge,
    Graph,
    Layering,
    canonical_edge,
    connected_components,
    induced_subgraph,
    require_valid_layering,
)
from .separator import (
    ExactSearchTooLarge,
    SeparatorCert,
    SeparatorError,
    SeparatorProvider,
    verify_separator,
)


class Kind(str, enum.Enum):
    STACK = "stack"
    QUEUE = "queue"


class EdgeClass(str, enum.Enum):
    INTRA = "INTRA"
    EVEN_INTER = "EVEN_INTER"
    ODD_INTER = "ODD_INTER"
    INTER = "INTER"


# class -> (offset in units of ell, width in units of ell)
_CLASS_SLOTS = {
    Kind.STACK: {EdgeClass.INTRA: (0, 1), EdgeClass.EVEN_INTER: (1, 2), EdgeClass.ODD_INTER: (3, 2)},
    Kind.QUEUE: {EdgeClass.INTRA: (0, 1), EdgeClass.INTER: (1, 2)},
}
CHANNELS_PER_DEPTH = {Kind.STACK: 5, Kind.QUEUE: 3}


@dataclass(frozen=True, order=True)
class ChannelId:
    depth: int
    cls: EdgeClass
    slot: int

    def flatten(self, kind: Kind, ell: int) -> int:
        offset, width = _CLASS_SLOTS[Kind(kind)][self.cls]
        if not 1 <= self.slot <= width * ell:
            raise ValueError(f"slot {self.slot} outside 1..{width * ell} for {self.cls.value}")
        return self.depth * CHANNELS_PER_DEPTH[Kind(kind)] * ell + offset * ell + self.slot - 1


def class_budget(kind: Kind, cls: EdgeClass, ell: int) -> int:
    return _CLASS_SLOTS[Kind(kind)][cls][1] * ell


@dataclass(frozen=True)
class LinearLayout:
    """A vertex order plus an edge -> channel map.

    ``assignment`` values are ``ChannelId`` for constructed layouts; a layout
    read back from JSON keeps the structured ids when present.  ``flat``
    holds the integer channel of every edge and is all the verifier reads.
    """

    kind: Kind
    order: tuple[int, ...]
    flat: dict[Edge, int]
    assignment: dict[Edge, ChannelId] = field(default_factory=dict)
    ell: int | None = None

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    @property
    def channel_count(self) -> int:
        return len(set(self.flat.values()))

    def to_json(self) -> dict:
        rows = []
        for (u, v), ch in sorted(self.flat.items()):
            row: dict = {"u": u, "v": v}
            cid = self.assignment.get((u, v))
            if cid is not None:
                row.update(depth=cid.depth, cls=cid.cls.value, slot=cid.slot)
            row["flat"] = ch
            rows.append(row)
        return {
            "kind": Kind(self.kind).value,
            "order": list(self.order),
            "assignment": rows,
            "channels": self.channel_count,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: Mapping) -> "LinearLayout":
        flat: dict[Edge, int] = {}
        assignment: dict[Edge, ChannelId] = {}
        for row in data["assignment"]:
            e = canonical_edge(int(row["u"]), int(row["v"]))
            flat[e] = int(row["flat"])
            if "cls" in row:
                assignment[e] = ChannelId(int(row["depth"]), EdgeClass(row["cls"]), int(row["slot"]))
        return cls(
            kind=Kind(data["kind"]),
            order=tuple(int(v) for v in data["order"]),
            flat=flat,
            assignment=assignment,
        )


def log2_floor(n: int) -> int:
    return n.bit_length() - 1 if n >= 1 else 0


def channel_bound(kind: Kind, ell: int, n: int) -> int:
    """Channels the construction may use: (5 or 3) * ell * floor(log2 n)."""
    if n <= 1:
        return 0
    return CHANNELS_PER_DEPTH[Kind(kind)] * ell * log2_floor(n)


# --------------------------------------------------------------------------
# merges
# --------------------------------------------------------------------------

LayerOrders = Mapping[int, Sequence[int]]


def boustrophedon_merge(rho: LayerOrders, child_orders: Sequence[LayerOrders]) -> list[int]:
    """``rho_i`` then the components' layer-``i`` orders, ascending on even
    ``i`` and descending on odd ``i``."""
    return _merge(rho, child_orders, alternate=True)


def ascending_merge(rho: LayerOrders, child_orders: Sequence[LayerOrders]) -> list[int]:
    return _merge(rho, child_orders, alternate=False)


def _merge(rho, child_orders, alternate: bool) -> list[int]:
    layers = set(rho)
    for child in child_orders:
        layers.update(child)
    out: list[int] = []
    for i in sorted(layers):
        out.extend(rho.get(i, ()))
        seq = reversed(child_orders) if alternate and i % 2 else child_orders
        for child in seq:
            out.extend(child.get(i, ()))
    return out


# --------------------------------------------------------------------------
# separator edges
# --------------------------------------------------------------------------


def _separator_edge_channel(
    kind: Kind, edge: Edge, layering: Layering, cert: SeparatorCert, depth: int
) -> ChannelId:
    u, v = edge
    members = cert.members
    if u not in members and v not in members:
        raise ValueError(f"edge {edge} has no endpoint in the separator")
    lu, lv = layering[u], layering[v]
    if lu == lv:
        # rho_i leads its layer, so the earlier endpoint is a separator vertex;
        # with both in S, the one earlier in rho_i
        if u in members and v in members:
            slot = min(cert.rank(u, lu), cert.rank(v, lv))
        else:
            s = u if u in members else v
            slot = cert.rank(s, lu)
        return ChannelId(depth, EdgeClass.INTRA, slot)
    if abs(lu - lv) != 1:
        raise ValueError(f"edge {edge} spans layers {lu} and {lv}")
    low, high = (u, v) if lu < lv else (v, u)
    i = layering[low]
    if low in members:
        slot = cert.rank(low, i)
    else:
        slot = cert.ell + cert.rank(high, i + 1)
    if Kind(kind) is Kind.QUEUE:
        cls = EdgeClass.INTER
    else:
        cls = EdgeClass.EVEN_INTER if i % 2 == 0 else EdgeClass.ODD_INTER
    return ChannelId(depth, cls, slot)


def assign_separator_edge_stack(edge: Edge, layering: Layering, cert: SeparatorCert, depth: int) -> ChannelId:
    return _separator_edge_channel(Kind.STACK, edge, layering, cert, depth)


def assign_separator_edge_queue(edge: Edge, layering: Layering, cert: SeparatorCert, depth: int) -> ChannelId:
    return _separator_edge_channel(Kind.QUEUE, edge, layering, cert, depth)


# --------------------------------------------------------------------------
# the recursion
# --------------------------------------------------------------------------


class _Builder:
    def __init__(self, kind: Kind, g: Graph, layering: Layering, find: SeparatorProvider, ell: int):
        self.kind = kind
        self.g = g
        self.layering = layering
        self.find = find
        self.ell = ell
        self.assignment: dict[Edge, ChannelId] = {}

    def build(self, vertices: Sequence[int], depth: int) -> dict[int, list[int]]:
        """Per-layer order of ``G[vertices]`` (root ids); fills assignment."""
        if len(vertices) <= 1:
            return {self.layering[v]: [v] for v in vertices}
        sub, vmap = induced_subgraph(self.g, vertices)
        sub_layering = self.layering.restrict(vmap)
        cert = self.find(sub, sub_layering, vmap.to_parent)
        problems = verify_separator(sub, sub_layering, cert)
        if problems or cert.ell > self.ell:
            detail = problems[0].detail if problems else f"certificate ell {cert.ell} > {self.ell}"
            raise SeparatorError(f"provider returned an invalid separator at depth {depth}: {detail}")
        # certificate ranks are relative to its own ell; channels use ours
        cert = SeparatorCert(cert.S, cert.per_layer, self.ell, cert.component_sizes)
        members = cert.members
        for a, b in sub.edges:
            if a in members or b in members:
                cid = _separator_edge_channel(self.kind, (a, b), sub_layering, cert, depth)
                self.assignment[canonical_edge(vmap.parent(a), vmap.parent(b))] = cid
        rho = {i: [vmap.parent(v) for v in vs] for i, vs in cert.per_layer.items()}
        children = [
            self.build([vmap.parent(v) for v in comp], depth + 1)
            for comp in connected_components(sub, cert.S)
        ]
        if self.kind is Kind.STACK:
            return _as_layers(boustrophedon_merge(rho, children), self.layering)
        return _as_layers(ascending_merge(rho, children), self.layering)


def _as_layers(order: Sequence[int], layering: Layering) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for v in order:
        out.setdefault(layering[v], []).append(v)
    return out


def _construct(kind: Kind, g: Graph, layering: Layering, find: SeparatorProvider, ell: int) -> LinearLayout:
    require_valid_layering(g, layering)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    builder = _Builder(kind, g, layering, find, ell)
    layers = builder.build(list(range(g.n)), 0)
    order = tuple(v for i in sorted(layers) for v in layers[i])
    flat = {e: cid.flatten(kind, ell) for e, cid in builder.assignment.items()}
    return LinearLayout(kind, order, flat, dict(builder.assignment), ell)


def construct_stack_layout(g: Graph, layering: Layering, find: SeparatorProvider, ell: int) -> LinearLayout:
    return _construct(Kind.STACK, g, layering, find, ell)


def construct_queue_layout(g: Graph, layering: Layering, find: SeparatorProvider, ell: int) -> LinearLayout:
    return _construct(Kind.QUEUE, g, layering, find, ell)


def construct_layout(kind: Kind | str, g: Graph, layering: Layering, find: SeparatorProvider, ell: int) -> LinearLayout:
    return _construct(Kind(kind), g, layering, find, ell)


def widest_layer(layering: Layering) -> int:
    counts: dict[int, int] = {}
    for i in layering.layer_of:
        counts[i] = counts.get(i, 0) + 1
    return max(counts.values(), default=0)


def construct_with_smallest_ell(kind, g: Graph, layering: Layering, make_provider, start: int = 0):
    """Build with ``make_provider(ell)`` for ``ell = start, start + 1, ...``.

    Returns ``(ell, layout)`` for the first ``ell`` at which every separator
    the recursion asks for exists.  ``ell`` never needs to exceed the widest
    layer, since a whole vertex set is always a separator.
    """
    top = max(widest_layer(layering), start)
    for ell in range(start, top + 1):
        try:
            return ell, construct_layout(kind, g, layering, make_provider(ell), ell)
        except ExactSearchTooLarge:
            raise
        except SeparatorError:
            continue
    raise AssertionError("unreachable: the widest layer always suffices")  # pragma: no cover


__all__ = [
    "ChannelId",
    "EdgeClass",
    "Kind",
    "LinearLayout",
    "ascending_merge",
    "assign_separator_edge_queue",
    "assign_separator_edge_stack",
    "boustrophedon_merge",
    "channel_bound",
    "construct_layout",
    "construct_queue_layout",
    "construct_stack_layout",
    "construct_with_smallest_ell",
    "log2_floor",
]
