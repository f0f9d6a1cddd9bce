"""Independent checks for linear layouts.

Validity checks look only at the vertex order and the integer channel of
each edge; the structured channel ids are read by :func:`check_bounds`
alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import Edge, Graph, Layering
from .layout import EdgeClass, Kind, LinearLayout, _CLASS_SLOTS, channel_bound


@dataclass(frozen=True)
class Violation:
    kind: str  # crossing | nesting | layer-order | bound | coverage
    witness: tuple
    channel: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        def plain(x):
            return [plain(y) for y in x] if isinstance(x, (tuple, list)) else x

        return {"kind": self.kind, "witness": plain(self.witness), "channel": self.channel, "detail": self.detail}


def _coverage(g: Graph, layout: LinearLayout) -> list[Violation]:
    out = []
    if sorted(layout.order) != list(range(g.n)):
        out.append(Violation("coverage", (), detail="order is not a permutation of the vertices"))
    for e in g.edges:
        if e not in layout.flat:
            out.append(Violation("coverage", (e,), detail=f"edge {e} has no channel"))
    for e in layout.flat:
        if not g.has_edge(*e):
            out.append(Violation("coverage", (e,), detail=f"assigned edge {e} is not in the graph"))
    return out


def _pairwise(g: Graph, layout: LinearLayout, mode: int, label: str) -> list[Violation]:
    out = _coverage(g, layout)
    if out and out[0].witness == ():
        return out
    pos = layout.position
    edges = sorted((ch, e) for e, ch in layout.flat.items() if g.has_edge(*e))
    if not edges:
        return out
    ends = np.array([sorted((pos[u], pos[v])) for _, (u, v) in edges], dtype=np.int64)
    channel = np.array([ch for ch, _ in edges], dtype=np.int64)
    for i, j in kernels.conflict_pairs(ends[:, 0], ends[:, 1], channel, mode):
        out.append(Violation(label, (edges[i][1], edges[j][1]), int(channel[i])))
    return out


def check_stack_validity(g: Graph, layout: LinearLayout) -> list[Violation]:
    """One ``crossing`` per pair of same-channel edges with interleaved ends."""
    return _pairwise(g, layout, kernels.CROSS, "crossing")


def check_queue_validity(g: Graph, layout: LinearLayout) -> list[Violation]:
    """One ``nesting`` per pair of same-channel edges, one strictly inside the other."""
    return _pairwise(g, layout, kernels.NEST, "nesting")


def check_validity(g: Graph, layout: LinearLayout) -> list[Violation]:
    if Kind(layout.kind) is Kind.STACK:
        return check_stack_validity(g, layout)
    return check_queue_validity(g, layout)


def check_layer_by_layer(order, layering: Layering) -> list[Violation]:
    """Pairs ``(u, v)`` with ``layer(u) < layer(v)`` where ``v`` comes first."""
    layers = np.array([layering[v] for v in order], dtype=np.int64)
    if layers.size < 2 or np.all(layers[:-1] <= layers[1:]):
        return []
    later, earlier = np.nonzero(np.tril(layers[:, None] < layers[None, :], -1))
    return [
        Violation("layer-order", (int(order[a]), int(order[b])), detail="lower layer placed after higher")
        for a, b in sorted(zip(later.tolist(), earlier.tolist()), key=lambda p: (p[1], p[0]))
    ]


@dataclass
class BoundReport:
    ok: bool
    channels: int
    bound: int
    violations: list[Violation] = field(default_factory=list)


def check_bounds(layout: LinearLayout, ell: int, n: int) -> BoundReport:
    """Total channels against (5 or 3) * ell * floor(log2 n), plus the
    per-depth slot budgets ell / 2 ell / 2 ell (stack) or ell / 2 ell (queue)."""
    kind = Kind(layout.kind)
    bound = channel_bound(kind, ell, n)
    used = layout.channel_count
    out = []
    if used > bound:
        out.append(Violation("bound", (used, bound), detail=f"{used} channels > bound {bound}"))
    slots: dict[tuple[int, EdgeClass], set[int]] = {}
    for cid in layout.assignment.values():
        slots.setdefault((cid.depth, cid.cls), set()).add(cid.slot)
    allowed = _CLASS_SLOTS[kind]
    for (depth, cls), used_slots in sorted(slots.items()):
        if cls not in allowed:
            out.append(Violation("bound", (depth, cls.value), detail=f"class {cls.value} not used by {kind.value} layouts"))
            continue
        budget = allowed[cls][1] * ell
        if len(used_slots) > budget or max(used_slots) > budget:
            out.append(
                Violation(
                    "bound",
                    (depth, cls.value, max(used_slots)),
                    detail=f"depth {depth} {cls.value} uses slots up to {max(used_slots)} > budget {budget}",
                )
            )
    return BoundReport(not out, used, bound, out)
