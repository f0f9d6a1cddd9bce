import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import complete, path
from laysep.generators import grid, stacked_triangulation
from laysep.graph import Graph, Layering, bfs_layering, bfs_tree, connected_components
from laysep.layout import (
    ChannelId,
    EdgeClass,
    Kind,
    LinearLayout,
    ascending_merge,
    assign_separator_edge_queue,
    assign_separator_edge_stack,
    boustrophedon_merge,
    channel_bound,
    class_budget,
    construct_layout,
    construct_queue_layout,
    construct_stack_layout,
    construct_with_smallest_ell,
)
from laysep.separator import (
    ExactSeparatorProvider,
    PlanarSeparatorProvider,
    SeparatorCert,
    SeparatorError,
    make_cert,
)
from laysep.verify import check_bounds, check_layer_by_layer, check_validity

STAR = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def test_star_stack_layout():
    lay = bfs_layering(STAR, 0)
    layout = construct_stack_layout(STAR, lay, ExactSeparatorProvider(1), 1)
    # odd layer: components in descending order
    assert layout.order == (0, 3, 2, 1)
    assert set(layout.assignment.values()) == {ChannelId(0, EdgeClass.EVEN_INTER, 1)}
    assert layout.channel_count == 1
    assert set(layout.flat.values()) == {1}
    assert check_validity(STAR, layout) == []


def test_star_queue_layout_ascends():
    layout = construct_queue_layout(STAR, bfs_layering(STAR, 0), ExactSeparatorProvider(1), 1)
    assert layout.order == (0, 1, 2, 3)
    assert set(layout.assignment.values()) == {ChannelId(0, EdgeClass.INTER, 1)}


def _cert(per_layer, ell):
    S = tuple(sorted(v for vs in per_layer.values() for v in vs))
    return SeparatorCert(S, {i: tuple(vs) for i, vs in per_layer.items()}, ell, ())


def test_intra_layer_edge_uses_rank():
    cert = _cert({0: [7, 5]}, 2)
    lay = Layering((0,) * 8)
    assert assign_separator_edge_stack((3, 5), lay, cert, 4) == ChannelId(4, EdgeClass.INTRA, 2)
    assert assign_separator_edge_stack((5, 7), lay, cert, 0) == ChannelId(0, EdgeClass.INTRA, 1)


def test_inter_layer_edges():
    lay = Layering((0, 0, 1, 1, 2))
    cert = _cert({1: [2, 3]}, 3)
    # lower endpoint outside S, upper endpoint has rank 1 -> slot ell + 1
    assert assign_separator_edge_stack((0, 2), lay, cert, 0) == ChannelId(0, EdgeClass.EVEN_INTER, 4)
    # lower endpoint in S on an odd layer
    assert assign_separator_edge_stack((2, 4), lay, cert, 1) == ChannelId(1, EdgeClass.ODD_INTER, 1)
    assert assign_separator_edge_queue((3, 4), lay, _cert({1: [2, 3]}, 2), 0) == ChannelId(0, EdgeClass.INTER, 2)
    assert assign_separator_edge_queue((1, 3), lay, _cert({1: [2, 3]}, 2), 0) == ChannelId(0, EdgeClass.INTER, 4)


def test_assignment_rejects_edges_outside_separator():
    with pytest.raises(ValueError):
        assign_separator_edge_stack((0, 1), Layering((0, 1)), _cert({}, 1), 0)


def test_flatten_offsets():
    assert ChannelId(0, EdgeClass.INTRA, 1).flatten(Kind.STACK, 2) == 0
    assert ChannelId(0, EdgeClass.EVEN_INTER, 1).flatten(Kind.STACK, 2) == 2
    assert ChannelId(0, EdgeClass.ODD_INTER, 4).flatten(Kind.STACK, 2) == 9
    assert ChannelId(1, EdgeClass.INTRA, 1).flatten(Kind.STACK, 2) == 10
    assert ChannelId(2, EdgeClass.INTER, 4).flatten(Kind.QUEUE, 2) == 17
    with pytest.raises(ValueError):
        ChannelId(0, EdgeClass.INTRA, 3).flatten(Kind.STACK, 2)
    assert class_budget(Kind.STACK, EdgeClass.ODD_INTER, 3) == 6


def test_merges():
    rho = {0: [9], 1: [8]}
    children = [{0: [1], 1: [2, 3]}, {1: [4], 2: [5]}]
    assert boustrophedon_merge(rho, children) == [9, 1, 8, 4, 2, 3, 5]
    assert ascending_merge(rho, children) == [9, 1, 8, 2, 3, 4, 5]
    assert boustrophedon_merge({}, [{0: [1], 1: [2]}]) == [1, 2]
    assert boustrophedon_merge({0: [0]}, []) == [0]


def test_channel_bound():
    assert channel_bound(Kind.STACK, 2, 64) == 60
    assert channel_bound(Kind.QUEUE, 2, 63) == 30
    assert channel_bound(Kind.STACK, 3, 1) == 0


def test_invalid_provider_is_rejected():
    def lazy(sub, lay, origin):
        return make_cert(sub, lay, (), 1)

    with pytest.raises(SeparatorError, match="invalid separator"):
        construct_stack_layout(path(5), bfs_layering(path(5), 0), lazy, 1)


def test_smallest_ell_for_k5():
    k5 = complete(5)
    ell, layout = construct_with_smallest_ell(Kind.STACK, k5, Layering((0,) * 5), ExactSeparatorProvider)
    assert ell == 3
    assert check_validity(k5, layout) == []
    assert check_bounds(layout, ell, 5).ok


@pytest.mark.parametrize("kind", list(Kind))
def test_layout_is_deterministic(kind):
    g, rot = stacked_triangulation(40, 3)
    lay = bfs_layering(g, 0)
    runs = [
        construct_layout(kind, g, lay, PlanarSeparatorProvider(g, rot, lay, bfs_tree(g, 0)), 2).dumps()
        for _ in range(2)
    ]
    assert runs[0] == runs[1]


@pytest.mark.parametrize("kind", list(Kind))
def test_json_round_trip(kind):
    g, rot = grid(4, 5)
    lay = bfs_layering(g, 0)
    layout = construct_layout(kind, g, lay, PlanarSeparatorProvider(g, rot, lay, bfs_tree(g, 0)), 2)
    back = LinearLayout.from_json(layout.to_json())
    assert back.order == layout.order
    assert back.flat == layout.flat
    assert back.assignment == layout.assignment


@st.composite
def layered_graphs(draw):
    n = draw(st.integers(1, 10))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = list(itertools.combinations(range(n), 2))
    if pairs:
        edges |= set(draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)))
    g = Graph.from_edges(n, edges)
    return g, bfs_layering(g, draw(st.integers(0, n - 1)))


@given(layered_graphs(), st.sampled_from(list(Kind)))
@settings(max_examples=80, deadline=None)
def test_construction_invariants(case, kind):
    g, lay = case
    ell, layout = construct_with_smallest_ell(kind, g, lay, ExactSeparatorProvider)
    assert check_validity(g, layout) == []
    assert check_layer_by_layer(layout.order, lay) == []
    report = check_bounds(layout, ell, g.n)
    assert report.ok, report.violations


def test_queue_siblings_share_channels_without_nesting():
    g, rot = grid(6, 6)
    lay = bfs_layering(g, 0)
    provider = PlanarSeparatorProvider(g, rot, lay, bfs_tree(g, 0))
    layout = construct_queue_layout(g, lay, provider, 2)
    top = provider.separator()
    comp_of = {v: i for i, c in enumerate(connected_components(g, top)) for v in c}
    pos = layout.position
    by_channel = {}
    for e, cid in layout.assignment.items():
        if cid.depth >= 1 and cid.cls is EdgeClass.INTER:
            by_channel.setdefault(cid, []).append(e)
    shared = 0
    for cid, edges in by_channel.items():
        for e, f in itertools.combinations(edges, 2):
            if comp_of[e[0]] == comp_of[f[0]]:
                continue
            shared += 1
            assert not set(e) & set(f)
            a, b = sorted(pos[v] for v in e)
            c, d = sorted(pos[v] for v in f)
            assert not (a < c < d < b or c < a < b < d)
    assert shared > 0
