"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, repeated in the terminal summary.
"""

from __future__ import annotations

import itertools
import os
import subprocess
import sys
import time

import networkx as nx
import numpy as np
import pytest

from corpus import acceptance_corpus, atlas_connected, complete, cycle
from laysep.bench import run_bench
from laysep.graph import Graph, bfs_layering, bfs_tree
from laysep.layout import Kind, channel_bound, construct_layout, construct_with_smallest_ell, log2_floor
from laysep.oracle import fixed_order_stack_number, min_queue_number, min_stack_number
from laysep.separator import (
    ExactSeparatorProvider,
    PlanarSeparatorProvider,
    find_layered_separator_exact,
    make_cert,
    verify_separator,
)
from laysep.verify import check_bounds, check_layer_by_layer, check_validity

EXACT_LIMIT = 40  # grid_nn2(4) has 32 vertices
PLANAR_FAMILIES = ("grid-", "triangulation-")


def build(inst, kind: Kind, separator: str):
    g, lay = inst.graph, inst.layering
    if separator == "planar":
        provider = PlanarSeparatorProvider(g, inst.rotation, lay, bfs_tree(g, 0))
        return 2, construct_layout(kind, g, lay, provider, 2)
    return construct_with_smallest_ell(kind, g, lay, lambda ell: ExactSeparatorProvider(ell, EXACT_LIMIT))


def default_separator(inst) -> str:
    return "planar" if inst.name.startswith(PLANAR_FAMILIES) else "exact"


@pytest.fixture(scope="module")
def corpus_layouts():
    """(instance, kind) -> (ell, layout, seconds) with the family's default separator."""
    out = {}
    start = time.perf_counter()
    for inst in acceptance_corpus():
        for kind in Kind:
            t = time.perf_counter()
            ell, layout = build(inst, kind, default_separator(inst))
            out[inst.name, kind] = (inst, ell, layout, time.perf_counter() - t)
    return out, time.perf_counter() - start


def test_c1_validity_on_corpus(corpus_layouts, acceptance_record):
    layouts, elapsed = corpus_layouts
    start = time.perf_counter()
    bad = []
    for (name, kind), (inst, _, layout, _) in layouts.items():
        problems = check_validity(inst.graph, layout) + check_layer_by_layer(layout.order, inst.layering)
        if problems:
            bad.append((name, kind.value, problems[0]))
    elapsed += time.perf_counter() - start  # build + verify
    ok = not bad and elapsed < 60
    acceptance_record(
        "c1-validity",
        ok,
        f"{len(layouts)} layouts over {len(acceptance_corpus())} graphs, {len(bad)} invalid, {elapsed:.1f}s (< 60s)",
    )
    assert not bad, bad[:3]
    assert elapsed < 60


def test_c2_channel_bounds(corpus_layouts, acceptance_record):
    layouts, _ = corpus_layouts
    bad = []
    worst = 0.0
    for (name, kind), (inst, ell, layout, _) in layouts.items():
        report = check_bounds(layout, ell, inst.graph.n)
        if not report.ok:
            bad.append((name, kind.value, report.violations[0].detail))
        if report.bound:
            worst = max(worst, report.channels / report.bound)
    acceptance_record(
        "c2-bounds",
        not bad,
        f"stack <= 5*ell*floor(log2 n), queue <= 3*ell*floor(log2 n), per-depth budgets; "
        f"{len(bad)} violations, max used/bound {worst:.2f}",
    )
    assert not bad, bad[:3]


def test_c3_planar_separators(acceptance_record):
    planar = [inst for inst in acceptance_corpus() if inst.planar]
    sep_bad, bound_bad = [], []
    for inst in planar:
        g, lay = inst.graph, inst.layering
        provider = PlanarSeparatorProvider(g, inst.rotation, lay, bfs_tree(g, 0))
        cert = make_cert(g, lay, provider.separator(), 2)
        if verify_separator(g, lay, cert) or any(len(vs) > 2 for vs in cert.per_layer.values()):
            sep_bad.append(inst.name)
        for kind, per in ((Kind.STACK, 10), (Kind.QUEUE, 6)):
            layout = construct_layout(kind, g, lay, provider, 2)
            if check_validity(g, layout) or layout.channel_count > per * log2_floor(g.n):
                bound_bad.append((inst.name, kind.value, layout.channel_count))
    ok = not sep_bad and not bound_bad
    acceptance_record(
        "c3-planar",
        ok,
        f"{len(planar)} planar graphs; <=2 per layer + verified: {len(planar) - len(sep_bad)}/{len(planar)}; "
        f"stack <= 10 floor(log2 n), queue <= 6 floor(log2 n): {len(bound_bad)} violations",
    )
    assert not sep_bad, sep_bad[:5]
    assert not bound_bad, bound_bad[:5]


def test_c4_oracle_consistency(acceptance_record):
    graphs = list(atlas_connected(6)) + [complete(4), complete(5), cycle(4)]
    worse, mismatch = [], []
    for g in graphs:
        for kind, fn in ((Kind.STACK, min_stack_number), (Kind.QUEUE, min_queue_number)):
            opt = fn(g)
            if opt != fn(g, reduced=False):
                mismatch.append((g.edges, kind.value))
            _, layout = construct_with_smallest_ell(kind, g, bfs_layering(g, 0), ExactSeparatorProvider)
            if opt > layout.channel_count:
                worse.append((g.edges, kind.value, opt, layout.channel_count))
    fixed = (
        fixed_order_stack_number(cycle(4), range(4)),
        fixed_order_stack_number(complete(4), range(4)),
        min_stack_number(complete(5)),
    )
    ok = not worse and not mismatch and fixed == (1, 2, 3)
    acceptance_record(
        "c4-oracle",
        ok,
        f"{len(graphs)} graphs: oracle <= construction ({len(worse)} failures), "
        f"full n! == reduced ({len(mismatch)} mismatches); C4 {fixed[0]}, K4 {fixed[1]}, K5 {fixed[2]} (want 1, 2, 3)",
    )
    assert not worse and not mismatch and fixed == (1, 2, 3)


def slow_separator_size(g: Graph, layer: list[int], ell: int):
    """Smallest layered ell-separator size by plain subset enumeration."""
    adj = [list(g.neighbors(v)) for v in range(g.n)]
    for size in range(g.n + 1):
        for S in itertools.combinations(range(g.n), size):
            per = {}
            for v in S:
                per[layer[v]] = per.get(layer[v], 0) + 1
            if per and max(per.values()) > ell:
                continue
            seen = set(S)
            balanced = True
            for s in range(g.n):
                if s in seen:
                    continue
                stack, comp = [s], 0
                seen.add(s)
                while stack:
                    v = stack.pop()
                    comp += 1
                    for w in adj[v]:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if g.n > 1 and 2 * comp > g.n:
                    balanced = False
                    break
            if balanced:
                return size
    return None


def eight_vertex_graphs(count: int, seed: int):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        h = nx.gnp_random_graph(8, float(rng.uniform(0.2, 0.6)), seed=int(rng.integers(1 << 30)))
        if nx.is_connected(h):
            out.append(Graph.from_edges(8, h.edges()))
    return out


def test_c5_exact_separator_matches_enumeration(acceptance_record):
    graphs = list(atlas_connected(7)) + eight_vertex_graphs(60, seed=11)
    cases = mismatched = unverified = 0
    for g in graphs:
        roots = range(g.n) if g.n <= 6 or g.n == 8 else (0, g.n // 2)
        for root in roots:
            lay = bfs_layering(g, root)
            widest = max(np.bincount(lay.as_array()))
            for ell in range(widest + 1):
                cases += 1
                cert = find_layered_separator_exact(g, lay, ell)
                expected = slow_separator_size(g, list(lay.layer_of), ell)
                if (cert is None) != (expected is None) or (cert is not None and len(cert.S) != expected):
                    mismatched += 1
                elif cert is not None and verify_separator(g, lay, cert):
                    unverified += 1
    ok = mismatched == 0 and unverified == 0
    acceptance_record(
        "c5-separator",
        ok,
        f"{cases} (graph, BFS layering, ell) cases with n <= 8: {mismatched} mismatches, {unverified} unverified certs",
    )
    assert ok


def test_c6_log_growth(acceptance_record):
    rows = run_bench("grid", [4, 8, 16, 32], Kind.STACK, "planar")
    used = [r.channels_used for r in rows]
    caps = [10 * log2_floor(r.n) for r in rows]
    ok = used == sorted(used) and all(u <= c for u, c in zip(used, caps)) and all(r.valid for r in rows)
    acceptance_record(
        "c6-log-growth",
        ok,
        f"grid n={[r.n for r in rows]} channels={used} caps={caps}",
    )
    assert ok
    assert [channel_bound(Kind.STACK, 2, r.n) for r in rows] == caps


def _cli(args, cwd):
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "laysep.cli", *args], cwd=cwd, env=env, capture_output=True)
    assert res.returncode == 0, res.stderr.decode()
    return res.stdout


def test_c7_determinism(tmp_path, acceptance_record):
    _cli(["gen", "triangulation", "40", "--seed", "3", "-o", "t.txt", "--rotation", "t.rot"], tmp_path)
    _cli(["gen", "grid_nn2", "3", "-o", "n.txt"], tmp_path)
    jobs = [
        ["layout", "t.txt", "--separator", "planar", "--embedding", "t.rot"],
        ["layout", "t.txt", "--separator", "planar", "--embedding", "t.rot", "--kind", "queue"],
        ["layout", "n.txt"],
        ["layout", "n.txt", "--kind", "queue"],
    ]
    identical = 0
    for i, job in enumerate(jobs):
        runs = []
        for r in range(2):
            out = _cli(job, tmp_path)
            (tmp_path / f"l{i}{r}.json").write_bytes(out)
            graph = job[1]
            _cli(["render", graph, f"l{i}{r}.json", f"l{i}{r}.svg"], tmp_path)
            runs.append((out, (tmp_path / f"l{i}{r}.svg").read_bytes()))
        identical += runs[0] == runs[1]
    ok = identical == len(jobs)
    acceptance_record("c7-determinism", ok, f"{identical}/{len(jobs)} layouts byte-identical in JSON and SVG across runs")
    assert ok
