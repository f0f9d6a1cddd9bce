"""Command-line front end.

Exit codes: 0 ok, 1 input error, 2 validity/bound failure (or no separator),
3 size guard exceeded.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from ._accel import backend_name
from .bench import FAMILIES, make_instance, rows_to_csv, run_bench
from .embedding import EmbeddingError, format_rotation, read_rotation, rotation_from_networkx
from .graph import (
    GraphError,
    Layering,
    bfs_distances,
    bfs_layering,
    bfs_tree,
    format_graph,
    format_layering,
    read_graph,
    read_layering,
    require_valid_layering,
)
from .layout import Kind, LinearLayout, construct_layout, construct_with_smallest_ell
from .oracle import OracleTooLarge, fixed_order_queue_number, fixed_order_stack_number, min_layout
from .render import render_svg
from .separator import (
    EXACT_MAX_VERTICES,
    ExactSearchTooLarge,
    ExactSeparatorProvider,
    PlanarSeparatorProvider,
    SeparatorError,
    find_layered_separator_exact,
    find_min_ell_separator,
    make_cert,
)
from .verify import check_bounds, check_layer_by_layer, check_validity

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_TOO_LARGE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_layering(args, g) -> tuple[Layering, int | None]:
    """Layering plus the BFS root when the layering is a BFS layering."""
    if args.layering:
        layering = read_layering(args.layering, g.n)
        require_valid_layering(g, layering)
        return layering, None
    root = args.bfs_root if args.bfs_root is not None else 0
    return bfs_layering(g, root), root


def _planar_provider(args, g, layering: Layering, root: int | None) -> PlanarSeparatorProvider:
    if root is None:
        zeros = [v for v in range(g.n) if layering[v] == 0]
        if len(zeros) != 1 or list(layering.layer_of) != bfs_distances(g, zeros[0]):
            raise CliError("planar separator needs a BFS layering; use --bfs-root")
        root = zeros[0]
    rotation = read_rotation(args.embedding, g.n) if args.embedding else rotation_from_networkx(g)
    return PlanarSeparatorProvider(g, rotation, layering, bfs_tree(g, root))


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    p = args.params
    try:
        if args.family == "grid":
            from .generators import grid

            g, rot = grid(p[0], p[1] if len(p) > 1 else p[0])
        elif args.family == "mapgraph":
            from .generators import random_map_graph

            w, h, count = (p + [6, 6, 12][len(p):])[:3]
            g, rot = random_map_graph(w, h, count, args.seed, args.d_cap), None
        else:
            g, rot = make_instance(args.family, p[0], args.seed)
    except IndexError:
        raise CliError(f"family {args.family} needs a size parameter") from None
    _emit(format_graph(g), args.output)
    if args.layering:
        Path(args.layering).write_text(format_layering(bfs_layering(g, args.root)))
    if args.rotation:
        if rot is None:
            raise CliError(f"family {args.family} has no embedding")
        Path(args.rotation).write_text(format_rotation(rot))
    return EXIT_OK


def cmd_layout(args) -> int:
    g = read_graph(args.graph)
    layering, root = _load_layering(args, g)
    kind = Kind(args.kind)
    if args.separator == "planar":
        provider = _planar_provider(args, g, layering, root)
        ell = provider.ell if args.ell is None else args.ell
        if ell < provider.ell:
            raise CliError("planar separators need --ell >= 2")
        layout = construct_layout(kind, g, layering, provider, ell)
    elif args.ell is None:
        ell, layout = construct_with_smallest_ell(
            kind, g, layering, lambda e: ExactSeparatorProvider(e, args.exact_limit)
        )
    else:
        ell = args.ell
        layout = construct_layout(kind, g, layering, ExactSeparatorProvider(ell, args.exact_limit), ell)
    _emit(layout.dumps() + "\n", args.output)
    problems = check_validity(g, layout) + check_layer_by_layer(layout.order, layering)
    problems += check_bounds(layout, ell, g.n).violations
    if problems:
        json.dump([v.to_json() for v in problems], sys.stderr)
        sys.stderr.write("\n")
        return EXIT_INVALID
    print(f"ell={ell} channels={layout.channel_count}", file=sys.stderr)
    return EXIT_OK


def _read_layout(path) -> LinearLayout:
    try:
        return LinearLayout.from_json(json.loads(Path(path).read_text()))
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(f"cannot read layout {path}: {exc}") from None


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    layout = _read_layout(args.layout)
    problems = check_validity(g, layout)
    if args.layering:
        problems += check_layer_by_layer(layout.order, read_layering(args.layering, g.n))
    if args.ell is not None:
        problems += check_bounds(layout, args.ell, g.n).violations
    if problems:
        print(json.dumps([v.to_json() for v in problems], indent=1))
        return EXIT_INVALID
    print("OK")
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    sizes = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            sizes.extend(range(int(lo), int(hi) + 1))
        elif part:
            sizes.append(int(part))
    return sizes


def cmd_bench(args) -> int:
    rows = run_bench(args.family, _parse_sizes(args.sizes), args.kind, args.separator, args.seed)
    _emit(rows_to_csv(rows), args.output)
    return EXIT_OK if all(r.valid for r in rows) else EXIT_INVALID


def cmd_render(args) -> int:
    g = read_graph(args.graph)
    layout = _read_layout(args.layout)
    if sorted(layout.order) != list(range(g.n)):
        raise CliError("layout order does not match the graph")
    Path(args.out).write_text(render_svg(layout))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    kind = Kind(args.kind)
    if args.order:
        order = [int(t) for t in args.order.split(",")]
        if sorted(order) != list(range(g.n)):
            raise CliError("--order must be a permutation of the vertices")
        fixed = fixed_order_stack_number if kind is Kind.STACK else fixed_order_queue_number
        print(json.dumps({"kind": kind.value, "order": order, "number": fixed(g, order)}))
        return EXIT_OK
    res = min_layout(g, kind)
    print(json.dumps({"number": res.number, "layout": res.layout.to_json()}))
    return EXIT_OK


def cmd_separator(args) -> int:
    g = read_graph(args.graph)
    layering, root = _load_layering(args, g)
    if args.method == "planar":
        provider = _planar_provider(args, g, layering, root)
        cert = make_cert(g, layering, provider.separator(), provider.ell)
    elif args.ell is None:
        _, cert = find_min_ell_separator(g, layering, max_vertices=args.exact_limit)
    else:
        cert = find_layered_separator_exact(g, layering, args.ell, max_vertices=args.exact_limit)
        if cert is None:
            print(f"no layered {args.ell}-separator", file=sys.stderr)
            return EXIT_INVALID
    print(cert.dumps())
    return EXIT_OK


# --------------------------------------------------------------------------


def _add_layering_opts(p) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--layering", help="layering file (line v = layer of vertex v)")
    grp.add_argument("--bfs-root", type=int, help="BFS layering from this root (default 0)")
    p.add_argument("--embedding", help="rotation file (line v = neighbors of v in cyclic order)")
    p.add_argument("--exact-limit", type=int, default=EXACT_MAX_VERTICES,
                   help="largest subgraph the exact separator search accepts")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laysep", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend_name()})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph in the text format")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", type=int, nargs="+",
                   help="grid: ROWS [COLS]; grid_nn2: N; triangulation: N; mapgraph: W H COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d-cap", type=int, default=4, help="mapgraph: max nations per host vertex")
    p.add_argument("-o", "--output")
    p.add_argument("--layering", help="also write the BFS layering here")
    p.add_argument("--root", type=int, default=0, help="BFS root for --layering")
    p.add_argument("--rotation", help="also write the rotation system here (planar families)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("layout", help="build a stack or queue layout, emit JSON")
    p.add_argument("graph")
    _add_layering_opts(p)
    p.add_argument("--kind", choices=[k.value for k in Kind], default="stack")
    p.add_argument("--separator", choices=["exact", "planar"], default="exact")
    p.add_argument("--ell", type=int, help="per-layer separator bound (default: smallest that works)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("verify", help="check a layout JSON against a graph")
    p.add_argument("graph")
    p.add_argument("layout")
    p.add_argument("--ell", type=int, help="also check the channel bound for this ell")
    p.add_argument("--layering", help="also check the layer-by-layer order")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="CSV sweep of channels used against the bound")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--sizes", default="4,8,16", help="comma list, ranges as LO..HI")
    p.add_argument("--kind", choices=[k.value for k in Kind], default="stack")
    p.add_argument("--separator", choices=["exact", "planar"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw a layout as an SVG arc diagram")
    p.add_argument("graph")
    p.add_argument("layout")
    p.add_argument("out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("oracle", help="exact stack/queue number of a tiny graph")
    p.add_argument("graph")
    p.add_argument("--kind", choices=[k.value for k in Kind], default="stack")
    p.add_argument("--order", help="comma-separated vertex order for the fixed-order number")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("separator", help="find a layered separator, emit its certificate")
    p.add_argument("graph")
    _add_layering_opts(p)
    p.add_argument("--method", choices=["exact", "planar"], default="exact")
    p.add_argument("--ell", type=int)
    p.set_defaults(func=cmd_separator)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExactSearchTooLarge, OracleTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except SeparatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, EmbeddingError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
