"""Command-line entry point: ``causal-layout <command> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from typing import IO, Optional, Sequence

from . import io as fmt
from .errors import GenerationError, LayoutDivergence, ResourceCapExceeded
from .evaluation import ExperimentError, ExperimentPlan, run_experiment
from .layout import ALPHA_SCHEMES, LayoutConfig, compute_layout
from .metrics import metric_report
from .paths import DEFAULT_PARTIAL_PATH_CAP, extract_causal_paths, window_trajectories
from .render import RenderStyle, colors_from_labels, render_svg
from .synthetic import ClusterModelParams, generate

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextlib.contextmanager
def _open_in(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, encoding="utf-8", newline="") as f:
            yield f


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as f:
            yield f


def _alpha(text: str) -> tuple[int, float]:
    k, sep, v = text.partition("=")
    try:
        if not sep:
            raise ValueError
        return int(k), float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k=value, got {text!r}") from None


def _orders(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(k) for k in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _layout_config(args) -> LayoutConfig:
    if args.alpha and args.alpha_scheme:
        raise UsageError("--alpha and --alpha-scheme are mutually exclusive")
    alphas = dict(args.alpha) if args.alpha else args.alpha_scheme
    return LayoutConfig(
        max_order=args.max_order,
        iterations=args.iterations,
        alphas=alphas,
        seed=args.seed,
        uniform_path_weights=args.uniform_weights,
    )


def _add_layout_flags(p: argparse.ArgumentParser, order_flag: bool = True) -> None:
    if order_flag:
        p.add_argument("--max-order", type=int, default=1, help="highest order K whose forces are superimposed")
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--alpha", type=_alpha, action="append", metavar="K=VALUE",
                   help="force coefficient of order K (repeatable); unset orders get 0")
    p.add_argument("--alpha-scheme", choices=sorted(ALPHA_SCHEMES),
                   help="derive coefficients from unique path counts (default: inverse)")
    p.add_argument("--uniform-weights", action=argparse.BooleanOptionalAction, default=True,
                   help="weigh every distinct path equally (default) instead of by frequency")


def cmd_paths(args) -> None:
    with _open_in(args.input) as stream:
        if args.input_kind == "edges":
            g = fmt.parse_temporal_edges(stream, directed=not args.undirected, delimiter=args.delimiter)
            pc = extract_causal_paths(g, args.delta, args.max_order, args.partial_path_cap)
            vertices = g.vertices
        else:
            pc = window_trajectories(fmt.parse_paths(stream), args.max_order)
            vertices = pc.vertices
    with _open_out(args.output) as out:
        fmt.write_path_collection(pc, out, vertices)


def cmd_layout(args) -> None:
    cfg = _layout_config(args)
    with _open_in(args.paths) as stream:
        pc, vertices = fmt.read_path_collection(stream)
    layout = compute_layout(pc, vertices, cfg)
    with _open_out(args.output) as out:
        fmt.write_layout(layout, out, args.format)


def cmd_render(args) -> None:
    with _open_in(args.layout) as stream:
        layout = fmt.read_layout(stream, args.layout_format)
    edges = []
    if args.edges:
        with _open_in(args.edges) as stream:
            edges = fmt.parse_edge_pairs(stream)
    colors = None
    if args.colors:
        with _open_in(args.colors) as stream:
            colors = colors_from_labels(fmt.read_vertex_values(stream))
    highlight = None
    if args.highlight:
        with _open_in(args.highlight) as stream:
            highlight = frozenset(fmt.read_vertex_list(stream))
    style = RenderStyle(color_map=colors, highlight_set=highlight, width=args.width, height=args.height,
                        node_radius=args.node_radius, edge_width=args.edge_width)
    svg = render_svg(layout, edges, style, args.circle_gamma)
    with _open_out(args.output) as out:
        out.write(svg)


def cmd_metrics(args) -> None:
    with _open_in(args.layout) as stream:
        layout = fmt.read_layout(stream, args.layout_format)
    with _open_in(args.paths) as stream:
        pc, _ = fmt.read_path_collection(stream)
    if args.edges:
        with _open_in(args.edges) as stream:
            edges = fmt.parse_edge_pairs(stream)
    else:
        edges = sorted((p[0], p[1]) for p in pc.of_length(1))
    report = metric_report(layout, pc, edges, tuple(args.gamma or (10.0,)))
    with _open_out(args.output) as out:
        out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")


def cmd_synth(args) -> None:
    params = ClusterModelParams(n=args.n, degree=args.degree, num_sequences=args.sequences, seed=args.seed,
                                hub_sequences=args.hub_sequences)
    result = generate(params)
    with _open_out(args.output_edges) as out:
        fmt.write_temporal_edges(result.graph, out)
    if args.output_clusters:
        with _open_out(args.output_clusters) as out:
            fmt.write_cluster_map(result.clusters, out)


def cmd_eval(args) -> None:
    cfg = _layout_config(args)
    plan = ExperimentPlan(orders=args.orders, repetitions=args.repetitions, train_fraction=args.train_fraction,
                          gamma=args.gamma, base_seed=args.base_seed)
    with _open_in(args.paths) as stream:
        pc, vertices = fmt.read_path_collection(stream)
    report = run_experiment(pc, plan, cfg, vertices, workers=args.workers)
    with _open_out(args.output) as out:
        out.write(report.to_json() if args.format == "json" else report.to_csv())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="causal-layout", description="Time-aware static layouts of temporal networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("paths", help="extract causal paths into a path collection (JSON)")
    p.add_argument("--input", default="-")
    p.add_argument("--input-kind", choices=("edges", "trajectories"), default="edges")
    p.add_argument("--delta", type=int, default=1, help="maximum time gap between consecutive edges")
    p.add_argument("--max-order", type=int, default=2, help="longest path length to count")
    p.add_argument("--undirected", action="store_true", help="emit both orientations of every edge")
    p.add_argument("--delimiter", choices=("auto", "tab", "comma", "space"), default="auto")
    p.add_argument("--partial-path-cap", type=int, default=DEFAULT_PARTIAL_PATH_CAP)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("layout", help="compute a layout from a path collection")
    p.add_argument("--paths", required=True)
    _add_layout_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("render", help="draw a layout as SVG")
    p.add_argument("--layout", required=True)
    p.add_argument("--layout-format", choices=("json", "csv"), default="json")
    p.add_argument("--edges", help="edge list; only the first two fields of each row are used")
    p.add_argument("--colors", help="CSV vertex,color (CSS color or integer cluster label)")
    p.add_argument("--highlight", help="file with one vertex per line")
    p.add_argument("--circle-gamma", type=float, help="circle around the barycentre holding this %% of vertices")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=800)
    p.add_argument("--node-radius", type=float, default=4.0)
    p.add_argument("--edge-width", type=float, default=1.0)
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("metrics", help="layout quality metrics as JSON")
    p.add_argument("--layout", required=True)
    p.add_argument("--layout-format", choices=("json", "csv"), default="json")
    p.add_argument("--paths", required=True)
    p.add_argument("--edges", help="edges for crossing counts (default: length-one paths)")
    p.add_argument("--gamma", type=float, action="append", help="percentage for eccentricity (repeatable)")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("synth", help="generate clustered synthetic temporal network")
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--sequences", type=int, default=2000)
    p.add_argument("--hub-sequences", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output-edges", default="-")
    p.add_argument("--output-clusters")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("eval", help="repeated train/test comparison of orders")
    p.add_argument("--paths", required=True)
    p.add_argument("--orders", type=_orders, default=(1, 2), help="comma-separated, e.g. 1,2,3")
    p.add_argument("--repetitions", type=int, default=100)
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--gamma", type=float, default=10.0)
    p.add_argument("--base-seed", type=int, default=0)
    _add_layout_flags(p, order_flag=False)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_eval, max_order=1, seed=0)
    return parser


_DELIMITERS = {"auto": "auto", **fmt.DELIMITERS}


def main(argv: Optional[Sequence[str]] = None, stderr: IO[str] = None) -> int:
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "delimiter", None) is not None:
        args.delimiter = _DELIMITERS[args.delimiter]
    try:
        args.func(args)
    except UsageError as exc:
        print(f"causal-layout: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ExperimentError as exc:
        print(f"causal-layout: {exc}", file=stderr)
        return EXIT_CAP if isinstance(exc.__cause__, ResourceCapExceeded) else EXIT_DATA
    except ResourceCapExceeded as exc:
        print(f"causal-layout: resource cap: {exc}", file=stderr)
        return EXIT_CAP
    except (ValueError, OSError, GenerationError, LayoutDivergence) as exc:
        print(f"causal-layout: error: {exc}", file=stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
