"""``konigcolor`` command line interface.

Every run writes one JSON document (``--json PATH`` or stdout) holding a
manifest, the result, and checker verdicts. Exit codes: 0 success,
1 a verification reported failure, 2 precondition failure, 3 parse failure,
4 brute-force budget refusal.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional

from . import chromatic, compactness, formats, gadgets
from .core import (
    BudgetExceeded,
    GraphError,
    NotBipartite,
    PreconditionError,
    UnsupportedMultigraph,
    check_proper,
    max_degree,
)

EXIT_OK, EXIT_FAILED, EXIT_PRECONDITION, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3, 4


class CheckFailed(RuntimeError):
    pass


def _write(path: str, text: str, outputs: list) -> None:
    Path(path).write_text(text)
    outputs.append(path)


def _emit(args, command: str, input_text: str, params: dict, result: dict, checks: dict,
          outputs: list, started: float) -> int:
    manifest = {
        "command": command,
        "input_digest": formats.digest(input_text),
        "parameters": params,
        "outputs": outputs,
    }
    if args.timing:
        manifest["timing_seconds"] = round(time.perf_counter() - started, 6)
    doc = formats.dump_json({"manifest": manifest, "result": result, "checks": checks})
    if args.json:
        Path(args.json).write_text(doc)
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def _load_graph(path: str):
    return formats.parse_edge_list(formats.read_text(path), path)


def _canonical_graph_text(g) -> str:
    return formats.format_edge_list(g)


# -- color -------------------------------------------------------------------


def cmd_color(args) -> int:
    started = time.perf_counter()
    g = _load_graph(args.input)
    order = None
    if args.algorithm == "greedy":
        n = args.n if args.n is not None else max_degree(g)
        if args.order:
            order = formats.parse_order(formats.read_text(args.order), args.order)
        c = chromatic.greedy_edge_color(g, order, n)
    elif args.algorithm == "koenig":
        n = None
        c = chromatic.koenig_edge_color(g)
    else:
        n = None
        c = chromatic.vizing_edge_color(g)
    proper, witness = check_proper(g, c)
    if not proper:
        raise CheckFailed(f"emitted coloring is improper at edges {witness}")
    outputs: list = []
    if args.output:
        text = "".join(f"{e} {c.assignment[e]}\n" for e in range(g.m))
        _write(args.output, text, outputs)
    sizes: dict[int, int] = {}
    for col in c.assignment.values():
        sizes[col] = sizes.get(col, 0) + 1
    if args.emit_plot:
        from .plotting import plot_color_classes
        outputs += plot_color_classes(sizes, args.emit_plot)
    result = {
        "algorithm": args.algorithm,
        "palette_size": c.palette_size,
        "colors_used": c.colors_used,
        "max_degree": max_degree(g),
        "coloring": [[e, c.assignment[e]] for e in range(g.m)],
    }
    params = {"n": n, "order": order}
    return _emit(args, f"color {args.algorithm}", _canonical_graph_text(g), params, result,
                 {"proper": proper}, outputs, started)


# -- decompose ---------------------------------------------------------------


def cmd_decompose(args) -> int:
    started = time.perf_counter()
    outputs: list = []
    if args.kind == "matchings":
        g = _load_graph(args.input)
        part = chromatic.decompose_matchings(g)
        if args.n is not None and len(part.blocks) != args.n and g.m:
            raise PreconditionError(f"graph is {len(part.blocks)}-regular, not {args.n}-regular", args.n)
        try:
            part.validate(g)
        except GraphError as exc:
            raise CheckFailed(str(exc)) from None
        blocks = [sorted(b) for b in part.blocks]
        if args.output:
            _write(args.output, "".join(f"{e} {i}\n" for i, b in enumerate(blocks) for e in b), outputs)
        result = {"kind": "matchings", "blocks": blocks,
                  "edges": [[u, v] for _, u, v in g.edges]}
        text = _canonical_graph_text(g)
    else:
        s = formats.parse_point_set(formats.read_text(args.input), args.input)
        n = args.n if args.n is not None else s.max_line_count()
        part = chromatic.decompose_transversals(s, n)
        try:
            part.validate(s)
        except GraphError as exc:
            raise CheckFailed(str(exc)) from None
        blocks = [[list(p) for p in sorted(b)] for b in part.blocks]
        if args.output:
            _write(args.output, formats.format_partition(part), outputs)
        result = {"kind": "transversals", "blocks": blocks}
        text = formats.format_point_set(s)
    result["block_count"] = len(part.blocks)
    return _emit(args, f"decompose {args.kind}", text, {"n": args.n}, result,
                 {"valid_partition": True}, outputs, started)


# -- gadget ------------------------------------------------------------------


def _pair_from_args(args) -> gadgets.InjectionPair:
    f = formats.parse_table(args.f_table or "")
    g = formats.parse_table(args.g_table or "")
    return gadgets.InjectionPair(f, g, args.stages)


def cmd_gadget(args) -> int:
    started = time.perf_counter()
    outputs: list = []
    action = args.action
    if action == "build":
        pair = _pair_from_args(args)
        if args.variant == gadgets.TWO_REGULAR:
            window = args.window if args.window is not None else max(pair.stage_bound - 1, 0)
            inst = gadgets.build_two_regular(args.k, pair, window)
        else:
            window = None
            inst = gadgets.build_gadget(args.k, pair, args.variant)
        rows, cols = gadgets.line_counts(inst.points)
        if max([*rows.values(), *cols.values(), 0]) > 2:
            raise CheckFailed("a row or column holds more than two points")
        text = formats.format_gadget(inst)
        if args.output:
            _write(args.output, text, outputs)
        if args.emit_plot:
            from .plotting import plot_gadget
            outputs += plot_gadget(inst, args.emit_plot)
        result = _gadget_result(inst)
        params = {"k": args.k, "variant": args.variant, "f_table": formats.format_table(pair.f_table),
                  "g_table": formats.format_table(pair.g_table), "stages": pair.stage_bound,
                  "window": window}
        checks = {"max_line_count": max([*rows.values(), *cols.values(), 0])}
        return _emit(args, "gadget build", text, params, result, checks, outputs, started)

    if action == "verify":
        text = formats.read_text(args.inputs[0])
        inst = formats.parse_gadget(text, args.inputs[0])
        report = gadgets.verify_forcing(inst, args.budget)
        code = _emit(args, "gadget verify", text, {"budget": args.budget}, report.as_dict(),
                     {"forcing_ok": report.ok}, outputs, started)
        return code if report.ok else EXIT_FAILED

    if action == "combine":
        texts = [formats.read_text(p) for p in args.inputs]
        insts = [formats.parse_gadget(t, p) for t, p in zip(texts, args.inputs)]
        cs = gadgets.combine(insts)
        out_text = formats.format_combined(cs)
        if args.output:
            _write(args.output, out_text, outputs)
        rows, cols = gadgets.line_counts(cs.points)
        result = {"window": sorted(cs.window),
                  "points": [[r, c, *cs.labels[(r, c)]] for r, c in sorted(cs.points)]}
        checks = {"max_line_count": max([*rows.values(), *cols.values(), 0])}
        return _emit(args, "gadget combine", "".join(texts), {}, result, checks, outputs, started)

    # separate
    text = formats.read_text(args.inputs[0])
    cs = formats.parse_combined(text, args.inputs[0])
    pair = _pair_from_args(args) if (args.f_table or args.g_table) else None
    if args.partition:
        part = formats.parse_partition(formats.read_text(args.partition), args.partition)
        try:
            part.validate(cs.points)
        except GraphError as exc:
            raise PreconditionError(f"partition is not valid for the combined set: {exc}") from None
        parts = [part]
    else:
        parts = gadgets.all_two_transversal_partitions(cs.points, args.budget)
    reports = []
    all_ok = True
    for part in parts:
        rep = gadgets.extract_separator(part, cs)
        entry = {"A": sorted(rep.A)}
        if pair is not None:
            entry["checks"] = rep.check(pair)
            all_ok = all_ok and all(entry["checks"].values())
        reports.append(entry)
    result = {"window": sorted(cs.window), "partitions": len(parts), "separators": reports}
    params = {"partition": args.partition, "budget": args.budget}
    code = _emit(args, "gadget separate", text, params, result,
                 {"separator_ok": all_ok if pair is not None else None}, outputs, started)
    return code if all_ok else EXIT_FAILED


def _gadget_result(inst: gadgets.GadgetInstance) -> dict:
    return {
        "k": inst.k,
        "variant": inst.variant,
        "cap": inst.cap_event,
        "stages": inst.stages,
        "offset": inst.offset,
        "boundary": [list(b) for b in inst.boundary],
        "point_count": len(inst.points),
        "points": [[r, c, inst.labels[(r, c)]] for r, c in sorted(inst.points)],
        "figure_coords": {t: list(xy) for t, xy in sorted(inst.figure_coords().items())},
    }


# -- tree --------------------------------------------------------------------


def cmd_tree(args) -> int:
    started = time.perf_counter()
    g = _load_graph(args.input)
    lazy = compactness.LazyGraph.from_graph(g, args.n)
    depth = g.m if args.depth is None else args.depth
    if depth > g.m:
        raise PreconditionError(f"depth {depth} exceeds the {g.m} streamed edges", depth)
    outputs: list = []
    if args.mode == "levels":
        counts = compactness.level_counts(lazy, depth, args.n, args.budget)
        result = {"levels": counts}
        checks = {"every_level_nonempty": all(c >= 1 for c in counts)}
        if args.emit_plot:
            from .plotting import plot_level_counts
            outputs += plot_level_counts(counts, args.emit_plot)
    elif args.mode == "path":
        path = compactness.find_prefix_path(lazy, depth, args.n, args.budget)
        result = {"path": "none" if path is None else list(path)}
        checks = {}
        if path is not None:
            fg, c = compactness.path_to_coloring(lazy, path)
            checks["proper"] = check_proper(fg, c)[0]
            if not checks["proper"]:
                raise CheckFailed("prefix path is not a proper coloring")
    else:
        dead = compactness.find_dead_node(lazy, args.n, depth, args.budget)
        result = {"dead_node": "none" if dead is None else list(dead)}
        checks = {}
        if dead is not None:
            checks["is_tree_node"] = compactness.is_tree_node(lazy, dead, args.n)
    params = {"n": args.n, "depth": depth, "budget": args.budget}
    return _emit(args, f"tree {args.mode}", _canonical_graph_text(g), params, result, checks,
                 outputs, started)


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="record wall time in the manifest")

    p = argparse.ArgumentParser(prog="konigcolor", description="Edge colorings, transversal "
                                "decompositions, prefix-tree search and separation gadgets.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("color", parents=[common], help="edge-color a graph")
    c.add_argument("algorithm", choices=["greedy", "koenig", "vizing"])
    c.add_argument("input", help="edge-list file")
    c.add_argument("--n", type=int, help="degree bound for greedy (default: max degree)")
    c.add_argument("--order", help="file of edge ids giving the greedy order")
    c.add_argument("-o", "--output", help="write 'edge color' lines here")
    c.add_argument("--emit-plot", metavar="PREFIX", help="write PREFIX.csv and PREFIX.png")
    c.set_defaults(func=cmd_color)

    d = sub.add_parser("decompose", parents=[common], help="matchings or partial transversals")
    d.add_argument("kind", choices=["matchings", "transversals"])
    d.add_argument("input", help="edge-list file (matchings) or point-set file (transversals)")
    d.add_argument("--n", type=int)
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_decompose)

    gd = sub.add_parser("gadget", parents=[common], help="build and check separation gadgets")
    gd.add_argument("action", choices=["build", "verify", "combine", "separate"])
    gd.add_argument("inputs", nargs="*", help="gadget files (verify, combine) or combined file (separate)")
    gd.add_argument("--k", type=int, default=0)
    gd.add_argument("--f-table", default="", help="stage:value pairs, comma separated")
    gd.add_argument("--g-table", default="", help="stage:value pairs, comma separated")
    gd.add_argument("--stages", type=int, help="stages revealed (default: one past the last table stage)")
    gd.add_argument("--variant", choices=list(gadgets.VARIANTS), default=gadgets.STAIRCASE)
    gd.add_argument("--window", type=int, help="two_regular truncation radius in stages")
    gd.add_argument("--partition", help="'row col block' file for separate")
    gd.add_argument("--budget", type=int, default=gadgets.PARTITION_BUDGET)
    gd.add_argument("-o", "--output")
    gd.add_argument("--emit-plot", metavar="PREFIX")
    gd.set_defaults(func=cmd_gadget)

    t = sub.add_parser("tree", parents=[common], help="search the tree of prefix colorings")
    t.add_argument("mode", choices=["levels", "path", "deadnode"])
    t.add_argument("input", help="edge-list file; line order is the stream order")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--depth", type=int)
    t.add_argument("--budget", type=int, default=compactness.NODE_BUDGET)
    t.add_argument("--emit-plot", metavar="PREFIX")
    t.set_defaults(func=cmd_tree)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gadget":
        need = {"verify": 1, "separate": 1}.get(args.action)
        if need and len(args.inputs) != need:
            parser.error(f"gadget {args.action} takes exactly one input file")
        if args.action == "combine" and not args.inputs:
            parser.error("gadget combine needs at least one gadget file")
    try:
        return args.func(args)
    except formats.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except gadgets.ForcingFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (PreconditionError, NotBipartite, UnsupportedMultigraph, GraphError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
