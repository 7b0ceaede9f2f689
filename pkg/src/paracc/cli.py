"""``paracc`` command line.

Exit codes: 0 yes, 1 no, 2 usage or parse error, 3 guard violation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Any

from . import cluster, cover, cut, packing
from .embed import Embedding, PatternSpec, build_pattern, distance, embed
from .coloring import dump_family, family_params, verify_family
from .errors import GraphParseError, GuardError, ParaccError
from .graph import Graph, cycle_graph, exact_tree_decomposition, k2, k3, parse_graph, path_graph
from .oracle import oracle_solve
from .runner import Stats, resolve_threads

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

GRAPH_PROBLEMS = (
    "emb", "matching", "path", "distance", "pack", "cycle-pack", "vc", "pvc", "epvc", "cluster",
    "many-cluster", "cluster-freel", "ppartite", "multipartite", "cut", "cut-atmost",
)
EXHAUSTIVE_OK = {"emb", "matching", "path", "pack", "cycle-pack"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- witness serialization ------------------------------------------------------

def _pairs(edges) -> list[list[int]]:
    return [list(e) for e in sorted(edges)]


def witness_json(w: Any) -> dict | None:
    if w is None:
        return None
    if isinstance(w, dict):
        return w
    if isinstance(w, Embedding):
        return {"assignment": {str(h): v for h, v in sorted(w.assignment.items())}}
    if isinstance(w, cover.CoverWitness):
        return {"vertices": sorted(w.vertices), "covered": _pairs(w.covered)}
    if isinstance(w, cluster.ClusterSolution):
        return {"edits": witness_json(w.edits), "clusters": [list(c) for c in w.clusters]}
    if isinstance(w, cluster.EditSet):
        return {"additions": _pairs(w.additions), "deletions": _pairs(w.deletions)}
    if isinstance(w, cut.CutWitness):
        return {"X": sorted(w.X), "S": sorted(w.S), "Y": sorted(w.Y)}
    raise TypeError(f"no JSON form for {type(w).__name__}")


def _normalize(w: dict | None) -> dict | None:
    # oracle witnesses use int keys for assignments; JSON wants strings
    if w and "assignment" in w:
        return {"assignment": {str(h): v for h, v in sorted(w["assignment"].items())}}
    return w


# -- argument parsing ------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _anchor(text: str) -> tuple[int, int]:
    try:
        h, g = text.split(":")
        return int(h), int(g)
    except ValueError:
        raise argparse.ArgumentTypeError(f"anchor must look like H:G, got {text!r}") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", required=True, help="graph file, or - for stdin")
    p.add_argument("--engine", choices=("colorcode", "exhaustive", "oracle"), default="colorcode")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: all available)")
    p.add_argument("--json", action="store_true", help="print the JSON result document")
    p.add_argument("--witness", action="store_true", help="also print the witness")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="paracc", description="Color-coding solvers for parameterized graph problems.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        for flag, kind, required in flags:
            p.add_argument(flag, type=kind, required=required)
        return p

    p = add("emb", "embed a pattern graph", ("--pattern", str, True))
    p.add_argument("--anchor", type=_anchor, action="append", default=[], help="pin pattern vertex H to host vertex G")
    add("matching", "k disjoint edges", ("--k", int, True))
    add("path", "a path on k vertices", ("--k", int, True))
    add("distance", "path of length <= d from s to t", ("--s", int, True), ("--t", int, True), ("--d", int, True))
    add("pack", "pack a pattern given in the mini-language", ("--pattern", str, True))
    add("cycle-pack", "k disjoint cycles of length l", ("--k", int, True), ("--l", int, True))
    add("vc", "vertex cover of size <= k", ("--k", int, True))
    add("pvc", "<= k vertices covering >= t edges", ("--k", int, True), ("--t", int, True))
    add("epvc", "vertex set covering exactly t edges", ("--t", int, True))
    add("cluster", "<= k edits into exactly l cliques", ("--k", int, True), ("--l", int, True))
    add("many-cluster", "<= k edits into disjoint cliques", ("--k", int, True))
    add("cluster-freel", "like cluster, l not a parameter", ("--k", int, True), ("--l", int, True))
    p = add("ppartite", "<= k edits into a complete p-partite graph", ("--k", int, True), ("--p", int, True))
    p.add_argument("--p-param", action="store_true", help="treat p as a parameter")
    add("multipartite", "<= k edits into complete multipartite components",
        ("--k", int, True), ("--parts", _int_list, True))
    for name in ("cut", "cut-atmost"):
        add(name, "separate few vertices by <= k vertices", ("--k", int, True), ("--l", int, True),
            ("--terminal", int, False))

    for name in ("family", "verify-family"):
        p = sub.add_parser(name, help="dump or verify a universal coloring family")
        for flag in ("--n", "--k", "--c"):
            p.add_argument(flag, type=int, required=True)
        p.add_argument("--multiplier", type=int, default=1)
        if name == "family":
            p.add_argument("--verify", action="store_true")

    p = sub.add_parser("bench", help="time repeated runs of one problem")
    p.add_argument("--runs", type=int, default=3)
    p.add_argument("args", nargs=argparse.REMAINDER, help="a problem subcommand and its flags")
    return parser


# -- problem dispatch ----------------------------------------------------------

def read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def parse_pack_pattern(text: str) -> tuple[str, Any]:
    """``kK2:3``, ``kK3:2``, ``cycle:k=2,l=4``, ``path:k=1,l=5``, ``forest:@file``; ``+`` joins
    ``kK2``/``kK3`` terms into one multiset."""
    head, _, rest = text.partition(":")
    if head in ("cycle", "path"):
        try:
            kv = dict(item.split("=") for item in rest.split(","))
            return head, (int(kv["k"]), int(kv["l"]))
        except (ValueError, KeyError):
            raise UsageError(f"pattern {text!r}: expected {head}:k=<int>,l=<int>") from None
    if head == "forest":
        if not rest.startswith("@"):
            raise UsageError("forest pattern must be forest:@file")
        return "forest", read_graph(rest[1:])
    comps: list[Graph] = []
    for term in text.split("+"):
        name, _, count = term.partition(":")
        base = {"kK2": k2, "kK3": k3}.get(name)
        if base is None:
            raise UsageError(f"unknown pattern term {term!r}")
        try:
            comps += [base()] * int(count)
        except ValueError:
            raise UsageError(f"pattern term {term!r}: count must be an integer") from None
    return "multiset", comps


@dataclass
class Outcome:
    answer: bool
    witness: dict | None
    params: dict
    stats: Stats


def _pattern_graph(path: str) -> Graph:
    return read_graph(path)


def solve(args: argparse.Namespace, g: Graph) -> Outcome:
    cmd = args.command
    stats = Stats(threads=resolve_threads(args.threads))
    threads = args.threads
    engine = args.engine
    params = {k: v for k, v in vars(args).items()
              if k not in ("command", "input", "engine", "threads", "json", "witness") and v is not None}
    if engine == "exhaustive" and cmd not in EXHAUSTIVE_OK:
        raise UsageError(f"--engine exhaustive is available for: {', '.join(sorted(EXHAUSTIVE_OK))}")
    if engine == "oracle":
        return _solve_oracle(cmd, args, g, params, stats)
    t0 = time.perf_counter()
    w: Any
    if cmd == "emb":
        h = _pattern_graph(args.pattern)
        td = exact_tree_decomposition(h)
        w = embed(h, td, g, dict(args.anchor), engine=engine, threads=threads, stats=stats)
    elif cmd == "matching":
        h, td = build_pattern(PatternSpec("copies", k=args.k, graphs=(k2(),)))
        w = embed(h, td, g, engine=engine, threads=threads, stats=stats)
    elif cmd == "path":
        h, td = build_pattern(PatternSpec("paths", k=1, l=args.k, directed=g.directed))
        w = embed(h, td, g, engine=engine, threads=threads, stats=stats)
    elif cmd == "distance":
        ok = distance(g, args.s, args.t, args.d, threads=threads, stats=stats)
        w = {} if ok else None
    elif cmd == "pack":
        kind, data = parse_pack_pattern(args.pattern)
        if kind == "multiset":
            w = packing.pack(g, data, threads=threads, stats=stats, engine=engine)
        elif kind == "cycle":
            w = packing.pack_cycles(g, *data, threads=threads, stats=stats)
        elif kind == "path":
            w = packing.pack_paths(g, *data, threads=threads, stats=stats)
        else:
            w = packing.pack_forest(g, data, threads=threads, stats=stats)
    elif cmd == "cycle-pack":
        w = packing.pack_cycles(g, args.k, args.l, threads=threads, stats=stats)
    elif cmd == "vc":
        w = cover.vertex_cover(g, args.k)
    elif cmd == "pvc":
        w = cover.partial_vertex_cover(g, args.k, args.t, threads=threads, stats=stats)
    elif cmd == "epvc":
        w = cover.exact_partial_vertex_cover(g, args.t, threads=threads, stats=stats)
    elif cmd == "cluster":
        w = cluster.cluster_editing(g, args.k, args.l, threads=threads, stats=stats)
    elif cmd == "many-cluster":
        w = cluster.many_cluster_editing(g, args.k, threads=threads, stats=stats)
    elif cmd == "cluster-freel":
        w = cluster.cluster_editing_free_l(g, args.k, args.l, threads=threads, stats=stats)
    elif cmd == "ppartite":
        w = cluster.p_partite_editing(g, args.k, args.p, args.p_param, threads=threads, stats=stats)
    elif cmd == "multipartite":
        w = cluster.multipartite_cluster_editing(g, args.k, args.parts, threads=threads, stats=stats)
    elif cmd in ("cut", "cut-atmost"):
        solver = cut.cut_connected if cmd == "cut" else cut.cut_at_most
        w = solver(g, args.k, args.l, args.terminal, threads=threads, stats=stats)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {cmd}")
    stats.millis = (time.perf_counter() - t0) * 1000.0
    answer = w is not None
    return Outcome(answer, witness_json(w) if answer and w != {} else None, params, stats)


def _solve_oracle(cmd, args, g, params, stats) -> Outcome:
    inst: dict[str, Any] = {"problem": cmd, "graph": g, **params}
    if cmd == "emb":
        inst["pattern"] = _pattern_graph(args.pattern)
        inst["anchors"] = dict(args.anchor)
    elif cmd == "pack":
        kind, data = parse_pack_pattern(args.pattern)
        if kind == "multiset":
            inst["components"] = data
        elif kind == "cycle":
            inst["components"] = [cycle_graph(data[1])] * data[0]
        elif kind == "path":
            inst["components"] = [path_graph(data[1])] * data[0]
        else:
            inst["components"] = [data]
    elif cmd == "cycle-pack":
        inst["problem"] = "pack"
        inst["components"] = [cycle_graph(args.l)] * args.k
    t0 = time.perf_counter()
    answer, w = oracle_solve(inst)
    stats.millis = (time.perf_counter() - t0) * 1000.0
    return Outcome(answer, _normalize(w), params, stats)


# -- output ----------------------------------------------------------------------

def _jsonable(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def result_document(cmd: str, out: Outcome) -> dict:
    return {
        "problem": cmd,
        "params": {k: _jsonable(v) for k, v in sorted(out.params.items())},
        "answer": out.answer,
        "witness": out.witness,
        "stats": out.stats.as_dict(),
    }


def _human(cmd: str, out: Outcome, show_witness: bool) -> str:
    lines = [f"{cmd}: {'yes' if out.answer else 'no'}"]
    if show_witness and out.witness is not None:
        for key, value in out.witness.items():
            lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def _family(args) -> int:
    params = family_params(args.n, args.k, args.c, args.multiplier)
    if args.command == "verify-family" or getattr(args, "verify", False):
        report = verify_family(params)
        if report.covered:
            print(f"covered count={params.size}")
            return EXIT_YES
        subset, colors = report.counterexample
        print(f"uncovered count={params.size} subset={','.join(map(str, subset))} "
              f"colors={','.join(map(str, colors))}")
        return EXIT_NO
    for line in dump_family(params):
        print(line)
    return EXIT_YES


def _bench(args) -> int:
    if not args.args:
        raise UsageError("bench needs a problem subcommand, e.g. bench --runs 3 matching --input g.gr --k 3")
    inner = build_parser().parse_args(args.args)
    if inner.command not in GRAPH_PROBLEMS:
        raise UsageError(f"bench cannot time {inner.command!r}")
    g = read_graph(inner.input)
    for run in range(1, args.runs + 1):
        t0 = time.perf_counter()
        out = solve(inner, g)
        wall = (time.perf_counter() - t0) * 1000.0
        row = {
            "run": run,
            "problem": inner.command,
            "answer": out.answer,
            "wall_millis": round(wall, 3),
            "family_size": out.stats.family_size,
            "colorings_checked": out.stats.colorings_checked,
            "threads": out.stats.threads,
        }
        print(json.dumps(row, sort_keys=True))
    return EXIT_YES


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("family", "verify-family"):
            return _family(args)
        if args.command == "bench":
            return _bench(args)
        g = read_graph(args.input)
        out = solve(args, g)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (GraphParseError, ParaccError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(result_document(args.command, out), sort_keys=True))
    else:
        print(_human(args.command, out, args.witness))
    return EXIT_YES if out.answer else EXIT_NO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
