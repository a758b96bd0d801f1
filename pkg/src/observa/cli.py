"""``observa`` command line.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 input
error, 3 budget exceeded.

Environment: ``OBSERVA_BUDGET`` caps search nodes for ``design`` and word
extensions for ``check --oracle``; ``OBSERVA_TIME_BUDGET`` caps ``design``
wall-clock seconds.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import analysis, design, generators, io, oracle, tracker
from .graph import ColoredDigraph, Digraph, GraphError, epsilon_closure, validate

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_colored(path: str, close: bool = True) -> ColoredDigraph:
    """Parse and validate; uncolored documents get a single placeholder color."""
    g = io.parse_any(_read(path))
    if isinstance(g, Digraph):
        g = g.with_single_color()
    report = validate(g)
    if not report.ok:
        raise GraphError("; ".join(f"{i.location}: {i.message}" for i in report.issues
                                   if i.severity == "error"))
    return epsilon_closure(g) if close else g


def load_uncolored(path: str) -> Digraph:
    g = io.parse_any(_read(path))
    if isinstance(g, ColoredDigraph):
        report = validate(g)
        if not report.ok:
            raise GraphError(report.issues[0].message)
        g = Digraph.of(epsilon_closure(g))
    return g


def parse_word(graph: ColoredDigraph, text: str) -> tuple[int, ...]:
    """Comma-separated labels, or one character per color when every label is
    a single character."""
    if text == "":
        return ()
    if "," in text:
        parts = text.split(",")
    elif all(len(c) == 1 for c in graph.color_labels):
        parts = list(text)
    else:
        parts = [text]
    return graph.word_from_labels(parts)


def _fmt_set(graph: ColoredDigraph, nodes) -> str:
    return "{" + ", ".join(graph.node_labels[v] for v in sorted(nodes)) + "}"


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, doc: dict, text: str) -> None:
        if self.fmt == "json":
            print(json.dumps(doc, ensure_ascii=False, sort_keys=True))
        else:
            print(text)


# --- subcommands -----------------------------------------------------------------

def cmd_validate(args, out: Output) -> int:
    g = io.parse_any(_read(args.input))
    if isinstance(g, Digraph):
        g = g.with_single_color()
    report = validate(g)
    issues = [{"severity": i.severity, "message": i.message, "location": i.location}
              for i in report.issues]
    lines = [f"{i['severity']}: {i['location']}: {i['message']}" for i in issues]
    out.emit({"ok": report.ok, "issues": issues},
             "\n".join(["ok" if report.ok else "invalid"] + lines))
    return OK if report.ok else NEGATIVE


def _oracle_budget() -> oracle.OracleBudget:
    words = int(os.environ.get("OBSERVA_BUDGET", oracle.DEFAULT_BUDGET.max_word_count))
    return oracle.OracleBudget(max_word_length=10_000, max_word_count=words)


def cmd_check(args, out: Output) -> int:
    g = load_colored(args.input)
    prop = args.property or "observable"
    witness = None
    if prop == "observable":
        verdict, witness = analysis.is_observable(g)
    elif prop == "partly":
        verdict, witness = analysis.is_partly_observable(g)
    else:
        verdict = analysis.is_partly_aposteriori_observable(g)
    doc = {"property": prop, "verdict": verdict,
           "witness": witness.to_json(g) if witness else None}
    text = f"{prop}: {'yes' if verdict else 'no'}"
    if witness is not None:
        text += f"\nwitness: {witness.describe(g)}"
    if args.oracle:
        if prop == "aposteriori":
            raise UsageError("--oracle covers --observable and --partly only")
        check = oracle.oracle_is_observable if prop == "observable" else oracle.oracle_is_partly_observable
        agree = check(g, _oracle_budget())
        doc["oracle"] = agree
        text += f"\noracle: {'yes' if agree else 'no'}"
        if agree != verdict:
            raise analysis.InternalError(f"oracle disagrees: oracle={agree}, algorithm={verdict}")
    out.emit(doc, text)
    return OK if verdict else NEGATIVE


def cmd_min_time(args, out: Output) -> int:
    g = load_colored(args.input)
    if args.partial:
        t = analysis.min_partial_observation_time(g)
    else:
        t = analysis.min_observation_time(g)
    prop = "partly observable" if args.partial else "observable"
    out.emit({"partial": args.partial, "min_time": t},
             str(t) if t is not None else f"none (not {prop})")
    return OK if t is not None else NEGATIVE


def cmd_track(args, out: Output) -> int:
    g = load_colored(args.input)
    word = parse_word(g, args.word)
    start = None
    if args.start:
        start = [g.node_index(s) for s in args.start.split(",")]
    states = tracker.track(g, word, start)
    times = [s.step for s in states[1:] if len(s.possible) <= 1]
    lines = []
    for s in states:
        sym = "" if s.step == 0 else f" after {g.color_labels[word[s.step - 1]]}"
        lines.append(f"t={s.step}{sym}: {_fmt_set(g, s.possible)}")
    lines.append("localized at: " + (", ".join(map(str, times)) if times else "never"))
    doc = {"word": g.word_labels(word),
           "steps": [{"t": s.step, "possible": [g.node_labels[v] for v in sorted(s.possible)]}
                     for s in states],
           "localization_times": times}
    out.emit(doc, "\n".join(lines))
    return OK


def _emit_graph(g, fmt: str, extra: dict | None = None) -> None:
    if fmt == "dot":
        if isinstance(g, Digraph):
            g = g.with_single_color()
        sys.stdout.write(io.to_dot(g))
        return
    doc = io.digraph_to_json_doc(g) if isinstance(g, Digraph) else io.to_json_doc(g)
    if extra:
        doc.update(extra)
    print(json.dumps(doc, ensure_ascii=False))


def cmd_des_close(args, out: Output) -> int:
    _emit_graph(load_colored(args.input), args.format)
    return OK


def cmd_convert(args, out: Output) -> int:
    g = io.parse_any(_read(args.input))
    if isinstance(g, ColoredDigraph):
        report = validate(g)
        if not report.ok:
            raise GraphError(report.issues[0].message)
    _emit_graph(g, args.to)
    return OK


def cmd_gen(args, out: Output) -> int:
    fam, params = args.family, args.params

    def need(k: int) -> list[str]:
        if len(params) != k:
            raise UsageError(f"gen {fam} takes {k} parameter(s)")
        return params

    fmt = "dot" if args.format == "dot" else "json"
    if fam == "worst-case":
        (n,) = need(1)
        _emit_graph(generators.worst_case_family(int(n)), fmt)
    elif fam == "named":
        (name,) = need(1)
        _emit_graph(generators.named_example(name), fmt)
    elif fam == "random":
        n, m, p, seed = need(4)
        _emit_graph(generators.random_colored_graph(int(n), int(m), float(p), int(seed)), fmt)
    elif fam in ("reduce-3col", "reduce-triangle"):
        (src,) = need(1)
        ug = _load_undirected(src)
        if fam == "reduce-3col":
            art = generators.reduce_3colorability(ug)
        else:
            art = generators.reduce_monochromatic_triangle(ug, args.levels)
        meta = {k: v for k, v in art.metadata.items() if isinstance(v, int)}
        _emit_graph(art.output, fmt, {"node_roles": art.node_roles, "metadata": meta})
    else:
        raise UsageError(f"unknown family {fam!r}")
    return OK


def _load_undirected(src: str) -> generators.UndirectedGraph:
    if os.path.exists(src) or src == "-":
        doc = io.loads_document(_read(src))
        nodes = doc.get("nodes", [])
        index = {str(v): i for i, v in enumerate(nodes)}
        try:
            edges = [(index[str(a)], index[str(b)]) for a, b in doc.get("edges", [])]
        except (KeyError, ValueError, TypeError):
            raise io.ParseError("edges must be [u, v] pairs of declared nodes", "edges") from None
        return generators.UndirectedGraph.build(range(len(nodes)), edges)
    return generators.undirected_by_name(src)


def cmd_design(args, out: Output) -> int:
    g = load_uncolored(args.input)
    budget = design.DesignBudget(
        int(os.environ.get("OBSERVA_BUDGET", design.DesignBudget.max_nodes)),
        float(os.environ.get("OBSERVA_TIME_BUDGET", design.DesignBudget.max_seconds)))
    if args.k is not None:
        res = design.SOLVERS[args.target](g, args.k, budget)
    else:
        res = design.minimum_colors(g, args.target, budget)
    doc = res.to_json(g)
    doc["target"] = args.target
    lines = [f"status: {res.status}"]
    if res.k is not None and res.feasible:
        lines.append(f"k: {res.k}")
    if res.assignment is not None:
        for key, c in doc["assignment"].items():
            lines.append(f"  {key}: {c}")
    if res.largest_infeasible is not None:
        lines.append(f"largest infeasible k: {res.largest_infeasible}")
    lines.append(f"search nodes: {res.nodes_explored}")
    out.emit(doc, "\n".join(lines))
    return {design.FEASIBLE: OK, design.INFEASIBLE: NEGATIVE, design.BUDGET: BUDGET}[res.status]


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "dot"], default="text",
                        help="output format (default: text)")
    p = argparse.ArgumentParser(prog="observa",
                                description="Observability of edge-colored directed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="report structural problems")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="decide an observability property")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--observable", dest="property", action="store_const", const="observable")
    grp.add_argument("--partly", dest="property", action="store_const", const="partly")
    grp.add_argument("--aposteriori", dest="property", action="store_const", const="aposteriori")
    s.add_argument("--oracle", action="store_true",
                   help="cross-check with brute-force word enumeration (small graphs)")
    s.add_argument("input")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("min-time", parents=[common], help="minimal localization time")
    s.add_argument("--partial", action="store_true")
    s.add_argument("input")
    s.set_defaults(func=cmd_min_time)

    s = sub.add_parser("track", parents=[common], help="possible positions along a word")
    s.add_argument("input")
    s.add_argument("word")
    s.add_argument("--start", help="comma-separated start nodes (default: all)")
    s.set_defaults(func=cmd_track)

    s = sub.add_parser("des-close", parents=[common], help="eliminate unobservable edges")
    s.add_argument("input")
    s.set_defaults(func=cmd_des_close)

    s = sub.add_parser("gen", parents=[common], help="generate an instance")
    s.add_argument("family", choices=["worst-case", "named", "random", "reduce-3col",
                                      "reduce-triangle"])
    s.add_argument("params", nargs="*")
    s.add_argument("--levels", type=int, default=None,
                   help="connector levels for reduce-triangle (default N+3)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("design", parents=[common], help="search for a coloring")
    s.add_argument("target", choices=list(design.SOLVERS))
    s.add_argument("input")
    grp = s.add_mutually_exclusive_group()
    grp.add_argument("--k", type=int)
    grp.add_argument("--min", action="store_true", help="smallest feasible k (default)")
    s.set_defaults(func=cmd_design)

    s = sub.add_parser("convert", parents=[common], help="re-serialize a graph")
    s.add_argument("input")
    s.add_argument("--to", choices=["json", "dot"], required=True)
    s.set_defaults(func=cmd_convert)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    out = Output(args.format)

    def fail(code: int, kind: str, msg: str) -> int:
        if args.format == "json":
            print(json.dumps({"error": kind, "message": msg}), file=sys.stderr)
        else:
            print(f"observa: {kind}: {msg}", file=sys.stderr)
        return code

    try:
        return args.func(args, out)
    except (io.ParseError, GraphError, UsageError, ValueError) as exc:
        return fail(INPUT_ERROR, type(exc).__name__, str(exc))
    except oracle.BudgetExceeded as exc:
        return fail(BUDGET, "BudgetExceeded", str(exc))


def main() -> None:
    sys.exit(run())
