"""Reading and writing graphs as JSON documents or Graphviz DOT.

JSON document::

    {"nodes": ["0", "1"], "colors": ["a"],
     "edges": [["0", "1", "a"], ["1", "0", "a"]],
     "unobservable": [["1", "0"]],          # optional
     "node_colors": {"0": "a", "1": "a"}}   # optional

With ``node_colors`` present, edges are ``[from, to]`` pairs and every edge
takes the color of its head node. A document with ``"colors": []`` and pair
edges is an uncolored :class:`~observa.graph.Digraph`.

DOT: ``label`` on an edge is its color; an unlabeled edge is unobservable.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .graph import ColoredDigraph, Digraph, GraphError

__all__ = [
    "ParseError", "parse", "serialize", "parse_json", "to_json_doc", "to_json",
    "parse_dot", "to_dot", "parse_any", "digraph_to_json_doc", "loads_document",
]

# keys written by the generators alongside the graph; ignored on input
_SIDE_KEYS = {"node_roles", "metadata"}


class ParseError(ValueError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def _expect(cond: bool, message: str, location: str) -> None:
    if not cond:
        raise ParseError(message, location)


def _str_list(doc: dict, key: str) -> list[str]:
    val = doc.get(key)
    _expect(isinstance(val, list), f"{key!r} must be an array", key)
    for i, x in enumerate(val):
        _expect(isinstance(x, str), "must be a string", f"{key}[{i}]")
    return val


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    _expect(isinstance(doc, dict), "top level must be an object", "document")
    return doc


def _index(table: dict[str, int], label: Any, what: str, loc: str) -> int:
    _expect(isinstance(label, str), f"{what} must be a string", loc)
    _expect(label in table, f"undeclared {what} {label!r}", loc)
    return table[label]


def is_uncolored_doc(doc: dict) -> bool:
    return doc.get("colors") == [] and "node_colors" not in doc


def parse_json(text: str | dict) -> ColoredDigraph:
    doc = loads_document(text) if isinstance(text, str) else text
    unknown = set(doc) - {"nodes", "colors", "edges", "unobservable", "node_colors"} - _SIDE_KEYS
    _expect(not unknown, f"unknown keys {sorted(unknown)}", "document")
    nodes = _str_list(doc, "nodes")
    colors = _str_list(doc, "colors")
    ni = {lab: i for i, lab in enumerate(nodes)}
    ci = {lab: i for i, lab in enumerate(colors)}
    _expect(len(ni) == len(nodes), "duplicate node label", "nodes")
    _expect(len(ci) == len(colors), "duplicate color label", "colors")
    raw_edges = doc.get("edges", [])
    _expect(isinstance(raw_edges, list), "'edges' must be an array", "edges")

    node_colors = doc.get("node_colors")
    head_color: dict[int, int] | None = None
    if node_colors is not None:
        _expect(isinstance(node_colors, dict), "'node_colors' must be an object", "node_colors")
        head_color = {}
        for lab, col in node_colors.items():
            loc = f"node_colors[{lab!r}]"
            head_color[_index(ni, lab, "node", loc)] = _index(ci, col, "color", loc)

    edges = []
    for i, e in enumerate(raw_edges):
        loc = f"edges[{i}]"
        _expect(isinstance(e, list), "edge must be an array", loc)
        if head_color is not None:
            _expect(len(e) == 2, "edge must be a [from, to] pair when node_colors is given", loc)
            u, v = (_index(ni, x, "node", loc) for x in e)
            _expect(v in head_color, f"node {e[1]!r} has no color", loc)
            edges.append((u, v, head_color[v]))
        else:
            _expect(len(e) == 3, "edge must be a [from, to, color] triple", loc)
            u = _index(ni, e[0], "node", loc)
            v = _index(ni, e[1], "node", loc)
            edges.append((u, v, _index(ci, e[2], "color", loc)))

    unobs = []
    for i, e in enumerate(doc.get("unobservable", [])):
        loc = f"unobservable[{i}]"
        _expect(isinstance(e, list) and len(e) == 2, "must be a [from, to] pair", loc)
        unobs.append(tuple(_index(ni, x, "node", loc) for x in e))
    # node-colored input legitimately repeats nothing; colored duplicates are kept for validate()
    return ColoredDigraph(tuple(nodes), tuple(colors), tuple(edges), tuple(unobs))


def parse_digraph_json(text: str | dict) -> Digraph:
    doc = loads_document(text) if isinstance(text, str) else text
    nodes = _str_list(doc, "nodes")
    ni = {lab: i for i, lab in enumerate(nodes)}
    _expect(len(ni) == len(nodes), "duplicate node label", "nodes")
    edges = []
    for i, e in enumerate(doc.get("edges", [])):
        loc = f"edges[{i}]"
        _expect(isinstance(e, list) and len(e) in (2, 3), "edge must be an array of 2 or 3", loc)
        edges.append((_index(ni, e[0], "node", loc), _index(ni, e[1], "node", loc)))
    return Digraph.build(nodes, edges)


def to_json_doc(graph: ColoredDigraph) -> dict:
    nl, cl = graph.node_labels, graph.color_labels
    doc: dict[str, Any] = {
        "nodes": list(nl),
        "colors": list(cl),
        "edges": [[nl[u], nl[v], cl[c]] for u, v, c in graph.edges],
    }
    if graph.unobservable:
        doc["unobservable"] = [[nl[u], nl[v]] for u, v in graph.unobservable]
    return doc


def digraph_to_json_doc(graph: Digraph) -> dict:
    nl = graph.node_labels
    return {"nodes": list(nl), "colors": [], "edges": [[nl[u], nl[v]] for u, v in graph.edges]}


def to_json(graph: ColoredDigraph | Digraph, indent: int | None = None) -> str:
    doc = digraph_to_json_doc(graph) if isinstance(graph, Digraph) else to_json_doc(graph)
    return json.dumps(doc, indent=indent, ensure_ascii=False)


# --- DOT -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>//[^\n]*|\#[^\n]*|/\*.*?\*/)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<arrow>->|--)
  | (?P<punct>[{}\[\];,=:])
  | (?P<id>[A-Za-z_\x80-￿][A-Za-z_0-9\x80-￿]*|-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
    """,
    re.VERBOSE | re.DOTALL,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos, line = 0, 1
    while pos < len(text):
        mo = _TOKEN.match(text, pos)
        if mo is None:
            raise ParseError(f"unexpected character {text[pos]!r}", f"line {line}")
        kind, val = mo.lastgroup, mo.group()
        if kind == "string":
            tokens.append(("id", re.sub(r'\\(.)', r'\1', val[1:-1]), line))
        elif kind in ("arrow", "punct", "id"):
            tokens.append((kind, val, line))
        line += val.count("\n")
        pos = mo.end()
    return tokens


class _DotParser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def loc(self) -> str:
        tok = self.peek()
        return f"line {tok[2]}" if tok else "end of input"

    def take(self, kind: str | None = None, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = tok[1] if tok else "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", self.loc())
        self.i += 1
        return tok[1]

    def at(self, value: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] != "id" and tok[1] == value

    def attrs(self) -> dict[str, str]:
        out = {}
        while self.at("["):
            self.take()
            while not self.at("]"):
                key = self.take("id")
                self.take(value="=")
                out[key] = self.take("id")
                if self.at(",") or self.at(";"):
                    self.take()
            self.take(value="]")
        return out

    def graph(self):
        if self.peek() and self.peek()[1] == "strict":
            self.take()
        if self.take("id") != "digraph":
            raise ParseError("only 'digraph' is supported", self.loc())
        if self.peek() and self.peek()[0] == "id":
            self.take()
        self.take(value="{")
        nodes: list[str] = []
        seen: set[str] = set()
        edges: list[tuple[str, str, str | None, str]] = []
        graph_attrs: dict[str, str] = {}

        def declare(name: str) -> None:
            if name not in seen:
                seen.add(name)
                nodes.append(name)

        while not self.at("}"):
            if self.at(";"):
                self.take()
                continue
            line = self.loc()
            first = self.take("id")
            if first in ("graph", "node", "edge") and self.at("["):
                attrs = self.attrs()
                if first == "graph":
                    graph_attrs.update(attrs)
            elif self.at("="):
                self.take()
                graph_attrs[first] = self.take("id")
            else:
                chain = [first]
                while self.peek() and self.peek()[0] == "arrow":
                    if self.take() != "->":
                        raise ParseError("undirected edge in digraph", line)
                    chain.append(self.take("id"))
                attrs = self.attrs()
                for name in chain:
                    declare(name)
                for a, b in zip(chain, chain[1:]):
                    edges.append((a, b, attrs.get("label"), line))
            if self.at(";"):
                self.take()
        self.take(value="}")
        if self.peek() is not None:
            raise ParseError("trailing content after graph", self.loc())
        return nodes, edges, graph_attrs


def parse_dot(text: str) -> ColoredDigraph:
    nodes, edges, gattrs = _DotParser(text).graph()
    colors: list[str] = []
    if "colors" in gattrs:
        try:
            colors = json.loads(gattrs["colors"])
        except json.JSONDecodeError:
            raise ParseError("graph attribute 'colors' must be a JSON array", "graph") from None
        if not (isinstance(colors, list) and all(isinstance(c, str) for c in colors)):
            raise ParseError("graph attribute 'colors' must be a JSON array of strings", "graph")
    for _, _, col, _ in edges:
        if col is not None and col not in colors:
            colors.append(col)
    ni = {lab: i for i, lab in enumerate(nodes)}
    ci = {lab: i for i, lab in enumerate(colors)}
    colored, silent = [], []
    for a, b, col, _ in edges:
        if col is None:
            silent.append((ni[a], ni[b]))
        else:
            colored.append((ni[a], ni[b], ci[col]))
    return ColoredDigraph(tuple(nodes), tuple(colors), tuple(colored), tuple(silent))


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: ColoredDigraph, name: str = "G") -> str:
    nl, cl = graph.node_labels, graph.color_labels
    lines = [f"digraph {_dot_id(name)} {{",
             f"  colors={_dot_id(json.dumps(list(cl), ensure_ascii=False))};"]
    lines += [f"  {_dot_id(lab)};" for lab in nl]
    for u, v, c in graph.edges:
        lines.append(f"  {_dot_id(nl[u])} -> {_dot_id(nl[v])} [label={_dot_id(cl[c])}];")
    for u, v in graph.unobservable:
        lines.append(f"  {_dot_id(nl[u])} -> {_dot_id(nl[v])} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- front door --------------------------------------------------------------

def parse(text: str, format: str = "json") -> ColoredDigraph:
    if format == "json":
        return parse_json(text)
    if format == "dot":
        return parse_dot(text)
    raise ValueError(f"unknown format {format!r}")


def serialize(graph: ColoredDigraph, format: str = "json") -> str:
    if format == "json":
        return to_json(graph)
    if format == "dot":
        return to_dot(graph)
    raise ValueError(f"unknown format {format!r}")


def sniff_format(text: str) -> str:
    return "json" if text.lstrip().startswith("{") else "dot"


def parse_any(text: str) -> ColoredDigraph | Digraph:
    """Parse JSON or DOT; uncolored JSON documents come back as :class:`Digraph`."""
    if sniff_format(text) == "dot":
        return parse_dot(text)
    doc = loads_document(text)
    if is_uncolored_doc(doc):
        try:
            return parse_digraph_json(doc)
        except GraphError as exc:
            raise ParseError(str(exc), "edges") from None
    return parse_json(doc)
