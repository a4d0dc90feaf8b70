"""Text formats for instances, solutions and kernel traces.

Instance files::

    c <comment>
    p dce <n> <m> <d> <k>
    v <id> <delta>          (optional, delta defaults to d)
    e <u> <v>

Vertex ids run from 1 to n.  Plain graphs use the header ``p edge <n> <m>``.
Solution files hold ``s YES|NO`` followed by ``d <u> <v>`` and
``a <u> <v>`` lines, deletions first, each block sorted.  Kernel traces
are written one JSON object per line.
"""
from __future__ import annotations

import json
from typing import Iterable

from .graph import EditInstance, EditSet, Graph, GraphError, Pair, pair
from .kernel import TraceEntry


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _tokens(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = []
        col = 0
        for part in raw.split():
            col = raw.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if not toks or toks[0][1] == "c":
            continue
        yield no, toks


def _ints(no: int, toks, count: int) -> list[int]:
    if len(toks) != count + 1:
        col = toks[-1][0] if toks else 1
        raise ParseError(f"expected {count} integers after {toks[0][1]!r}", no, col)
    out = []
    for col, tok in toks[1:]:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", no, col) from None
    return out


def _parse(text: str, allow_dce: bool, allow_edge: bool):
    header = None
    deltas: dict[int, int] = {}
    edges: list[Pair] = []
    seen: set[Pair] = set()
    n = d = k = m = None
    last = 0
    for no, toks in _tokens(text):
        last = no
        kind = toks[0][1]
        if kind == "p":
            if header is not None:
                raise ParseError("second header line", no)
            if len(toks) < 2:
                raise ParseError("incomplete header", no)
            fmt = toks[1][1]
            if fmt == "dce" and allow_dce:
                n, m, d, k = _ints(no, toks[1:], 4)
            elif fmt == "edge" and allow_edge:
                n, m = _ints(no, toks[1:], 2)
            else:
                raise ParseError(f"unsupported format {fmt!r}", no, toks[1][0])
            if min(n, m) < 0 or (d is not None and min(d, k) < 0):
                raise ParseError("negative header value", no)
            header = fmt
            continue
        if header is None:
            raise ParseError("line before the header", no)
        if kind == "v":
            if header != "dce":
                raise ParseError("vertex lines need a dce header", no)
            v, x = _ints(no, toks, 2)
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", no, toks[1][0])
            if v in deltas:
                raise ParseError(f"second delta for vertex {v}", no, toks[1][0])
            if not 0 <= x <= d:
                raise ParseError(f"delta {x} outside 0..{d}", no, toks[2][0])
            deltas[v] = x
        elif kind == "e":
            u, v = _ints(no, toks, 2)
            for (col, _), x in zip(toks[1:], (u, v)):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex {x} out of range 1..{n}", no, col)
            if u == v:
                raise ParseError(f"loop at vertex {u}", no, toks[1][0])
            e = pair(u, v)
            if e in seen:
                raise ParseError(f"duplicate edge {u} {v}", no, toks[1][0])
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"unknown line type {kind!r}", no, toks[0][0])
    if header is None:
        raise ParseError("missing header", max(last, 1))
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}", max(last, 1))
    graph = Graph(range(1, n + 1), edges)
    return header, graph, deltas, d, k


def parse_instance(text: str) -> EditInstance:
    _, graph, deltas, d, k = _parse(text, allow_dce=True, allow_edge=False)
    delta = {v: deltas.get(v, d) for v in graph.vertices}
    return EditInstance(graph, delta, d, k)


def parse_graph(text: str) -> Graph:
    """Graph from either a ``p edge`` or a ``p dce`` file."""
    return _parse(text, allow_dce=True, allow_edge=True)[1]


def relabel(inst: EditInstance) -> tuple[EditInstance, dict[int, int]]:
    """Dense relabelling onto 1..n in id order; returns ``(inst', new -> old)``."""
    order = inst.graph.sorted_vertices()
    new = {v: i for i, v in enumerate(order, start=1)}
    g = Graph(new.values(), [(new[u], new[v]) for u, v in inst.graph.edges])
    delta = {new[v]: x for v, x in inst.delta.items()}
    return EditInstance(g, delta, inst.d, inst.k), {i: v for v, i in new.items()}


def write_instance(inst: EditInstance, comments: Iterable[str] = ()) -> str:
    n = inst.graph.n
    if inst.graph.vertices != frozenset(range(1, n + 1)):
        raise GraphError("vertex ids must be 1..n; relabel first")
    lines = [f"c {c}" for c in comments]
    lines.append(f"p dce {n} {inst.graph.m} {inst.d} {inst.k}")
    lines += [f"v {v} {inst.delta[v]}" for v in range(1, n + 1) if inst.delta[v] != inst.d]
    lines += [f"e {u} {v}" for u, v in inst.graph.sorted_edges()]
    return "\n".join(lines) + "\n"


def write_graph(graph: Graph) -> str:
    lines = [f"p edge {graph.n} {graph.m}"]
    lines += [f"e {u} {v}" for u, v in graph.sorted_edges()]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# solutions


def write_solution(edits: EditSet | None, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    if edits is None:
        lines.append("s NO")
    else:
        deleted, added = edits.sorted()
        lines.append("s YES")
        lines += [f"d {u} {v}" for u, v in deleted]
        lines += [f"a {u} {v}" for u, v in added]
    return "\n".join(lines) + "\n"


def solution_json(edits: EditSet | None) -> str:
    if edits is None:
        return json.dumps({"answer": "NO"})
    deleted, added = edits.sorted()
    return json.dumps({"answer": "YES", "deleted": [list(e) for e in deleted],
                       "added": [list(e) for e in added]})


def parse_solution(text: str) -> EditSet | None:
    """Edit set of a YES file, None for a NO file."""
    answer = None
    deleted: list[Pair] = []
    added: list[Pair] = []
    for no, toks in _tokens(text):
        kind = toks[0][1]
        if kind == "s":
            if answer is not None:
                raise ParseError("second status line", no)
            if len(toks) != 2 or toks[1][1] not in ("YES", "NO"):
                raise ParseError("status must be YES or NO", no, toks[0][0])
            answer = toks[1][1]
        elif kind in ("d", "a"):
            if answer != "YES":
                raise ParseError("edit line without a preceding 's YES'", no)
            u, v = _ints(no, toks, 2)
            if u == v:
                raise ParseError(f"loop at vertex {u}", no, toks[1][0])
            (deleted if kind == "d" else added).append(pair(u, v))
        else:
            raise ParseError(f"unknown line type {kind!r}", no, toks[0][0])
    if answer is None:
        raise ParseError("missing status line", 1)
    if answer == "NO":
        return None
    if len(set(deleted)) != len(deleted) or len(set(added)) != len(added):
        raise ParseError("repeated edit", 1)
    try:
        return EditSet(frozenset(deleted), frozenset(added))
    except GraphError as exc:
        raise ParseError(str(exc), 1) from None


# ---------------------------------------------------------------------------
# kernel traces


def format_trace(trace: Iterable[TraceEntry]) -> str:
    lines = []
    for e in trace:
        lines.append(json.dumps({
            "rule": e.rule, "target": list(e.target), "removed": list(e.removed),
            "added": list(e.added), "edges": [list(x) for x in e.edges],
            "delta": [list(x) for x in e.delta], "info": e.info,
        }, sort_keys=True))
    return "".join(line + "\n" for line in lines)


def parse_trace(text: str) -> list[TraceEntry]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, no, exc.colno) from None
        out.append(TraceEntry(
            obj["rule"], tuple(obj["target"]), tuple(obj["removed"]), tuple(obj["added"]),
            tuple(tuple(x) for x in obj["edges"]), tuple(tuple(x) for x in obj["delta"]),
            obj.get("info", "")))
    return out
