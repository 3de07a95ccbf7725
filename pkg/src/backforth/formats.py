"""Vertex names, JSON graph/report files and DOT export.

Vertex names: ``s``, ``t_1``, ``s_0.13.2`` (dot-separated digits, so
``k >= 6`` stays unambiguous), ``v_3`` for contracted blocks, and
``m(<gadget>/<rule>/<copy>[/<part>])`` for subdivision midpoints.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from collections import defaultdict
from typing import Any, Hashable

from backforth.graphcore import EdgeRef, Midpoint, MultiDigraph, PathWitness, Vertex

FORMAT_VERSION = 1

_VERTEX_RE = re.compile(r"^([stv])(?:_(\d+(?:\.\d+)*))?$")
_MID_RE = re.compile(r"^m\(((?:\d+(?:\.\d+)*)?)/(\d+)/(\d+)(?:/([\w.]+))?\)$")


class FormatError(ValueError):
    pass


def _digits(text: str) -> tuple[int, ...]:
    return tuple(int(d) for d in text.split(".")) if text else ()


def render_edge_id(e: EdgeRef) -> str:
    base = f"{'.'.join(map(str, e.gadget))}/{e.rule}/{e.copy}"
    return f"{base}/{e.part}" if e.part else base


def render_vertex(v: Hashable) -> str:
    if isinstance(v, Vertex):
        return v.role if not v.address else f"{v.role}_{'.'.join(map(str, v.address))}"
    if isinstance(v, Midpoint):
        return f"m({render_edge_id(v.edge)})"
    raise FormatError(f"cannot name vertex {v!r}")


def parse_vertex(name: str, k: int | None = None) -> Hashable:
    m = _VERTEX_RE.match(name.strip())
    if m:
        role, digits = m.group(1), _digits(m.group(2) or "")
        if k is not None and any(d >= 2 * k for d in digits):
            raise FormatError(f"{name!r}: digit outside 0..{2 * k - 1}")
        if role == "v" and len(digits) != 1:
            raise FormatError(f"{name!r}: block names take exactly one index")
        return Vertex(role, digits)
    m = _MID_RE.match(name.strip())
    if m:
        return Midpoint(EdgeRef(_digits(m.group(1)), int(m.group(2)), int(m.group(3)), m.group(4) or ""))
    raise FormatError(f"unparseable vertex name {name!r}")


def edge_to_dict(e: EdgeRef) -> dict[str, Any]:
    d: dict[str, Any] = {"gadget": list(e.gadget), "rule": e.rule, "copy": e.copy}
    if e.part:
        d["part"] = e.part
    return d


def edge_from_dict(d: dict[str, Any]) -> EdgeRef:
    try:
        return EdgeRef(tuple(int(x) for x in d["gadget"]), int(d["rule"]), int(d.get("copy", 0)), str(d.get("part", "")))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad edge record {d!r}") from exc


def graph_to_dict(g: MultiDigraph) -> dict[str, Any]:
    edges = []
    for e in g.edges:
        rec = edge_to_dict(e)
        rec["tail"] = render_vertex(g.ends[e][0])
        rec["head"] = render_vertex(g.ends[e][1])
        edges.append(rec)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "graph",
        "k": g.k,
        "depth": g.depth,
        "vertices": [render_vertex(v) for v in g.vertices],
        "edges": edges,
    }


def graph_from_dict(d: dict[str, Any]) -> MultiDigraph:
    if d.get("kind") != "graph":
        raise FormatError("not a graph document")
    if d.get("format_version") != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {d.get('format_version')!r}")
    k = d.get("k")
    vertices = [parse_vertex(n, k) for n in d["vertices"]]
    edges = [(edge_from_dict(r), parse_vertex(r["tail"], k), parse_vertex(r["head"], k)) for r in d["edges"]]
    try:
        return MultiDigraph(vertices, edges, k=k, depth=d.get("depth"))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def witness_to_dict(w: PathWitness) -> dict[str, Any]:
    return {
        "from": render_vertex(w.source),
        "to": render_vertex(w.target),
        "length": len(w),
        "vertices": [render_vertex(v) for v in w.vertices],
        "edges": [edge_to_dict(e) for e in w.edges],
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_text(path: str, text: str) -> None:
    """Write via a temporary file and rename, so readers never see half a file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_graph(path: str, g: MultiDigraph) -> None:
    write_text(path, dumps(graph_to_dict(g)))


def read_graph(path: str) -> MultiDigraph:
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    return graph_from_dict(doc)


def read_edge_set(path: str) -> list[EdgeRef]:
    """A deletion file: a JSON list of edge records, or ``{"edges": [...]}``."""
    with open(path) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
    records = doc.get("edges") if isinstance(doc, dict) else doc
    if not isinstance(records, list):
        raise FormatError(f"{path}: expected a list of edges")
    return [edge_from_dict(r) for r in records]


def to_dot(g: MultiDigraph, name: str = "D") -> str:
    """DOT text; a bundle of parallel edges is drawn once, bold, with its multiplicity."""
    bundles: dict[tuple, int] = defaultdict(int)
    for e in g.edges:
        bundles[g.ends[e]] += 1
    lines = [f"digraph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{render_vertex(v)}";')
    for (a, b), m in bundles.items():
        attrs = f' [style=bold, label="x{m}"]' if m > 1 else ""
        lines.append(f'  "{render_vertex(a)}" -> "{render_vertex(b)}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"
