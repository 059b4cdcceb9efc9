"""Stable file formats: the drawing document, plus DOT/GraphML export.

One JSON schema serves plain graphs and full drawings (the drawing section
is optional).  Serialization is canonical -- sorted keys, sorted id lists,
rotations rotated to start at their smallest entry -- so equal objects
produce identical bytes and ``parse(serialize(x)) == x``.

Unknown fields are rejected at the current format version, and any document
whose drawing section fails structural validation is refused with a field
diagnostic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .drawings import TopologicalDrawing, validate
from .graphs import EmbeddedGraph, Graph

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed or invalid document; the message names the offending field."""


# ---------------------------------------------------------------------------
# Building dictionaries
# ---------------------------------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    edges = []
    for e in sorted(g.edges, key=lambda e: e.id):
        entry: dict[str, Any] = {"id": e.id, "u": e.u, "v": e.v}
        label = g.label(e.id)
        if label is not None:
            entry["label"] = label
        edges.append(entry)
    return {"vertices": sorted(g.vertices), "edges": edges}


def _rotation_entry(d: TopologicalDrawing, vertex: str, dart) -> list:
    sid, end = dart
    if "|s" in sid:
        base, idx = sid.rsplit("|s", 1)
        return [base, int(idx)]
    return [sid, 0]


def drawing_to_dict(d: TopologicalDrawing, meta: Optional[Mapping] = None) -> dict:
    rotations = {}
    for v in d.skeleton.graph.vertices:
        rot = [_rotation_entry(d, v, dart) for dart in d.skeleton.rotation(v)]
        if rot:
            k = rot.index(min(rot))
            rot = rot[k:] + rot[:k]
        rotations[v] = rot
    doc = {
        "format": FORMAT_VERSION,
        "kind": "drawing-document",
        "graph": graph_to_dict(d.base),
        "drawing": {
            "crossings": [
                {"id": x, "edges": sorted(pair)}
                for x, pair in sorted(d.crossings.items())
            ],
            "edge_paths": {e: list(p) for e, p in sorted(d.edge_paths.items())},
            "rotations": rotations,
            "outer_face": d.skeleton.outer_face,
        },
        "meta": dict(meta or {}),
    }
    return doc


def graph_document(g: Graph, meta: Optional[Mapping] = None) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "drawing-document",
        "graph": graph_to_dict(g),
        "drawing": None,
        "meta": dict(meta or {}),
    }


def serialize(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParsedDocument:
    graph: Graph
    drawing: Optional[TopologicalDrawing]
    meta: dict

    def to_dict(self) -> dict:
        if self.drawing is not None:
            return drawing_to_dict(self.drawing, self.meta)
        return graph_document(self.graph, self.meta)


def _require_keys(obj: Mapping, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, Mapping):
        raise FormatError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise FormatError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise FormatError(f"{where}: missing field(s) {sorted(missing)}")


def parse(text: str) -> ParsedDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    _require_keys(
        doc,
        {"format", "kind", "graph", "drawing", "meta"},
        {"format", "kind", "graph"},
        "document",
    )
    if doc["format"] != FORMAT_VERSION:
        raise FormatError(f"document.format: unsupported version {doc['format']!r}")
    if doc["kind"] != "drawing-document":
        raise FormatError(f"document.kind: expected 'drawing-document'")

    gsec = doc["graph"]
    _require_keys(gsec, {"vertices", "edges"}, {"vertices", "edges"}, "graph")
    if not isinstance(gsec["vertices"], list) or not all(
        isinstance(v, str) for v in gsec["vertices"]
    ):
        raise FormatError("graph.vertices: expected a list of strings")
    edges = []
    labels = {}
    for i, e in enumerate(gsec["edges"]):
        _require_keys(e, {"id", "u", "v", "label"}, {"id", "u", "v"}, f"graph.edges[{i}]")
        edges.append((e["id"], e["u"], e["v"]))
        if "label" in e:
            labels[e["id"]] = e["label"]
    try:
        graph = Graph(gsec["vertices"], edges, labels)
    except Exception as exc:
        raise FormatError(f"graph: {exc}") from None

    meta = doc.get("meta") or {}
    if not isinstance(meta, Mapping):
        raise FormatError("meta: expected an object")

    dsec = doc.get("drawing")
    if dsec is None:
        return ParsedDocument(graph, None, dict(meta))

    _require_keys(
        dsec,
        {"crossings", "edge_paths", "rotations", "outer_face"},
        {"crossings", "edge_paths", "rotations"},
        "drawing",
    )
    crossings: dict[str, frozenset[str]] = {}
    for i, c in enumerate(dsec["crossings"]):
        _require_keys(c, {"id", "edges"}, {"id", "edges"}, f"drawing.crossings[{i}]")
        if len(c["edges"]) != 2:
            raise FormatError(f"drawing.crossings[{i}]: need exactly two edges")
        crossings[c["id"]] = frozenset(c["edges"])

    edge_paths = {}
    for eid, path in dsec["edge_paths"].items():
        if not isinstance(path, list) or len(path) < 2:
            raise FormatError(f"drawing.edge_paths[{eid}]: expected a vertex list")
        edge_paths[eid] = tuple(path)

    # skeleton graph from the paths
    skel_vertices = list(graph.vertices) + sorted(crossings)
    skel_edges = []
    seg_count: dict[str, int] = {}
    for eid, path in sorted(edge_paths.items()):
        if not graph.has_edge(eid):
            raise FormatError(f"drawing.edge_paths[{eid}]: unknown edge")
        sids = (
            [eid]
            if len(path) == 2
            else [f"{eid}|s{j}" for j in range(len(path) - 1)]
        )
        seg_count[eid] = len(sids)
        for sid, a, b in zip(sids, path, path[1:]):
            skel_edges.append((sid, a, b))
    try:
        skel_graph = Graph(skel_vertices, skel_edges)
    except Exception as exc:
        raise FormatError(f"drawing: inconsistent skeleton: {exc}") from None

    rotations = {}
    rsec = dsec["rotations"]
    for v in skel_graph.vertices:
        entries = rsec.get(v)
        if entries is None:
            raise FormatError(f"drawing.rotations: missing vertex {v!r}")
        darts = []
        for ent in entries:
            if not (isinstance(ent, list) and len(ent) == 2):
                raise FormatError(f"drawing.rotations[{v}]: bad entry {ent!r}")
            eid, j = ent
            if eid not in edge_paths or not isinstance(j, int):
                raise FormatError(f"drawing.rotations[{v}]: bad entry {ent!r}")
            path = edge_paths[eid]
            if not (0 <= j < len(path) - 1):
                raise FormatError(
                    f"drawing.rotations[{v}]: segment {j} out of range for {eid!r}"
                )
            sid = eid if len(path) == 2 else f"{eid}|s{j}"
            if path[j] == v:
                darts.append((sid, 0))
            elif path[j + 1] == v:
                darts.append((sid, 1))
            else:
                raise FormatError(
                    f"drawing.rotations[{v}]: segment {j} of {eid!r} not incident"
                )
        rotations[v] = darts
    if set(rsec) - set(skel_graph.vertices):
        raise FormatError("drawing.rotations: entries for unknown vertices")

    outer = dsec.get("outer_face")
    try:
        skeleton = EmbeddedGraph(skel_graph, rotations, outer)
    except Exception as exc:
        raise FormatError(f"drawing.rotations: {exc}") from None

    drawing = TopologicalDrawing(graph, skeleton, edge_paths, crossings)
    report = validate(drawing)
    if not report.ok:
        raise FormatError(
            "drawing: structural validation failed: " + "; ".join(report.failures())
        )
    return ParsedDocument(graph, drawing, dict(meta))


# ---------------------------------------------------------------------------
# Read-only exports
# ---------------------------------------------------------------------------


def to_dot(g: Graph) -> str:
    lines = ["graph {"]
    for v in sorted(g.vertices):
        lines.append(f'  "{v}";')
    for e in sorted(g.edges, key=lambda e: e.id):
        label = g.label(e.id)
        attr = f' [label="{label}"]' if label else ""
        lines.append(f'  "{e.u}" -- "{e.v}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphml(g: Graph) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="label" for="edge" attr.name="label" attr.type="string"/>',
        '  <graph edgedefault="undirected">',
    ]
    for v in sorted(g.vertices):
        out.append(f'    <node id="{v}"/>')
    for e in sorted(g.edges, key=lambda e: e.id):
        label = g.label(e.id)
        if label:
            out.append(f'    <edge id="{e.id}" source="{e.u}" target="{e.v}">')
            out.append(f'      <data key="label">{label}</data>')
            out.append("    </edge>")
        else:
            out.append(f'    <edge id="{e.id}" source="{e.u}" target="{e.v}"/>')
    out.append("  </graph>")
    out.append("</graphml>")
    return "\n".join(out) + "\n"
