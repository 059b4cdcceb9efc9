"""Straight-line rendering of drawings to SVG and matplotlib figures.

The skeleton is laid out planar straight-line; each base edge becomes a
polyline through its crossing points, styled by its role label.  Layout is
barycentric (Tutte) on a stellation-augmented skeleton with the outer face
fixed convex; the result is snapped to an integer grid and verified exactly,
falling back to the shift-method layout from networkx when the barycentric
drawing degenerates.  Coordinates in the emitted SVG are integers, so the
independent crossing count over the emitted polylines is exact.
"""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from .drawings import TopologicalDrawing, validate
from .graphs import GraphError, dart_tail
from .surgery import EmbeddingBuilder

GRID = 1 << 13

EDGE_STYLES = {
    "primal": ("#1f77b4", 1.6, None),
    "dual": ("#d62728", 2.6, None),
    "binding": ("#2ca02c", 1.6, "7 4"),
    "special": ("#ff7f0e", 4.2, None),
    "marked": ("#8c564b", 2.4, None),
    "extension": ("#999999", 1.1, None),
    "bundle": ("#17becf", 1.3, None),
    None: ("#333333", 1.5, None),
}


def _style_of(label: Optional[str]):
    if label is None:
        return EDGE_STYLES[None]
    for key in ("extension", "bundle"):
        if label.startswith(key):
            return EDGE_STYLES[key]
    return EDGE_STYLES.get(label, EDGE_STYLES[None])


# ---------------------------------------------------------------------------
# Layout
# ---------------------------------------------------------------------------


def _choose_outer(emb) -> int:
    best, best_key = 0, (-1, -1)
    for i, face in enumerate(emb.faces):
        verts = emb.face_vertices(face)
        distinct = len(set(verts)) == len(verts)
        key = (1 if distinct else 0, len(face))
        if key > best_key:
            best, best_key = i, key
    return best


def _tutte_positions(d: TopologicalDrawing, outer_face: Optional[int]):
    emb = d.skeleton
    if outer_face is None:
        outer_face = emb.outer_face if emb.outer_face is not None else _choose_outer(emb)
    faces = emb.faces
    if not (0 <= outer_face < len(faces)):
        raise GraphError(f"outer face index {outer_face} out of range")
    outer = faces[outer_face]
    outer_verts = [dart_tail(emb.graph, dd) for dd in outer]
    if len(set(outer_verts)) != len(outer_verts):
        raise GraphError("outer face walk repeats a vertex")

    # stellate every inner face to stiffen the barycentric system
    b = EmbeddingBuilder.from_embedded(emb)
    outer_key = tuple(outer)
    for i, face in enumerate(faces):
        if tuple(face) == outer_key:
            continue
        b.insert_vertex_in_face(
            face,
            attach=list(range(len(face))),
            vertex_id=f"aug{i}",
            edge_ids=[f"aug{i}.{p}" for p in range(len(face))],
        )
    verts = list(b.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    fixed = np.zeros(n, dtype=bool)
    pos = np.zeros((n, 2))
    m = len(outer_verts)
    for j, v in enumerate(outer_verts):
        ang = 2 * np.pi * j / m
        pos[index[v]] = (np.cos(ang), np.sin(ang))
        fixed[index[v]] = True

    nbrs = [[] for _ in range(n)]
    for (u, v) in b.edges.values():
        nbrs[index[u]].append(index[v])
        nbrs[index[v]].append(index[u])

    free = [i for i in range(n) if not fixed[i]]
    fpos = {i: k for k, i in enumerate(free)}
    A = np.zeros((len(free), len(free)))
    rhs = np.zeros((len(free), 2))
    for i in free:
        k = fpos[i]
        A[k, k] = len(nbrs[i])
        for j in nbrs[i]:
            if fixed[j]:
                rhs[k] += pos[j]
            else:
                A[k, fpos[j]] -= 1
    if free:
        sol = np.linalg.solve(A, rhs)
        for i in free:
            pos[i] = sol[fpos[i]]

    snapped = {}
    for v in emb.graph.vertices:
        p = pos[index[v]]
        snapped[v] = (int(round(p[0] * GRID)), int(round(p[1] * GRID)))
    return snapped


def _orient(a, b, c) -> int:
    val = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (val > 0) - (val < 0)


def _proper_cross(a, b, c, d) -> bool:
    return (
        _orient(a, b, c) * _orient(a, b, d) < 0
        and _orient(c, d, a) * _orient(c, d, b) < 0
    )


def _on_segment_interior(a, b, p) -> bool:
    if p == a or p == b or _orient(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _layout_is_plane(d: TopologicalDrawing, pos) -> bool:
    """Exact check: distinct positions, no crossing or touching segments."""
    if len(set(pos.values())) != len(pos):
        return False
    segs = []
    for e in d.skeleton.graph.edges:
        segs.append((pos[e.u], pos[e.v], frozenset((e.u, e.v))))
    for i in range(len(segs)):
        a, b, ends_i = segs[i]
        for j in range(i + 1, len(segs)):
            c, dd, ends_j = segs[j]
            if max(a[0], b[0]) < min(c[0], dd[0]) or max(c[0], dd[0]) < min(a[0], b[0]):
                continue
            if max(a[1], b[1]) < min(c[1], dd[1]) or max(c[1], dd[1]) < min(a[1], b[1]):
                continue
            if _proper_cross(a, b, c, dd):
                return False
            for p in (c, dd):
                if _on_segment_interior(a, b, p):
                    return False
            for p in (a, b):
                if _on_segment_interior(c, dd, p):
                    return False
            if not (ends_i & ends_j) and (a in (c, dd) or b in (c, dd)):
                return False
    return True


def _nx_positions(d: TopologicalDrawing):
    """Shift-method layout via networkx on a simple subdivision of the
    skeleton.  Subdivision points become polyline bends."""
    emb = d.skeleton
    b = EmbeddingBuilder.from_embedded(emb)
    # subdivide every edge of each parallel bundle except its first copy
    seen: dict[frozenset, str] = {}
    extra_points: dict[str, tuple[str, str]] = {}
    for eid, (u, v) in list(b.edges.items()):
        key = frozenset((u, v))
        if key in seen:
            mid = f"sub({eid})"
            b.subdivide_edge(eid, mid, (f"{eid}<", f"{eid}>"))
            extra_points[eid] = (u, mid)
        else:
            seen[key] = eid

    G = nx.PlanarEmbedding()
    rot = b.rotation
    built = False
    for attempt in (False, True):
        G = nx.PlanarEmbedding()
        try:
            for v, darts in rot.items():
                order = list(darts)
                if attempt:
                    order = list(reversed(order))
                prev = None
                for dart in order:
                    w = b.head(dart)
                    if prev is None:
                        G.add_half_edge_first(v, w)
                    else:
                        G.add_half_edge_ccw(v, w, prev)
                    prev = w
            G.check_structure()
            built = True
            break
        except nx.NetworkXException:
            continue
    if not built:
        raise GraphError("could not hand the embedding to the shift layout")
    raw = nx.combinatorial_embedding_to_pos(G, fully_triangulate=False)
    scale = 8
    pos = {v: (int(p[0]) * scale, int(p[1]) * scale) for v, p in raw.items()}

    bends: dict[str, tuple] = {}
    for eid, (u, mid) in extra_points.items():
        bends[eid] = pos[mid]
    return {v: pos[v] for v in emb.graph.vertices}, bends


def layout(d: TopologicalDrawing, outer_face: Optional[int] = None):
    """Integer positions for all skeleton vertices plus per-edge extra bends."""
    try:
        pos = _tutte_positions(d, outer_face)
        if _layout_is_plane(d, pos):
            return pos, {}
    except (GraphError, np.linalg.LinAlgError):
        pass
    return _nx_positions(d)


def polylines(d: TopologicalDrawing, pos, bends) -> dict[str, list[tuple[int, int]]]:
    out = {}
    for eid, path in sorted(d.edge_paths.items()):
        pts = [pos[p] for p in path]
        if eid in bends and len(path) == 2:
            pts = [pts[0], bends[eid], pts[1]]
        out[eid] = pts
    return out


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------


def render_svg(
    d: TopologicalDrawing,
    outer_face: Optional[int] = None,
    vertex_labels: bool = False,
) -> str:
    """Deterministic SVG 1.1 figure of a valid drawing."""
    report = validate(d)
    if not report.ok:
        raise GraphError("render_svg: invalid drawing: " + "; ".join(report.failures()))
    pos, bends = layout(d, outer_face)
    lines = polylines(d, pos, bends)

    xs = [p[0] for pts in lines.values() for p in pts] or [0]
    ys = [p[1] for pts in lines.values() for p in pts] or [0]
    pad = max((max(xs) - min(xs)) // 20, 20)
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad

    dual_vertices = set()
    for e in d.base.edges:
        if d.base.label(e.id) == "dual":
            dual_vertices.update((e.u, e.v))
    primal_vertices = set()
    for e in d.base.edges:
        if d.base.label(e.id) == "primal":
            primal_vertices.update((e.u, e.v))
    dual_vertices -= primal_vertices

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
        '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{x0} {y0} {w} {h}">',
        '  <g fill="none" stroke-linecap="round" stroke-linejoin="round">',
    ]
    stroke_unit = max(w, h) / 640.0
    for eid, pts in lines.items():
        color, width, dash = _style_of(d.base.label(eid))
        attr = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{x},{y}" for x, y in pts)
        out.append(
            f'    <polyline id="edge:{eid}" points="{coords}" '
            f'stroke="{color}" stroke-width="{width * stroke_unit:.2f}"{attr}/>'
        )
    out.append("  </g>")
    out.append('  <g stroke="#000000" stroke-width="0.5">')
    r = max(w, h) / 160.0
    for v in sorted(d.base.vertices):
        x, y = pos[v]
        if v in dual_vertices:
            out.append(
                f'    <rect x="{x - r:.1f}" y="{y - r:.1f}" width="{2 * r:.1f}" '
                f'height="{2 * r:.1f}" fill="#d62728"/>'
            )
        else:
            out.append(f'    <circle cx="{x}" cy="{y}" r="{r:.1f}" fill="#1f77b4"/>')
    out.append("  </g>")
    if vertex_labels:
        out.append(f'  <g font-family="sans-serif" font-size="{3 * r:.0f}">')
        for v in sorted(d.base.vertices):
            x, y = pos[v]
            out.append(f'    <text x="{x + r:.0f}" y="{y - r:.0f}">{v}</text>')
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


_POLYLINE_RE = re.compile(r'<polyline id="edge:[^"]*" points="([^"]+)"')


def svg_crossing_count(svg_text: str) -> int:
    """Independent intersection count over the polylines of an emitted SVG.

    Counts proper segment crossings plus transversal passes through shared
    interior points (the snapped crossing vertices).  Degenerate contacts
    (overlaps, endpoint-on-interior) raise.
    """
    polys: list[list[tuple[int, int]]] = []
    for m in _POLYLINE_RE.finditer(svg_text):
        pts = []
        for tok in m.group(1).split():
            x, y = tok.split(",")
            pts.append((int(x), int(y)))
        polys.append(pts)
    return count_polyline_crossings(polys)


def count_polyline_crossings(polys: Sequence[Sequence[tuple[int, int]]]) -> int:
    count = 0
    segs = []
    for pi, pts in enumerate(polys):
        for a, b in zip(pts, pts[1:]):
            segs.append((a, b, pi))
    for i in range(len(segs)):
        a, b, pi = segs[i]
        for j in range(i + 1, len(segs)):
            c, dd, pj = segs[j]
            if pi == pj:
                continue
            if _proper_cross(a, b, c, dd):
                count += 1
            for p, q in ((a, (c, dd)), (b, (c, dd))):
                if _on_segment_interior(*q, p):
                    raise GraphError("degenerate contact in the rendered layout")
            for p in (c, dd):
                if _on_segment_interior(a, b, p):
                    raise GraphError("degenerate contact in the rendered layout")

    # transversal passes through shared interior points
    interior: dict[tuple[int, int], dict[int, list[tuple[int, int]]]] = defaultdict(dict)
    for pi, pts in enumerate(polys):
        for k in range(1, len(pts) - 1):
            p = pts[k]
            dirs = [
                (pts[k - 1][0] - p[0], pts[k - 1][1] - p[1]),
                (pts[k + 1][0] - p[0], pts[k + 1][1] - p[1]),
            ]
            interior[p].setdefault(pi, []).extend(dirs)
    endpoints: dict[tuple[int, int], set[int]] = defaultdict(set)
    for pi, pts in enumerate(polys):
        endpoints[pts[0]].add(pi)
        endpoints[pts[-1]].add(pi)

    for p, by_poly in interior.items():
        if p in endpoints:
            raise GraphError("a polyline bend coincides with an endpoint")
        owners = sorted(by_poly)
        for ii in range(len(owners)):
            for jj in range(ii + 1, len(owners)):
                d1 = by_poly[owners[ii]]
                d2 = by_poly[owners[jj]]
                if len(d1) != 2 or len(d2) != 2:
                    raise GraphError("more than two strands through one bend")
                if _alternates(d1, d2):
                    count += 1
    return count


def _alternates(d1, d2) -> bool:
    """Do the two direction pairs interleave around their common point?"""

    def half(v):
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    import functools

    def cmp(a, b):
        ha, hb = half(a[0]), half(b[0])
        if ha != hb:
            return -1 if ha < hb else 1
        cross = a[0][0] * b[0][1] - a[0][1] * b[0][0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise GraphError("collinear strands at a crossing point")

    tagged = [(v, 0) for v in d1] + [(v, 1) for v in d2]
    order = [t for _, t in sorted(tagged, key=functools.cmp_to_key(cmp))]
    return order in ([0, 1, 0, 1], [1, 0, 1, 0])


# ---------------------------------------------------------------------------
# Matplotlib figures (report path)
# ---------------------------------------------------------------------------


def render_figure(
    d: TopologicalDrawing,
    path: str,
    title: Optional[str] = None,
    outer_face: Optional[int] = None,
) -> None:
    """Write a matplotlib rendering of the drawing to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    pos, bends = layout(d, outer_face)
    lines = polylines(d, pos, bends)

    fig, ax = plt.subplots(figsize=(6, 6))
    for eid, pts in lines.items():
        color, width, dash = _style_of(d.base.label(eid))
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.plot(
            xs,
            ys,
            color=color,
            linewidth=width,
            linestyle="--" if dash else "-",
            solid_capstyle="round",
            zorder=1,
        )
    dual_vertices = {
        w
        for e in d.base.edges
        if d.base.label(e.id) == "dual"
        for w in (e.u, e.v)
    }
    primal = [v for v in d.base.vertices if v not in dual_vertices]
    ax.scatter(
        [pos[v][0] for v in primal],
        [pos[v][1] for v in primal],
        s=14,
        c="#1f77b4",
        zorder=2,
    )
    if dual_vertices:
        dv = sorted(dual_vertices)
        ax.scatter(
            [pos[v][0] for v in dv],
            [pos[v][1] for v in dv],
            s=16,
            c="#d62728",
            marker="s",
            zorder=2,
        )
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)
