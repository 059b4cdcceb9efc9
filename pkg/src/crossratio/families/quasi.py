"""Hexagon-with-apex gadget and its generalization to longer cycles.

The base is a 2k-cycle plus an apex joined to every cycle vertex; every edge
is thickened with parallel length-two paths and the k long diagonals are
added as special edges.  The minimum drawing crosses the diagonals pairwise
inside the big cycle face; the quasi-planar drawing instead sends one
diagonal through two spoke bundles so that no three edges mutually cross.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..drawings import DrawingBuilder, TopologicalDrawing
from ..graphs import EmbeddedGraph, Graph, GraphError, extend_edge, require_sphere
from ..surgery import EmbeddingBuilder
from .diagonals import insert_mutually_crossing_diagonals


@dataclass(frozen=True)
class QuasiFamily:
    graph: Graph
    ell: int
    k: int  # half the cycle length; 3 for the hexagon family
    cycle: tuple[str, ...]
    apex: str
    cycle_edges: tuple[str, ...]
    spoke_edges: tuple[str, ...]
    special_edges: tuple[str, ...]
    extensions: dict[str, int]  # extended edge -> number of parallel paths
    mode: str = "extend-all"


def _build_kquasi(ell: int, k: int, mode: str) -> QuasiFamily:
    cycle = [f"u{i}" for i in range(2 * k)]
    vertices = cycle + ["x"]
    edges = []
    for i in range(2 * k):
        edges.append((f"C{i}", f"u{i}", f"u{(i + 1) % (2 * k)}"))
    for i in range(2 * k):
        edges.append((f"S{i}", "x", f"u{i}"))
    g = Graph(vertices, edges)
    if mode == "extend-all":
        extensions = {e.id: ell - 1 for e in g.edges}
    elif mode == "match-corollary":
        # cycle edges get the full path systems, spokes one path each; this
        # is the parameterization whose vertex count matches 2k(ell+1)+1
        extensions = {f"C{i}": ell - 1 for i in range(2 * k)}
        extensions.update({f"S{i}": 1 for i in range(2 * k)})
    else:
        raise GraphError(f"unknown extension mode {mode!r}")
    for eid in [e.id for e in g.edges]:
        g = extend_edge(g, eid, extensions[eid])
    specials = []
    new_edges = []
    labels = {}
    for i in range(k):
        did = f"D{i}"
        new_edges.append((did, f"u{i}", f"u{i + k}"))
        labels[did] = "special"
        specials.append(did)
    g = g.with_edges([], new_edges, labels)
    return QuasiFamily(
        graph=g,
        ell=ell,
        k=k,
        cycle=tuple(cycle),
        apex="x",
        cycle_edges=tuple(f"C{i}" for i in range(2 * k)),
        spoke_edges=tuple(f"S{i}" for i in range(2 * k)),
        special_edges=tuple(specials),
        extensions=extensions,
        mode=mode,
    )


def gen_quasi(ell: int) -> QuasiFamily:
    """The quasi-planar family: hexagon + apex, everything extended."""
    if ell < 2:
        raise GraphError("gen_quasi needs ell >= 2")
    return _build_kquasi(ell, 3, "extend-all")


def gen_kquasi(ell: int, k: int, mode: str = "extend-all") -> Graph:
    """Longer-cycle generalization; see gen_kquasi_family for the structure."""
    return gen_kquasi_family(ell, k, mode).graph


def gen_kquasi_family(ell: int, k: int, mode: str = "extend-all") -> QuasiFamily:
    if ell < 2 or k < 3:
        raise GraphError("gen_kquasi needs ell >= 2 and k >= 3")
    return _build_kquasi(ell, k, mode)


# ---------------------------------------------------------------------------
# Planar part: cycle face kept empty, apex and all paths on the other side
# ---------------------------------------------------------------------------


def planar_part(fam: QuasiFamily) -> EmbeddedGraph:
    """Spherical embedding of the family graph minus the special edges.

    The 2k-gon face stays a face; the apex sits on the other side of the
    cycle; every extension path hugs its edge inside a triangle, never
    inside the 2k-gon.
    """
    m = 2 * fam.k
    eb = EmbeddingBuilder()
    for v in fam.cycle:
        eb.add_vertex(v)
    for i in range(m):
        eb._register_edge(f"C{i}", f"u{i}", f"u{(i + 1) % m}", None)
    for i in range(m):
        eb.rotation[f"u{i}"] = [(f"C{i}", 0), (f"C{(i - 1) % m}", 1)]

    # apex into one of the two faces; the other stays as the big cycle face
    faces = eb.faces()
    outer = faces[0]
    order = [eb.tail(d) for d in outer]
    eb.insert_vertex_in_face(
        outer,
        attach=list(range(m)),
        vertex_id=fam.apex,
        edge_ids=[f"S{order[p][1:]}" for p in range(m)],
    )
    eb.match_orientations(fam.graph)

    # extension paths: cycle edge C_i hugs inside triangle (u_i, u_{i+1}, x);
    # spoke S_i hugs inside triangle (u_{i-1}, u_i, x)
    def face_side_with_apex(edge_id: str):
        for s in (0, 1):
            f = eb.face_containing_dart((edge_id, s))
            if fam.apex in {eb.tail(d) for d in f}:
                return (edge_id, s)
        raise GraphError(f"no apex-side face for {edge_id!r}")

    def triangle_side(edge_id: str, third: str):
        for s in (0, 1):
            f = eb.face_containing_dart((edge_id, s))
            if third in {eb.tail(d) for d in f}:
                return (edge_id, s)
        raise GraphError(f"no face of {edge_id!r} with corner {third!r}")

    for i in range(m):
        eid = f"C{i}"
        count = fam.extensions.get(eid, 0)
        if count:
            eb.add_parallel_paths(
                eid,
                count,
                side=face_side_with_apex(eid),
                mid_ids=[f"{eid}+p{t}" for t in range(count)],
                edge_id_pairs=[(f"{eid}+p{t}a", f"{eid}+p{t}b") for t in range(count)],
                label=f"extension({eid})",
            )
    for i in range(m):
        eid = f"S{i}"
        count = fam.extensions.get(eid, 0)
        if count:
            eb.add_parallel_paths(
                eid,
                count,
                side=triangle_side(eid, f"u{(i - 1) % m}"),
                mid_ids=[f"{eid}+p{t}" for t in range(count)],
                edge_id_pairs=[(f"{eid}+p{t}a", f"{eid}+p{t}b") for t in range(count)],
                label=f"extension({eid})",
            )

    emb = eb.freeze()
    require_sphere(emb, "quasi planar part")
    return emb


def _cycle_face(db: DrawingBuilder, fam: QuasiFamily):
    want = set(fam.cycle)
    hits = [
        f
        for f in db.eb.faces()
        if {db.eb.tail(d) for d in f} == want and len(f) == len(want)
    ]
    if len(hits) != 1:
        raise GraphError("big cycle face not found")
    return hits[0]


def build_min(fam: QuasiFamily) -> TopologicalDrawing:
    """All diagonals drawn inside the big cycle face, pairwise crossing:
    k(k-1)/2 crossings (3 for the hexagon family)."""
    db = DrawingBuilder(fam.graph, planar_part(fam))
    face = _cycle_face(db, fam)
    # align diagonal ids with the face walk: position of u_j on the walk
    order = [db.eb.tail(d) for d in face]
    ids = []
    for p in range(fam.k):
        a, b = order[p], order[p + fam.k]
        matches = [
            d
            for d in fam.special_edges
            if {fam.graph.edge(d).u, fam.graph.edge(d).v} == {a, b}
        ]
        ids.append(matches[0])
    insert_mutually_crossing_diagonals(db, face, ids)
    return db.finalize()


def build_quasi_planar(fam: QuasiFamily) -> TopologicalDrawing:
    """The 2*ell + 1 crossing drawing that stays 3-quasi-planar.

    Two diagonals live in the big cycle face and cross once; the third runs
    through the apex corner of two triangles, crossing both spoke bundles at
    their apex-side edges, so all of its crossings share the apex.
    """
    if fam.k != 3:
        raise GraphError("the quasi-planar layout is defined for the hexagon family")
    db = DrawingBuilder(fam.graph, planar_part(fam))
    face = _cycle_face(db, fam)
    d0, d1, d2 = fam.special_edges  # (u0,u3), (u1,u4), (u2,u5)

    # D0 chord inside the cycle face
    db.chord_in_face(d0, face, "u0", "u3")
    # D1 crosses D0 once inside the cycle face
    darts = db.darts_for_route("u1", [d0])
    db.route(d1, darts)
    # D2 runs from u2 around the apex: across the bundle of S3, then S4
    crossed: list[str] = []
    for spoke in ("S3", "S4"):
        count = fam.extensions.get(spoke, 0)
        crossed.extend(f"{spoke}+p{t}a" for t in range(count - 1, -1, -1))
        crossed.append(spoke)
    darts = db.darts_for_route("u2", crossed)
    db.route(d2, darts)
    return db.finalize()
