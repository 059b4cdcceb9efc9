"""The bipartite gadget with two pendant fan hubs.

A complete bipartite 3x3 core keeps two independent edges unextended; two
extra vertices hang off their endpoints and carry bundles of length-two
paths back across.  The minimum drawing pays three crossings, all on one
edge whose crossers admit no common fan apex; the fan-planar drawing pays
one crossing per parallel strand of a single extended edge, all incident to
one apex and passing on the same side.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..drawings import DrawingBuilder, TopologicalDrawing
from ..graphs import Graph, GraphError, extend_edge, require_sphere
from ..surgery import EmbeddingBuilder

# bipartition: {u, w, a2} vs {v, z, b2}; (u,v) and (w,z) stay unextended
_CORE_EDGES = [
    ("uv", "u", "v"),
    ("wz", "w", "z"),
    ("uz", "u", "z"),
    ("ub2", "u", "b2"),
    ("wv", "w", "v"),
    ("wb2", "w", "b2"),
    ("a2v", "a2", "v"),
    ("a2z", "a2", "z"),
    ("a2b2", "a2", "b2"),
]
_EXTENDED = ("uz", "ub2", "wv", "wb2", "a2v", "a2z", "a2b2")


@dataclass(frozen=True)
class FanFamily:
    graph: Graph
    ell: int
    core_vertices: tuple[str, ...]
    uv: str
    wz: str
    w_prime: str
    z_prime: str
    w_bar: str
    z_bar: str
    w_bundle: tuple[str, ...]  # path mid vertices w' <-> z
    z_bundle: tuple[str, ...]  # path mid vertices z' <-> w
    extended_edges: tuple[str, ...]


def gen_fan(ell: int) -> FanFamily:
    """The fan-planar family on 9*ell + 1 vertices."""
    if ell < 2:
        raise GraphError("gen_fan needs ell >= 2")
    g = Graph(
        ["u", "w", "a2", "v", "z", "b2"],
        _CORE_EDGES,
        {"uv": "marked", "wz": "marked"},
    )
    for eid in _EXTENDED:
        g = extend_edge(g, eid, ell - 1)
    new_vertices = ["w'", "z'"]
    new_edges = [("wbar", "w", "w'"), ("zbar", "z", "z'")]
    labels = {"wbar": "marked", "zbar": "marked"}
    w_bundle, z_bundle = [], []
    for t in range(ell):
        mid = f"Pw{t}"
        new_vertices.append(mid)
        new_edges.append((f"Pw{t}a", "w'", mid))
        new_edges.append((f"Pw{t}b", mid, "z"))
        labels[f"Pw{t}a"] = "bundle(w')"
        labels[f"Pw{t}b"] = "bundle(w')"
        w_bundle.append(mid)
    for t in range(ell):
        mid = f"Pz{t}"
        new_vertices.append(mid)
        new_edges.append((f"Pz{t}a", "z'", mid))
        new_edges.append((f"Pz{t}b", mid, "w"))
        labels[f"Pz{t}a"] = "bundle(z')"
        labels[f"Pz{t}b"] = "bundle(z')"
        z_bundle.append(mid)
    g = g.with_edges(new_vertices, new_edges, labels)
    return FanFamily(
        graph=g,
        ell=ell,
        core_vertices=("u", "w", "a2", "v", "z", "b2"),
        uv="uv",
        wz="wz",
        w_prime="w'",
        z_prime="z'",
        w_bar="wbar",
        z_bar="zbar",
        w_bundle=tuple(w_bundle),
        z_bundle=tuple(z_bundle),
        extended_edges=_EXTENDED,
    )


def k33_subdivision_registry(fam: FanFamily) -> list[dict[str, tuple[str, ...]]]:
    """ell subdivisions of the bipartite core sharing only (u,v) and the
    w-side hub edge.

    Entry j maps each core edge position to the edge ids of its routing
    path: position ``wz`` runs through the hub and the j-th bundle path; the
    extended positions use the j-th parallel route (the original edge for
    j = 0, the (j-1)-th extension path otherwise).
    """
    out = []
    for j in range(fam.ell):
        routing: dict[str, tuple[str, ...]] = {"uv": ("uv",)}
        routing["wz"] = (fam.w_bar, f"Pw{j}a", f"Pw{j}b")
        for eid in fam.extended_edges:
            if j == 0:
                routing[eid] = (eid,)
            else:
                routing[eid] = (f"{eid}+p{j - 1}a", f"{eid}+p{j - 1}b")
        out.append(routing)
    return out


# ---------------------------------------------------------------------------
# Planar-part scaffolding
# ---------------------------------------------------------------------------


def _hexagon_base(
    fam: FanFamily,
    cycle_vertices: list[str],
    cycle_edges: list[str],
    chord_out: str,
    skip_extensions: frozenset[str] = frozenset(),
) -> EmbeddingBuilder:
    """Core drawn as a hexagon with one chord outside; extension paths of
    the listed edges hug outside regions, keeping the hexagon face empty."""
    eb = EmbeddingBuilder()
    for vtx in cycle_vertices:
        eb.add_vertex(vtx)
    m = len(cycle_vertices)
    for i, eid in enumerate(cycle_edges):
        a, b = cycle_vertices[i], cycle_vertices[(i + 1) % m]
        e = fam.graph.edge(eid)
        if {a, b} != {e.u, e.v}:
            raise GraphError(f"cycle edge {eid!r} does not match layout")
        eb._register_edge(eid, e.u, e.v, fam.graph.label(eid))
    for i, vtx in enumerate(cycle_vertices):
        eb.rotation[vtx] = [
            eb.dart_from(cycle_edges[i], vtx),
            eb.dart_from(cycle_edges[(i - 1) % m], vtx),
        ]
    hexagon = set(cycle_vertices)
    f_out = eb.faces()[1]
    e = fam.graph.edge(chord_out)
    eb.insert_edge_in_face(
        f_out,
        eb.corner_position(f_out, e.u),
        eb.corner_position(f_out, e.v),
        chord_out,
        fam.graph.label(chord_out),
    )
    eb.match_orientations(fam.graph)

    def outside_dart(eid: str):
        f0 = eb.face_containing_dart((eid, 0))
        corners = {eb.tail(d) for d in f0}
        if corners == hexagon and len(f0) == m:
            return (eid, 1)
        return (eid, 0)

    count = fam.ell - 1
    for eid in fam.extended_edges:
        if eid in skip_extensions or not eb.edges.get(eid):
            continue
        if count:
            eb.add_parallel_paths(
                eid,
                count,
                side=outside_dart(eid),
                mid_ids=[f"{eid}+p{t}" for t in range(count)],
                edge_id_pairs=[(f"{eid}+p{t}a", f"{eid}+p{t}b") for t in range(count)],
                label=f"extension({eid})",
            )
    return eb


def _hexagon_face(eb: EmbeddingBuilder, fam: FanFamily):
    return eb.face_with_corners(set(fam.core_vertices))


def _spur_and_bundle(
    eb: EmbeddingBuilder,
    fam: FanFamily,
    face,
    hub_anchor: str,
    hub: str,
    bar_edge: str,
    far_anchor: str,
    bundle_prefix: str,
    away_corner: str,
) -> None:
    eb.insert_vertex_in_face(
        face,
        attach=[eb.corner_position(face, hub_anchor)],
        vertex_id=hub,
        edge_ids=[bar_edge],
        label=fam.graph.label(bar_edge),
    )
    eb.match_orientations(fam.graph)
    bundle_face = eb.face_containing_dart(eb.dart_from(bar_edge, hub))
    eb.add_path_bundle(
        hub,
        far_anchor,
        fam.ell,
        bundle_face,
        away_corner=away_corner,
        mid_ids=[f"{bundle_prefix}{t}" for t in range(fam.ell)],
        edge_id_pairs=[
            (f"{bundle_prefix}{t}a", f"{bundle_prefix}{t}b") for t in range(fam.ell)
        ],
        label=f"bundle({hub})",
    )
    eb.match_orientations(fam.graph)


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------


def build_min(fam: FanFamily) -> TopologicalDrawing:
    """Three crossings, all on (u,v): it crosses (w,z) and both hub edges."""
    eb = _hexagon_base(
        fam,
        ["u", "z", "a2", "v", "w", "b2"],
        ["uz", "a2z", "a2v", "wv", "wb2", "ub2"],
        chord_out="a2b2",
    )
    hexagon = _hexagon_face(eb, fam)
    e = fam.graph.edge(fam.wz)
    eb.insert_edge_in_face(
        hexagon,
        eb.corner_position(hexagon, e.u),
        eb.corner_position(hexagon, e.v),
        fam.wz,
        fam.graph.label(fam.wz),
    )
    eb.match_orientations(fam.graph)
    side_u = eb.face_with_corners({"w", "b2", "u", "z"})
    _spur_and_bundle(
        eb, fam, side_u, "w", fam.w_prime, fam.w_bar, "z", "Pw", away_corner="u"
    )
    side_v = eb.face_with_corners({"z", "a2", "v", "w"})
    _spur_and_bundle(
        eb, fam, side_v, "z", fam.z_prime, fam.z_bar, "w", "Pz", away_corner="v"
    )
    emb = eb.freeze()
    require_sphere(emb, "fan planar part (min)")
    db = DrawingBuilder(fam.graph, emb)
    darts = db.darts_for_route("u", [fam.w_bar, fam.wz, fam.z_bar])
    db.route(fam.uv, darts)
    return db.finalize()


def build_fan_planar(fam: FanFamily) -> TopologicalDrawing:
    """ell crossings: (u,v) crosses every parallel strand of one extended
    edge; all strands share the apex z and pass on the same side."""
    eb = _hexagon_base(
        fam,
        ["u", "z", "w", "v", "a2", "b2"],
        ["uz", "wz", "wv", "a2v", "a2b2", "ub2"],
        chord_out="wb2",
        skip_extensions=frozenset({"a2z"}),
    )
    hexagon = _hexagon_face(eb, fam)
    # both hubs and their bundles nest beside the (w,z) hexagon edge
    _spur_and_bundle(
        eb, fam, hexagon, "w", fam.w_prime, fam.w_bar, "z", "Pw", away_corner="u"
    )
    big = None
    for f in eb.faces():
        corners = {eb.tail(d) for d in f}
        if {"u", "v", "a2", "b2", "z", "w"} <= corners:
            big = f
            break
    if big is None:
        raise GraphError("big face lost after the first bundle")
    _spur_and_bundle(
        eb, fam, big, "z", fam.z_prime, fam.z_bar, "w", "Pz", away_corner="u"
    )
    # the crossing fodder: chord (a2, z) plus its extension paths, nested
    # toward u so that (u,v) must pass the whole band
    big = None
    for f in eb.faces():
        corners = {eb.tail(d) for d in f}
        if {"u", "v", "a2", "b2", "z"} <= corners:
            big = f
            break
    if big is None:
        raise GraphError("big face lost after the second bundle")
    e = fam.graph.edge("a2z")
    eb.insert_edge_in_face(
        big,
        eb.corner_position(big, e.u),
        eb.corner_position(big, e.v),
        "a2z",
        fam.graph.label("a2z"),
    )
    eb.match_orientations(fam.graph)
    count = fam.ell - 1
    if count:
        u_side = None
        for s in (0, 1):
            f = eb.face_containing_dart(("a2z", s))
            if "u" in {eb.tail(d) for d in f}:
                u_side = ("a2z", s)
                break
        eb.add_parallel_paths(
            "a2z",
            count,
            side=u_side,
            mid_ids=[f"a2z+p{t}" for t in range(count)],
            edge_id_pairs=[(f"a2z+p{t}a", f"a2z+p{t}b") for t in range(count)],
            label="extension(a2z)",
        )
    emb = eb.freeze()
    require_sphere(emb, "fan planar part (fan)")
    db = DrawingBuilder(fam.graph, emb)
    crossed = [f"a2z+p{t}b" for t in range(fam.ell - 2, -1, -1)] + ["a2z"]
    darts = db.darts_for_route("u", crossed)
    db.route(fam.uv, darts)
    return db.finalize()
