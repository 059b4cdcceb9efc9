"""The rigid product gadget, its dual, and the two canonical drawings.

The family graph glues a medial-extended prism-of-a-cycle P to its dual P*
with binding edges from the dual vertex of one polar face to that face's
corners, plus one special edge from a degree-6 vertex into the dual.  The
saturated drawing overlays P and P* so that every edge crosses exactly its
dual edge; the minimum drawing nests P* inside the polar face and pays two
crossings for the special edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..drawings import TopologicalDrawing
from ..graphs import (
    Dart,
    DualCorrespondence,
    EmbeddedGraph,
    Graph,
    GraphError,
    cartesian_path2_cycle,
    dual,
    medial_extension,
    require_sphere,
)
from ..oracle import insert_edge_min_crossings
from ..surgery import EmbeddingBuilder


@dataclass(frozen=True)
class OneplanarFamily:
    graph: Graph
    ell: int
    P: EmbeddedGraph
    P_star: EmbeddedGraph
    correspondence: DualCorrespondence
    f_face: int  # face index into P.faces
    g_face: int
    f_star: str
    g_star: str
    z: str
    y_face: int
    y_star: str
    x: str
    binding_edges: tuple[str, ...]
    special_edge: str
    warning: Optional[str] = None
    multiplicity: int = 1

    @property
    def n(self) -> int:
        return self.graph.num_vertices

    def face_report(self):
        """Face report of the rigid part with the polar faces identified."""
        from dataclasses import replace

        from ..graphs import trace_faces

        rep = trace_faces(self.P)
        return replace(rep, polar_face_ids=(self.f_face, self.g_face))


def _polar_face(P: EmbeddedGraph, row: str, ell: int) -> int:
    want = {f"{row}{i}" for i in range(ell)}
    hits = [
        i
        for i, face in enumerate(P.faces)
        if set(P.face_vertices(face)) == want
    ]
    if len(hits) != 1:
        raise GraphError(f"polar face of row {row!r} not unique")
    return hits[0]


def gen_oneplanar(ell: int) -> OneplanarFamily:
    """The 1-planar gadget on 11*ell + 2 vertices.

    Requires ell >= 3; instances below 7 carry a warning flag (the rigidity
    argument needs the larger cycle, the counts do not).
    """
    if ell < 3:
        raise GraphError("gen_oneplanar needs ell >= 3")
    warning = None if ell >= 7 else "ell < 7: rigidity of P is not guaranteed"

    P = medial_extension(cartesian_path2_cycle(ell))
    P_star, corr = dual(P, vertex_prefix="d", edge_suffix="*")

    f_face = _polar_face(P, "a", ell)
    g_face = _polar_face(P, "c", ell)
    f_star = corr.dual_vertex_of_face[f_face]
    g_star = corr.dual_vertex_of_face[g_face]

    z = "a0"
    quads = [
        i
        for i, face in enumerate(P.faces)
        if len(face) == 4 and z in P.face_vertices(face) and i != f_face
    ]
    if len(quads) != 1:
        raise GraphError("size-4 face at z is not unique")
    y_face = quads[0]
    y_star = corr.dual_vertex_of_face[y_face]

    degree6 = [
        v
        for v in P.face_vertices(P.faces[y_face])
        if P.graph.degree(v) == 6
    ]
    adjacent_to_z = [v for v in degree6 if z in P.graph.neighbors(v)]
    if len(adjacent_to_z) != 1:
        raise GraphError("degree-6 corner of y adjacent to z is not unique")
    x = adjacent_to_z[0]

    vertices = list(P.graph.vertices) + list(P_star.graph.vertices)
    edges = [(e.id, e.u, e.v) for e in P.graph.edges]
    labels: dict[str, str] = {e.id: "primal" for e in P.graph.edges}
    for e in P_star.graph.edges:
        edges.append((e.id, e.u, e.v))
        labels[e.id] = "dual"
    binding = []
    for i in range(ell):
        bid = f"bind{i}"
        edges.append((bid, f_star, f"a{i}"))
        labels[bid] = "binding"
        binding.append(bid)
    edges.append(("special", x, y_star))
    labels["special"] = "special"

    graph = Graph(vertices, edges, labels)
    return OneplanarFamily(
        graph=graph,
        ell=ell,
        P=P,
        P_star=P_star,
        correspondence=corr,
        f_face=f_face,
        g_face=g_face,
        f_star=f_star,
        g_star=g_star,
        z=z,
        y_face=y_face,
        y_star=y_star,
        x=x,
        binding_edges=tuple(binding),
        special_edge="special",
        warning=warning,
    )


def gen_oneplanar_multi(ell: int, k: int) -> Graph:
    """Bundle every edge except the special one into k parallel copies."""
    return gen_oneplanar_multi_family(ell, k).graph


def gen_oneplanar_multi_family(ell: int, k: int) -> OneplanarFamily:
    if ell < 6:
        raise GraphError("the multigraph family needs ell >= 6")
    if k < 1:
        raise GraphError("multiplicity must be >= 1")
    fam = gen_oneplanar(ell)
    if k == 1:
        return fam
    g = fam.graph
    vertices = list(g.vertices)
    edges: list[tuple[str, str, str]] = []
    labels: dict[str, str] = {}
    for e in g.edges:
        label = g.label(e.id)
        if e.id == fam.special_edge:
            edges.append((e.id, e.u, e.v))
            labels[e.id] = label
            continue
        for j, cid in enumerate(_copy_ids(e.id, k)):
            edges.append((cid, e.u, e.v))
            if label:
                labels[cid] = label
    graph = Graph(vertices, edges, labels)
    return OneplanarFamily(
        graph=graph,
        ell=ell,
        P=fam.P,
        P_star=fam.P_star,
        correspondence=fam.correspondence,
        f_face=fam.f_face,
        g_face=fam.g_face,
        f_star=fam.f_star,
        g_star=fam.g_star,
        z=fam.z,
        y_face=fam.y_face,
        y_star=fam.y_star,
        x=fam.x,
        binding_edges=fam.binding_edges,
        special_edge=fam.special_edge,
        warning=fam.warning,
        multiplicity=k,
    )


def _copy_ids(edge_id: str, k: int) -> list[str]:
    return [edge_id] + [f"{edge_id}~{j}" for j in range(1, k)]


# ---------------------------------------------------------------------------
# The saturated drawing: every P edge crosses its dual edge
# ---------------------------------------------------------------------------


def build_saturated(fam: OneplanarFamily) -> TopologicalDrawing:
    """Primal-dual overlay with k x k crossing grids per edge pair, plus the
    binding bundle and the special edge drawn crossing-free in their corner
    faces."""
    k = fam.multiplicity
    P, P_star = fam.P, fam.P_star
    corr = fam.correspondence
    g = fam.graph

    face_of_dart: dict[Dart, int] = {}
    for i, face in enumerate(P.faces):
        for d in face:
            face_of_dart[d] = i

    def copies(edge_id: str) -> list[str]:
        return _copy_ids(edge_id, k)

    def grid_dummy(pe_copy: str, de_copy: str) -> str:
        return f"tmp({pe_copy})({de_copy})"

    eb = EmbeddingBuilder()
    paths: dict[str, list[str]] = {}
    segs: dict[str, list[str]] = {}
    crossings: dict[str, frozenset[str]] = {}

    for v in g.vertices:
        eb.add_vertex(v)

    def register_chain(base_id: str, points: list[str], label: Optional[str]) -> None:
        sids = (
            [base_id]
            if len(points) == 2
            else [f"{base_id}|s{i}" for i in range(len(points) - 1)]
        )
        for sid, a, b in zip(sids, points, points[1:]):
            eb._register_edge(sid, a, b, label)
        paths[base_id] = points
        segs[base_id] = sids

    # dummies and chains: primal copy i of e crosses dual copies 1..k of e*
    for e in P.graph.edges:
        star = corr.dual_edge_of_edge[e.id]
        pcs, dcs = copies(e.id), copies(star)
        for pc in pcs:
            for dc in dcs:
                eb.add_vertex(grid_dummy(pc, dc))
        for pc in pcs:
            register_chain(
                pc, [e.u] + [grid_dummy(pc, dc) for dc in dcs] + [e.v], "primal"
            )
        de = P_star.graph.edge(star)
        for dc in dcs:
            register_chain(
                dc, [de.u] + [grid_dummy(pc2, dc) for pc2 in pcs] + [de.v], "dual"
            )
        for pc in pcs:
            for dc in dcs:
                crossings[grid_dummy(pc, dc)] = frozenset((pc, dc))

    def chain_dart(base_id: str, s: int) -> Dart:
        sids = segs[base_id]
        return (sids[0], 0) if s == 0 else (sids[-1], 1)

    # rotations at primal vertices: P rotation, each end expanded to the k
    # copies of its edge (ascending at u, descending at v)
    for v in P.graph.vertices:
        rot: list[Dart] = []
        for (eid, s) in P.rotation(v):
            block = copies(eid)
            if s == 1:
                block = list(reversed(block))
            rot.extend(chain_dart(c, s) for c in block)
        eb.rotation[v] = rot

    # rotations at dual vertices: dual strands stack opposite to primal ones
    # (both families cross their partners in ascending copy order, which
    # flips the chirality of the dual fan)
    for v in P_star.graph.vertices:
        rot = []
        for (deid, s) in P_star.rotation(v):
            block = copies(deid)
            if s == 0:
                block = list(reversed(block))
            rot.extend(chain_dart(c, s) for c in block)
        eb.rotation[v] = rot

    # rotations at grid dummies: [toward u-side, toward dual-u-side,
    # toward v-side, toward dual-v-side] in the copy grid
    for e in P.graph.edges:
        star = corr.dual_edge_of_edge[e.id]
        pcs, dcs = copies(e.id), copies(star)
        for i, pc in enumerate(pcs):
            for j, dc in enumerate(dcs):
                x = grid_dummy(pc, dc)
                psegs, dsegs = segs[pc], segs[dc]
                eb.rotation[x] = [
                    (psegs[j], 1),       # toward previous point on the primal copy
                    (dsegs[i], 1),       # toward previous point on the dual copy
                    (psegs[j + 1], 0),   # toward next point on the primal copy
                    (dsegs[i + 1], 0),   # toward next point on the dual copy
                ]

    # binding bundle: copy block in the corner face of each a-vertex on f,
    # between the two crossed boundary edges of f at that corner
    f_orbit = P.faces[fam.f_face]
    ell = fam.ell

    def corner_inserts(face_orbit, corner_pos: int):
        """(vertex, out-dart ref) and (face-dual vertex, out-dart ref)."""
        d_out = face_orbit[corner_pos]
        d_in = face_orbit[corner_pos - 1]
        w = P.face_vertices(face_orbit)[corner_pos]
        # at the corner vertex: before the first copy segment of the out edge
        out_first = copies(d_out[0])[0] if d_out[1] == 0 else copies(d_out[0])[-1]
        ref_w = chain_dart(out_first, d_out[1])
        # at the face's dual vertex: before the segment toward the in edge's
        # crossing; the dual edge of the in edge carries the face-side end.
        # Dual blocks are reversed at end 0, so the corner-side copy flips.
        star_in = corr.dual_edge_of_edge[d_in[0]]
        side = d_in[1]
        star_copy = copies(star_in)[-1] if side == 0 else copies(star_in)[0]
        ref_dual = chain_dart(star_copy, side)
        return w, ref_w, ref_dual

    for i in range(ell):
        pos = [
            p
            for p, d in enumerate(f_orbit)
            if P.face_vertices(f_orbit)[p] == f"a{i}"
        ]
        (p,) = pos
        w, ref_w, ref_dual = corner_inserts(f_orbit, p)
        bids = copies(f"bind{i}")
        for bid in bids:
            eb._register_edge(bid, fam.f_star, w, "binding")
            paths[bid] = [fam.f_star, w]
            segs[bid] = [bid]
        ru = eb.rotation[fam.f_star]
        ru[ru.index(ref_dual) : ru.index(ref_dual)] = [(b, 0) for b in bids]
        rw = eb.rotation[w]
        rw[rw.index(ref_w) : rw.index(ref_w)] = [(b, 1) for b in reversed(bids)]

    # special edge in the corner face at x on face y
    y_orbit = P.faces[fam.y_face]
    xpos = [
        p for p, d in enumerate(y_orbit) if P.face_vertices(y_orbit)[p] == fam.x
    ]
    (p,) = xpos
    w, ref_w, ref_dual = corner_inserts(y_orbit, p)
    eb._register_edge("special", fam.x, fam.y_star, "special")
    paths["special"] = [fam.x, fam.y_star]
    segs["special"] = ["special"]
    rw = eb.rotation[fam.x]
    rw.insert(rw.index(ref_w), ("special", 0))
    ru = eb.rotation[fam.y_star]
    ru.insert(ru.index(ref_dual), ("special", 1))

    # canonical dummy names, then freeze
    order = sorted(crossings.items(), key=lambda kv: sorted(kv[1]))
    vmap = {old: f"x{t}" for t, (old, _) in enumerate(order)}
    eb.vertices = [vmap.get(v, v) for v in eb.vertices]
    eb.edges = {
        eid: (vmap.get(a, a), vmap.get(b, b)) for eid, (a, b) in eb.edges.items()
    }
    eb.rotation = {vmap.get(v, v): rot for v, rot in eb.rotation.items()}
    skeleton = eb.freeze()
    require_sphere(skeleton, "saturated overlay")
    return TopologicalDrawing(
        g,
        skeleton,
        {e: [vmap.get(p, p) for p in pp] for e, pp in paths.items()},
        {vmap[x]: pair for x, pair in crossings.items()},
    )


# ---------------------------------------------------------------------------
# The nested minimum drawing
# ---------------------------------------------------------------------------


def nested_embedding(fam: OneplanarFamily) -> EmbeddedGraph:
    """Planar embedding of the family graph minus the special edge.

    P keeps its embedding; P* sits inside the polar face f with the face
    dual to z opening toward f; the binding edges fan out around it.
    """
    g = fam.graph.without_edges([fam.special_edge])
    k = fam.multiplicity
    P, P_star = fam.P, fam.P_star
    ell = fam.ell

    eb = EmbeddingBuilder()
    for v in g.vertices:
        eb.add_vertex(v)
    for e in g.edges:
        eb.edges[e.id] = (e.u, e.v)
        lbl = g.label(e.id)
        if lbl:
            eb.labels[e.id] = lbl

    def expand(rotation) -> list[Dart]:
        rot: list[Dart] = []
        for (eid, s) in rotation:
            block = _copy_ids(eid, k)
            if s == 1:
                block = list(reversed(block))
            rot.extend((c, s) for c in block)
        return rot

    for v in P.graph.vertices:
        eb.rotation[v] = expand(P.rotation(v))
    for v in P_star.graph.vertices:
        eb.rotation[v] = expand(P_star.rotation(v))

    # binding ends at the a-vertices: into the f-corner, i.e. right before
    # the outgoing f-boundary dart
    f_orbit = P.faces[fam.f_face]
    fverts = P.face_vertices(f_orbit)
    for p, d_out in enumerate(f_orbit):
        w = fverts[p]
        i = int(w[1:])
        first_copy = _copy_ids(d_out[0], k)[0] if d_out[1] == 0 else _copy_ids(d_out[0], k)[-1]
        ref = (first_copy, d_out[1])
        rw = eb.rotation[w]
        bids = _copy_ids(f"bind{i}", k)
        rw[rw.index(ref) : rw.index(ref)] = [(b, 1) for b in reversed(bids)]

    # binding ends at f*: the whole wheel in descending index order, inserted
    # into the gap of the rotation where the face dual to z opens
    rot_fs = eb.rotation[fam.f_star]
    # the dual rotation at f* is the reversed f walk; the corner of the face
    # dual to z lies between the dual darts of z's two boundary edges, i.e.
    # right before the dual dart of the edge arriving at z along f
    z_pos = fverts.index(fam.z)
    d_in_z = f_orbit[z_pos - 1]  # boundary edge arriving at z along f
    star_in = fam.correspondence.dual_edge_of_edge[d_in_z[0]]
    side = d_in_z[1]
    anchor_copy = _copy_ids(star_in, k)[0] if side == 0 else _copy_ids(star_in, k)[-1]
    anchor = (anchor_copy, side)
    at = rot_fs.index(anchor)
    block: list[Dart] = []
    for i in range(ell - 1, -1, -1):
        block.extend((b, 0) for b in _copy_ids(f"bind{i}", k))
    rot_fs[at:at] = block

    emb = eb.freeze()
    require_sphere(emb, "nested embedding")
    return emb


def build_min(fam: OneplanarFamily) -> TopologicalDrawing:
    """Minimum drawing: nested planar embedding plus the special edge routed
    with the fewest crossings over that fixed embedding."""
    emb = nested_embedding(fam)
    return insert_edge_min_crossings(
        emb, fam.x, fam.y_star, edge_id=fam.special_edge, label="special"
    )
