"""Combinatorial surgery on rotation systems.

All drawing builders work by editing an embedding: inserting vertices into
faces, chording faces, subdividing edges and splicing crossing paths.  The
operations below keep the rotation system consistent so that face tracing
remains meaningful after every step; they do not themselves prove the result
spherical (callers assert that with :func:`graphs.require_sphere`).

Face positions: a face is a dart tuple ``(d_0, ..., d_{m-1})``; the corner at
position ``p`` sits at the tail of ``d_p``, between the incoming dart
``d_{p-1}`` and the outgoing dart ``d_p``.  Inserting an edge end at a corner
means inserting it immediately before ``d_p`` in the rotation at that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Dart, EmbeddedGraph, Graph, GraphError, reverse

Face = tuple[Dart, ...]


class EmbeddingBuilder:
    """Mutable companion of :class:`EmbeddedGraph`."""

    def __init__(self) -> None:
        self.vertices: list[str] = []
        self.edges: dict[str, tuple[str, str]] = {}
        self.labels: dict[str, str] = {}
        self.rotation: dict[str, list[Dart]] = {}

    # ------------------------------------------------------------------
    # construction / freezing
    # ------------------------------------------------------------------

    @classmethod
    def from_embedded(cls, emb: EmbeddedGraph) -> "EmbeddingBuilder":
        b = cls()
        b.vertices = list(emb.graph.vertices)
        b.edges = {e.id: (e.u, e.v) for e in emb.graph.edges}
        b.labels = emb.graph.labels
        b.rotation = {v: list(emb.rotation(v)) for v in b.vertices}
        return b

    def clone(self) -> "EmbeddingBuilder":
        b = EmbeddingBuilder()
        b.vertices = list(self.vertices)
        b.edges = dict(self.edges)
        b.labels = dict(self.labels)
        b.rotation = {v: list(rot) for v, rot in self.rotation.items()}
        return b

    def euler_ok(self) -> bool:
        v = len(self.vertices)
        e = len(self.edges)
        f = len(self.faces())
        # single check for connected builders; callers with several
        # components assert through trace_faces on the frozen embedding
        return v - e + f == 2

    def freeze(self, outer_face: Optional[int] = None) -> EmbeddedGraph:
        g = Graph(
            self.vertices,
            [(eid, u, v) for eid, (u, v) in self.edges.items()],
            self.labels,
        )
        return EmbeddedGraph(g, self.rotation, outer_face)

    def graph(self) -> Graph:
        return Graph(
            self.vertices,
            [(eid, u, v) for eid, (u, v) in self.edges.items()],
            self.labels,
        )

    # ------------------------------------------------------------------
    # dart helpers
    # ------------------------------------------------------------------

    def tail(self, dart: Dart) -> str:
        u, v = self.edges[dart[0]]
        return u if dart[1] == 0 else v

    def head(self, dart: Dart) -> str:
        return self.tail(reverse(dart))

    def dart_from(self, edge_id: str, vertex: str) -> Dart:
        u, v = self.edges[edge_id]
        if vertex == u:
            return (edge_id, 0)
        if vertex == v:
            return (edge_id, 1)
        raise GraphError(f"{vertex!r} is not an endpoint of {edge_id!r}")

    def face_successor(self, dart: Dart) -> Dart:
        rot = self.rotation[self.head(dart)]
        i = rot.index(reverse(dart))
        return rot[(i + 1) % len(rot)]

    def faces(self) -> list[Face]:
        seen: set[Dart] = set()
        out: list[Face] = []
        for eid in self.edges:
            for s in (0, 1):
                start = (eid, s)
                if start in seen:
                    continue
                orbit = [start]
                seen.add(start)
                d = self.face_successor(start)
                while d != start:
                    orbit.append(d)
                    seen.add(d)
                    d = self.face_successor(d)
                k = orbit.index(min(orbit))
                out.append(tuple(orbit[k:] + orbit[:k]))
        return out

    def face_containing_dart(self, dart: Dart) -> Face:
        orbit = [dart]
        d = self.face_successor(dart)
        while d != dart:
            orbit.append(d)
            d = self.face_successor(d)
        k = orbit.index(min(orbit))
        return tuple(orbit[k:] + orbit[:k])

    def face_with_corners(self, corners: set[str]) -> Face:
        """The unique face whose corner-vertex set equals ``corners``."""
        hits = [
            f
            for f in self.faces()
            if {self.tail(d) for d in f} == set(corners)
        ]
        if len(hits) != 1:
            raise GraphError(
                f"expected exactly one face with corners {sorted(corners)}, "
                f"found {len(hits)}"
            )
        return hits[0]

    def corner_positions(self, face: Face, vertex: str) -> list[int]:
        return [i for i, d in enumerate(face) if self.tail(d) == vertex]

    def corner_position(self, face: Face, vertex: str) -> int:
        pos = self.corner_positions(face, vertex)
        if len(pos) != 1:
            raise GraphError(
                f"vertex {vertex!r} appears {len(pos)} times on the face walk"
            )
        return pos[0]

    # ------------------------------------------------------------------
    # elementary edits
    # ------------------------------------------------------------------

    def add_vertex(self, vertex_id: str) -> None:
        if vertex_id in self.rotation:
            raise GraphError(f"duplicate vertex id {vertex_id!r}")
        self.vertices.append(vertex_id)
        self.rotation[vertex_id] = []

    def _register_edge(self, edge_id: str, u: str, v: str, label: Optional[str]) -> None:
        if edge_id in self.edges:
            raise GraphError(f"duplicate edge id {edge_id!r}")
        if u == v:
            raise GraphError(f"edge {edge_id!r} would be a self-loop")
        self.edges[edge_id] = (u, v)
        if label is not None:
            self.labels[edge_id] = label

    def _insert_before(self, vertex: str, ref: Optional[Dart], dart: Dart) -> None:
        rot = self.rotation[vertex]
        if ref is None:
            rot.append(dart)
        else:
            rot.insert(rot.index(ref), dart)

    def insert_vertex_in_face(
        self,
        face: Face,
        attach: Sequence[str | int],
        vertex_id: str,
        edge_ids: Sequence[str],
        label: Optional[str] = None,
    ) -> None:
        """Add a vertex inside ``face`` joined to the given corners.

        ``attach`` lists corners either by position or by (unique) corner
        vertex; the new rotation at the vertex is the reverse of the face
        walk order, which is what keeps the embedding spherical.
        """
        positions = sorted(
            p if isinstance(p, int) else self.corner_position(face, p)
            for p in attach
        )
        if len(positions) != len(set(positions)):
            raise GraphError("duplicate attachment corner")
        if len(edge_ids) != len(positions):
            raise GraphError("need exactly one edge id per attachment")
        self.add_vertex(vertex_id)
        new_darts = []
        for p, eid in zip(positions, edge_ids):
            corner_v = self.tail(face[p])
            self._register_edge(eid, corner_v, vertex_id, label)
            self._insert_before(corner_v, face[p], (eid, 0))
            new_darts.append((eid, 1))
        self.rotation[vertex_id] = list(reversed(new_darts))

    def insert_edge_in_face(
        self,
        face: Face,
        corner_a: str | int,
        corner_b: str | int,
        edge_id: str,
        label: Optional[str] = None,
    ) -> None:
        """Chord a face between two of its corners."""
        pa = corner_a if isinstance(corner_a, int) else self.corner_position(face, corner_a)
        pb = corner_b if isinstance(corner_b, int) else self.corner_position(face, corner_b)
        if pa == pb:
            raise GraphError("chord endpoints must be distinct corners")
        va, vb = self.tail(face[pa]), self.tail(face[pb])
        self._register_edge(edge_id, va, vb, label)
        self._insert_before(va, face[pa], (edge_id, 0))
        self._insert_before(vb, face[pb], (edge_id, 1))

    def subdivide_edge(
        self, edge_id: str, mid_id: str, part_ids: tuple[str, str]
    ) -> None:
        """Replace ``(u, v)`` by ``u - mid - v``; rotations keep their slots."""
        u, v = self.edges[edge_id]
        e1, e2 = part_ids
        label = self.labels.pop(edge_id, None)
        del self.edges[edge_id]
        self._register_edge(e1, u, mid_id, label)
        self._register_edge(e2, mid_id, v, label)
        ru = self.rotation[u]
        ru[ru.index((edge_id, 0))] = (e1, 0)
        rv = self.rotation[v]
        rv[rv.index((edge_id, 1))] = (e2, 1)
        self.add_vertex_inline(mid_id, [(e1, 1), (e2, 0)])

    def add_vertex_inline(self, vertex_id: str, rotation: list[Dart]) -> None:
        if vertex_id in self.rotation:
            raise GraphError(f"duplicate vertex id {vertex_id!r}")
        self.vertices.append(vertex_id)
        self.rotation[vertex_id] = rotation

    def merge_through(self, vertex: str, d1: Dart, d2: Dart, new_edge_id: str) -> None:
        """Replace the two edges meeting ``vertex`` at darts d1, d2 by one edge.

        ``d1`` and ``d2`` must have their tails at ``vertex``; the merged edge
        joins the two far endpoints and occupies their old rotation slots.
        """
        a, b = self.head(d1), self.head(d2)
        if a == b:
            raise GraphError("merge would create a self-loop")
        label = self.labels.get(d1[0]) or self.labels.get(d2[0])
        ra = self.rotation[a]
        ra[ra.index(reverse(d1))] = (new_edge_id, 0)
        rb = self.rotation[b]
        rb[rb.index(reverse(d2))] = (new_edge_id, 1)
        rot = self.rotation[vertex]
        rot.remove(d1)
        rot.remove(d2)
        self.labels.pop(d1[0], None)
        self.labels.pop(d2[0], None)
        del self.edges[d1[0]]
        del self.edges[d2[0]]
        self._register_edge(new_edge_id, a, b, label)

    def remove_isolated_vertex(self, vertex: str) -> None:
        if self.rotation[vertex]:
            raise GraphError(f"vertex {vertex!r} still has incident edges")
        del self.rotation[vertex]
        self.vertices.remove(vertex)

    def flip_edge_orientation(self, edge_id: str) -> None:
        """Swap the stored endpoint order of an edge (embedding unchanged)."""
        u, v = self.edges[edge_id]
        self.edges[edge_id] = (v, u)
        ru = self.rotation[u]
        ru[ru.index((edge_id, 0))] = (edge_id, 1)
        rv = self.rotation[v]
        rv[rv.index((edge_id, 1))] = (edge_id, 0)

    def match_orientations(self, graph: Graph) -> None:
        """Align every edge's endpoint order with a reference graph."""
        for e in graph.edges:
            if e.id in self.edges and self.edges[e.id] != (e.u, e.v):
                if set(self.edges[e.id]) != {e.u, e.v}:
                    raise GraphError(f"edge {e.id!r} endpoints disagree")
                self.flip_edge_orientation(e.id)

    def widen_edge(self, edge_id: str, copies: int, copy_ids: Sequence[str]) -> None:
        """Replace an edge by ``copies`` parallel edges drawn side by side.

        The block of copies ascends at ``u`` and descends at ``v``, which is
        the orientation that keeps parallel strands crossing-free.
        """
        if copies < 1 or len(copy_ids) != copies:
            raise GraphError("widen_edge: need one id per copy")
        u, v = self.edges[edge_id]
        label = self.labels.pop(edge_id, None)
        del self.edges[edge_id]
        for cid in copy_ids:
            self._register_edge(cid, u, v, label)
        ru = self.rotation[u]
        i = ru.index((edge_id, 0))
        ru[i : i + 1] = [(cid, 0) for cid in copy_ids]
        rv = self.rotation[v]
        j = rv.index((edge_id, 1))
        rv[j : j + 1] = [(cid, 1) for cid in reversed(copy_ids)]

    # ------------------------------------------------------------------
    # composite edits
    # ------------------------------------------------------------------

    def add_parallel_paths(
        self,
        edge_id: str,
        count: int,
        side: Dart,
        mid_ids: Sequence[str],
        edge_id_pairs: Sequence[tuple[str, str]],
        label: Optional[str] = None,
    ) -> None:
        """Nest ``count`` length-two paths alongside an edge, inside the face
        flanking the given dart of that edge.

        ``edge_id_pairs[i]`` names the (endpoint-u side, endpoint-v side)
        edges of path ``i`` where u, v are the endpoints of ``edge_id``.
        """
        if side[0] != edge_id:
            raise GraphError("side dart must belong to the extended edge")
        u, v = self.edges[edge_id]
        anchor = side
        anchor_len = 1  # number of segments between the two anchor corners
        for i in range(count):
            face = self.face_containing_dart(anchor)
            p = face.index(anchor)
            q = (p + anchor_len) % len(face)
            start_v = self.tail(face[p])
            eid_u, eid_v = edge_id_pairs[i]
            id_of = {u: eid_u, v: eid_v}
            # edge ids must line up with the attachment corners in ascending
            # face position, which may wrap past the walk start
            pos = sorted((p, q))
            ids = [id_of[self.tail(face[pos[0]])], id_of[self.tail(face[pos[1]])]]
            self.insert_vertex_in_face(
                face,
                attach=pos,
                vertex_id=mid_ids[i],
                edge_ids=ids,
                label=label,
            )
            # the next path nests in the face containing the start-side dart
            # of the path just inserted
            anchor = (id_of[start_v], 0)
            anchor_len = 2

    def add_path_bundle(
        self,
        va: str,
        vb: str,
        count: int,
        face: Face,
        away_corner: str,
        mid_ids: Sequence[str],
        edge_id_pairs: Sequence[tuple[str, str]],
        label: Optional[str] = None,
    ) -> None:
        """Nest ``count`` length-two paths between two corners of a face.

        Path ``i`` is a fresh vertex joined to ``va`` and ``vb``
        (``edge_id_pairs[i] = (va-side id, vb-side id)``).  After each
        insertion the next path goes into the successor face that still has
        ``away_corner`` on its walk, so the paths stack away from it... the
        bundle ends nearest to the remaining region around ``away_corner``.
        """
        current = face
        for i in range(count):
            pa = self.corner_position(current, va)
            pb = self.corner_position(current, vb)
            ea, eb = edge_id_pairs[i]
            first, second = (ea, eb) if pa < pb else (eb, ea)
            self.insert_vertex_in_face(
                current,
                attach=[pa, pb],
                vertex_id=mid_ids[i],
                edge_ids=[first, second],
                label=label,
            )
            if i + 1 < count:
                f1 = self.face_containing_dart((ea, 0))
                f2 = self.face_containing_dart((ea, 1))
                cands = [
                    f
                    for f in (f1, f2)
                    if away_corner in {self.tail(d) for d in f}
                ]
                if len(cands) != 1:
                    raise GraphError(
                        "bundle nesting is ambiguous; away corner on both sides"
                    )
                current = cands[0]


@dataclass(frozen=True)
class RouteResult:
    segment_ids: tuple[str, ...]
    dummy_ids: tuple[str, ...]
    crossed_edges: tuple[str, ...]


def route_edge(
    builder: EmbeddingBuilder,
    edge_id: str,
    u: str,
    v: str,
    crossing_darts: Sequence[Dart],
    u_corner: Optional[int] = None,
    v_corner: Optional[int] = None,
    label: Optional[str] = None,
    dummy_prefix: Optional[str] = None,
) -> RouteResult:
    """Splice a new edge from ``u`` to ``v`` across the listed darts.

    ``crossing_darts[i]`` is the dart of the i-th crossed edge that lies on
    the face the route traverses immediately *before* crossing it; crossing
    happens from that side to the other.  Consecutive faces must match up,
    which is checked against the face structure before any edit is applied.
    """
    t = len(crossing_darts)
    prefix = dummy_prefix or f"x({edge_id})"
    faces = []
    if t == 0:
        cands = [
            f
            for f in builder.faces()
            if builder.corner_positions(f, u) and builder.corner_positions(f, v)
        ]
        if not cands:
            raise GraphError(f"no common face for {u!r} and {v!r}")
        face = cands[0]
        pu = u_corner if u_corner is not None else builder.corner_positions(face, u)[0]
        pv = v_corner if v_corner is not None else builder.corner_positions(face, v)[0]
        builder.insert_edge_in_face(face, pu, pv, edge_id, label)
        return RouteResult((edge_id,), (), ())

    # plan: verify the face chain prior to editing
    f0 = builder.face_containing_dart(crossing_darts[0])
    if not builder.corner_positions(f0, u):
        raise GraphError(f"route start face has no corner at {u!r}")
    faces.append(f0)
    for i in range(1, t):
        fi = builder.face_containing_dart(reverse(crossing_darts[i - 1]))
        if crossing_darts[i] not in fi:
            raise GraphError(
                f"crossed edges {i - 1} and {i} do not share a face on the route"
            )
        faces.append(fi)
    ft = builder.face_containing_dart(reverse(crossing_darts[-1]))
    if not builder.corner_positions(ft, v):
        raise GraphError(f"route end face has no corner at {v!r}")
    faces.append(ft)

    crossed = tuple(d[0] for d in crossing_darts)
    if len(set(crossed)) != t:
        raise GraphError("route crosses an edge twice")

    # corner darts to insert before, resolved against the *current* rotations
    pu = u_corner if u_corner is not None else builder.corner_positions(faces[0], u)[0]
    u_ref = faces[0][pu]
    pv = v_corner if v_corner is not None else builder.corner_positions(faces[-1], v)[0]
    v_ref = faces[-1][pv]

    # subdivide the crossed edges; remember near/far sides
    dummies, near_darts, far_darts = [], [], []
    for i, d in enumerate(crossing_darts):
        eid = d[0]
        x = f"{prefix}.{i}"
        tail_v = builder.tail(d)
        e_tail, e_head = f"{eid}|{x}t", f"{eid}|{x}h"
        builder.subdivide_edge(eid, x, (e_tail, e_head))
        # the route approaches from the side of tail(d): that side's stub of
        # the crossed edge precedes the incoming segment in the dummy rotation
        if tail_v == builder.edges[e_tail][0]:
            near_in, far_in = (e_tail, 1), (e_head, 0)
        else:
            near_in, far_in = (e_head, 0), (e_tail, 1)
        dummies.append(x)
        near_darts.append(near_in)
        far_darts.append(far_in)

    # build the new edge's segments
    points = [u] + dummies + [v]
    seg_ids = [f"{edge_id}|s{i}" for i in range(t + 1)]
    for sid, a, b in zip(seg_ids, points, points[1:]):
        builder._register_edge(sid, a, b, label)

    # rotation at u / v
    builder._insert_before(u, u_ref, (seg_ids[0], 0))
    builder._insert_before(v, v_ref, (seg_ids[-1], 1))

    # rotation at each dummy: [to near side, incoming segment, to far side,
    # outgoing segment] -- incoming lives on the approach face, outgoing on
    # the face across the crossed edge, giving a proper (alternating) crossing
    for i, x in enumerate(dummies):
        incoming = (seg_ids[i], 1)
        outgoing = (seg_ids[i + 1], 0)
        builder.rotation[x] = [near_darts[i], incoming, far_darts[i], outgoing]

    return RouteResult(tuple(seg_ids), tuple(dummies), crossed)
