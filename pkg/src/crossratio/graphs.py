"""Multigraphs, rotation-system embeddings, face tracing and duality.

A graph is an undirected multigraph with string vertex/edge ids.  Parallel
edges are allowed, self-loops are not.  An embedding is a rotation system:
the cyclic order of edge-ends around each vertex.  Faces are the orbits of
the face-successor permutation; an embedding is accepted as spherical when
every connected component satisfies V - E + F = 2.

Darts: the edge end of edge ``e`` leaving ``e.u`` is ``(e.id, 0)``, the one
leaving ``e.v`` is ``(e.id, 1)``.  The successor of dart ``d`` along its face
is the dart after ``reverse(d)`` in the rotation at the head of ``d``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

Dart = tuple[str, int]

DENSITY_BOUNDS = {
    "1-planar": (Fraction(4), Fraction(-8)),
    "quasi-planar": (Fraction(13, 2), Fraction(-20)),
    "fan-planar": (Fraction(5), Fraction(-10)),
}


class GraphError(ValueError):
    """Structural problem with a graph, embedding or operation argument."""


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    @property
    def ends(self) -> tuple[str, str]:
        return (self.u, self.v)

    def other(self, vertex: str) -> str:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise GraphError(f"vertex {vertex!r} is not an endpoint of edge {self.id!r}")


class Graph:
    """Immutable multigraph with labelled edges.

    Vertex and edge ids are strings; iteration order is the (deterministic)
    insertion order of the constructor arguments.
    """

    __slots__ = ("_vertices", "_edges", "_labels", "_incidence")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]],
        labels: Optional[Mapping[str, str]] = None,
    ) -> None:
        vs: dict[str, None] = {}
        for v in vertices:
            if v in vs:
                raise GraphError(f"duplicate vertex id {v!r}")
            vs[v] = None
        es: dict[str, Edge] = {}
        incidence: dict[str, list[str]] = {v: [] for v in vs}
        for eid, u, v in edges:
            if eid in es:
                raise GraphError(f"duplicate edge id {eid!r}")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {eid!r} has unknown endpoint")
            if u == v:
                raise GraphError(f"edge {eid!r} is a self-loop")
            es[eid] = Edge(eid, u, v)
            incidence[u].append(eid)
            incidence[v].append(eid)
        lbl = dict(labels or {})
        for eid in lbl:
            if eid not in es:
                raise GraphError(f"label for unknown edge {eid!r}")
        object.__setattr__(self, "_vertices", vs)
        object.__setattr__(self, "_edges", es)
        object.__setattr__(self, "_labels", lbl)
        object.__setattr__(self, "_incidence", incidence)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Graph is immutable")

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self._vertices)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def labels(self) -> dict[str, str]:
        return dict(self._labels)

    def label(self, edge_id: str) -> Optional[str]:
        return self._labels.get(edge_id)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise GraphError(f"unknown edge id {edge_id!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertices

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def incident_edges(self, v: str) -> tuple[str, ...]:
        try:
            return tuple(self._incidence[v])
        except KeyError:
            raise GraphError(f"unknown vertex id {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self._incidence[v])

    def neighbors(self, v: str) -> tuple[str, ...]:
        return tuple(self._edges[e].other(v) for e in self._incidence[v])

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges.values():
            key = frozenset((e.u, e.v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def adjacent_edges(self, e1: str, e2: str) -> bool:
        a, b = self._edges[e1], self._edges[e2]
        return bool({a.u, a.v} & {b.u, b.v})

    def connected_components(self) -> list[frozenset[str]]:
        seen: set[str] = set()
        comps = []
        for start in self._vertices:
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                v = stack.pop()
                for eid in self._incidence[v]:
                    w = self._edges[eid].other(v)
                    if w not in comp:
                        comp.add(w)
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.num_vertices <= 1 or len(self.connected_components()) == 1

    # ------------------------------------------------------------------
    # derivation helpers
    # ------------------------------------------------------------------

    def with_edges(
        self,
        new_vertices: Iterable[str] = (),
        new_edges: Iterable[tuple[str, str, str]] = (),
        new_labels: Optional[Mapping[str, str]] = None,
    ) -> "Graph":
        labels = dict(self._labels)
        labels.update(new_labels or {})
        return Graph(
            list(self._vertices) + list(new_vertices),
            [(e.id, e.u, e.v) for e in self._edges.values()] + list(new_edges),
            labels,
        )

    def without_edges(self, edge_ids: Iterable[str]) -> "Graph":
        drop = set(edge_ids)
        return Graph(
            self._vertices,
            [(e.id, e.u, e.v) for e in self._edges.values() if e.id not in drop],
            {k: v for k, v in self._labels.items() if k not in drop},
        )

    def __repr__(self) -> str:
        return f"Graph(|V|={self.num_vertices}, |E|={self.num_edges})"


def dart_tail(graph: Graph, dart: Dart) -> str:
    e = graph.edge(dart[0])
    return e.u if dart[1] == 0 else e.v


def dart_head(graph: Graph, dart: Dart) -> str:
    e = graph.edge(dart[0])
    return e.v if dart[1] == 0 else e.u


def reverse(dart: Dart) -> Dart:
    return (dart[0], 1 - dart[1])


class EmbeddedGraph:
    """A graph together with a rotation system (sphere embedding candidate).

    ``rotation[v]`` is the cyclic counterclockwise order of darts with tail
    ``v``.  Faces are derived lazily by :func:`trace_faces`.
    """

    __slots__ = ("graph", "_rotation", "outer_face", "_faces")

    def __init__(
        self,
        graph: Graph,
        rotation: Mapping[str, Iterable[Dart]],
        outer_face: Optional[int] = None,
    ) -> None:
        rot: dict[str, tuple[Dart, ...]] = {}
        seen: set[Dart] = set()
        for v in graph.vertices:
            darts = tuple(tuple(d) for d in rotation.get(v, ()))
            for d in darts:
                if d in seen:
                    raise GraphError(f"dart {d} appears twice in rotation")
                if not graph.has_edge(d[0]):
                    raise GraphError(f"rotation references unknown edge {d[0]!r}")
                if dart_tail(graph, d) != v:
                    raise GraphError(f"dart {d} listed at wrong vertex {v!r}")
                seen.add(d)
            rot[v] = darts
        expected = 2 * graph.num_edges
        if len(seen) != expected:
            raise GraphError(
                f"rotation covers {len(seen)} darts, expected {expected}"
            )
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_rotation", rot)
        object.__setattr__(self, "outer_face", outer_face)
        object.__setattr__(self, "_faces", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("EmbeddedGraph is immutable")

    def rotation(self, v: str) -> tuple[Dart, ...]:
        return self._rotation[v]

    @property
    def rotations(self) -> dict[str, tuple[Dart, ...]]:
        return dict(self._rotation)

    def next_at_vertex(self, dart: Dart) -> Dart:
        """Dart after ``dart`` in the rotation at its tail."""
        v = dart_tail(self.graph, dart)
        rot = self._rotation[v]
        i = rot.index(dart)
        return rot[(i + 1) % len(rot)]

    def face_successor(self, dart: Dart) -> Dart:
        """Next dart along the face walk of ``dart``."""
        return self.next_at_vertex(reverse(dart))

    @property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        if self._faces is None:
            object.__setattr__(self, "_faces", _face_orbits(self))
        return self._faces

    def face_vertices(self, face: tuple[Dart, ...]) -> tuple[str, ...]:
        return tuple(dart_tail(self.graph, d) for d in face)

    def face_of_dart(self, dart: Dart) -> int:
        for i, f in enumerate(self.faces):
            if dart in f:
                return i
        raise GraphError(f"dart {dart} not on any face")

    def with_outer_face(self, face_index: Optional[int]) -> "EmbeddedGraph":
        return EmbeddedGraph(self.graph, self._rotation, face_index)

    def __repr__(self) -> str:
        return (
            f"EmbeddedGraph(|V|={self.graph.num_vertices}, "
            f"|E|={self.graph.num_edges}, |F|={len(self.faces)})"
        )


def _face_orbits(emb: EmbeddedGraph) -> tuple[tuple[Dart, ...], ...]:
    all_darts = sorted(
        (e.id, s) for e in emb.graph.edges for s in (0, 1)
    )
    seen: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    for start in all_darts:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        d = emb.face_successor(start)
        while d != start:
            orbit.append(d)
            seen.add(d)
            d = emb.face_successor(d)
        # canonical form: rotate the orbit to begin at its minimal dart
        k = orbit.index(min(orbit))
        faces.append(tuple(orbit[k:] + orbit[:k]))
    return tuple(faces)


@dataclass(frozen=True)
class FaceReport:
    """Outcome of tracing the faces of a rotation system."""

    faces: tuple[tuple[Dart, ...], ...]
    sizes: tuple[int, ...]
    euler_ok: bool
    components: int
    polar_face_ids: Optional[tuple[int, int]] = None

    @property
    def size_multiset(self) -> Counter:
        return Counter(self.sizes)

    @property
    def num_faces(self) -> int:
        return len(self.faces)


def trace_faces(emb: EmbeddedGraph) -> FaceReport:
    """Trace all faces and check the spherical Euler identity per component.

    Never raises: a rotation system of higher genus yields a report with
    ``euler_ok=False``.
    """
    faces = emb.faces
    comps = emb.graph.connected_components()
    ok = True
    if emb.graph.num_vertices:
        # assign each face to the component of its first dart
        face_comp: list[int] = []
        comp_index = {v: i for i, c in enumerate(comps) for v in c}
        for f in faces:
            face_comp.append(comp_index[dart_tail(emb.graph, f[0])])
        edge_comp = Counter(
            comp_index[e.u] for e in emb.graph.edges
        )
        face_count = Counter(face_comp)
        for i, comp in enumerate(comps):
            v, e, f = len(comp), edge_comp.get(i, 0), face_count.get(i, 0)
            if comp == frozenset() or v - e + f != 2:
                if v == 1 and e == 0:
                    ok = ok and f == 0  # isolated vertex has no darts
                else:
                    ok = False
    return FaceReport(
        faces=faces,
        sizes=tuple(len(f) for f in faces),
        euler_ok=ok,
        components=len(comps),
    )


def require_sphere(emb: EmbeddedGraph, context: str = "embedding") -> None:
    report = trace_faces(emb)
    if not report.euler_ok:
        raise GraphError(f"{context}: rotation system is not spherical (genus > 0)")


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualCorrespondence:
    """Bijections tying a primal embedding to its dual."""

    dual_vertex_of_face: dict[int, str]
    face_of_dual_vertex: dict[str, int]
    dual_edge_of_edge: dict[str, str]
    edge_of_dual_edge: dict[str, str]
    dual_face_of_vertex: dict[str, int] = field(default_factory=dict)


def dual(
    emb: EmbeddedGraph, vertex_prefix: str = "f", edge_suffix: str = "*"
) -> tuple[EmbeddedGraph, DualCorrespondence]:
    """Dual embedding: one vertex per face, one edge crossing each edge.

    Requires a connected spherical embedding.  The dual rotation at a face
    vertex is the reversed face walk, which keeps the overall orientation
    consistent with the primal embedding.
    """
    if not emb.graph.is_connected():
        raise GraphError("dual: input embedding must be connected")
    require_sphere(emb, "dual")
    faces = emb.faces
    face_of_dart: dict[Dart, int] = {}
    for i, f in enumerate(faces):
        for d in f:
            face_of_dart[d] = i

    names = {i: f"{vertex_prefix}{i}" for i in range(len(faces))}
    dual_edges: list[tuple[str, str, str]] = []
    dual_edge_of_edge: dict[str, str] = {}
    for e in emb.graph.edges:
        fu = face_of_dart[(e.id, 0)]
        fv = face_of_dart[(e.id, 1)]
        if fu == fv:
            raise GraphError(
                f"dual: edge {e.id!r} is a bridge (self-loop in the dual)"
            )
        deid = f"{e.id}{edge_suffix}"
        dual_edges.append((deid, names[fu], names[fv]))
        dual_edge_of_edge[e.id] = deid

    dual_graph = Graph([names[i] for i in range(len(faces))], dual_edges)
    rotation: dict[str, list[Dart]] = {}
    for i, f in enumerate(faces):
        # dual dart (e*, s) has its tail at the dual vertex of face((e, s))
        rotation[names[i]] = [
            (dual_edge_of_edge[eid], s) for (eid, s) in reversed(f)
        ]
    dual_emb = EmbeddedGraph(dual_graph, rotation)
    require_sphere(dual_emb, "dual output")

    # dual faces correspond to primal vertices: every dart on one dual face
    # orbit projects to the same primal vertex (head or tail, depending on
    # orientation); detect which projection is the consistent one
    inv = {v: k for k, v in dual_edge_of_edge.items()}
    dual_face_of_vertex: dict[str, int] = {}
    for project in (dart_head, dart_tail):
        mapping: dict[str, int] = {}
        consistent = True
        for j, df in enumerate(dual_emb.faces):
            prim = {project(emb.graph, (inv[deid], s)) for (deid, s) in df}
            if len(prim) != 1:
                consistent = False
                break
            mapping[prim.pop()] = j
        if consistent and len(mapping) == emb.graph.num_vertices:
            dual_face_of_vertex = mapping
            break
    if not dual_face_of_vertex:
        raise GraphError("dual: face/vertex correspondence failed")

    return dual_emb, DualCorrespondence(
        dual_vertex_of_face=dict(names),
        face_of_dual_vertex={v: k for k, v in names.items()},
        dual_edge_of_edge=dual_edge_of_edge,
        edge_of_dual_edge={v: k for k, v in dual_edge_of_edge.items()},
        dual_face_of_vertex=dual_face_of_vertex,
    )


# ---------------------------------------------------------------------------
# Structural operators
# ---------------------------------------------------------------------------


def extend_edge(g: Graph, edge_id: str, count: int) -> Graph:
    """Add ``count`` disjoint length-two paths between the endpoints of an edge.

    The original edge is kept; new edges carry the label ``extension(<edge>)``.
    """
    e = g.edge(edge_id)
    if count < 0:
        raise GraphError("extension count must be >= 0")
    vertices, edges, labels = [], [], {}
    for i in range(count):
        mid = f"{edge_id}+p{i}"
        e1, e2 = f"{edge_id}+p{i}a", f"{edge_id}+p{i}b"
        vertices.append(mid)
        edges.append((e1, e.u, mid))
        edges.append((e2, mid, e.v))
        labels[e1] = f"extension({edge_id})"
        labels[e2] = f"extension({edge_id})"
    return g.with_edges(vertices, edges, labels)


def cartesian_path2_cycle(ell: int) -> EmbeddedGraph:
    """Prism-of-a-cycle: the product of a length-2 path with an ell-cycle.

    Rows ``a`` and ``c`` are the outer rows, row ``b`` the middle one.  The
    embedding has 2*ell quadrangular faces plus the two ell-gonal faces
    bounded by the ``a``- and ``c``-cycles.
    """
    if ell < 3:
        raise GraphError("cycle length must be >= 3")
    vertices = []
    for row in ("a", "b", "c"):
        vertices += [f"{row}{i}" for i in range(ell)]
    edges = []
    for row in ("a", "b", "c"):
        for i in range(ell):
            j = (i + 1) % ell
            edges.append((f"E{row}{i}", f"{row}{i}", f"{row}{j}"))
    for i in range(ell):
        edges.append((f"Rab{i}", f"a{i}", f"b{i}"))
        edges.append((f"Rcb{i}", f"c{i}", f"b{i}"))
    g = Graph(vertices, edges)

    def cyc(row: str, i: int) -> tuple[Dart, Dart]:
        # (dart toward i+1, dart toward i-1)
        fwd = (f"E{row}{i}", 0)
        bwd = (f"E{row}{(i - 1) % ell}", 1)
        return fwd, bwd

    rotation: dict[str, list[Dart]] = {}
    for i in range(ell):
        a_f, a_b = cyc("a", i)
        b_f, b_b = cyc("b", i)
        c_f, c_b = cyc("c", i)
        rotation[f"a{i}"] = [a_f, (f"Rab{i}", 0), a_b]
        rotation[f"b{i}"] = [(f"Rab{i}", 1), b_f, (f"Rcb{i}", 1), b_b]
        rotation[f"c{i}"] = [(f"Rcb{i}", 0), c_f, c_b]
    emb = EmbeddedGraph(g, rotation)
    require_sphere(emb, "cartesian_path2_cycle")
    return emb


def _is_product_embedding(emb: EmbeddedGraph) -> Optional[int]:
    n = emb.graph.num_vertices
    if n % 3 or n < 9:
        return None
    ell = n // 3
    expected = {f"{row}{i}" for row in "abc" for i in range(ell)}
    if set(emb.graph.vertices) != expected or emb.graph.num_edges != 5 * ell:
        return None
    return ell


def medial_extension(base: EmbeddedGraph) -> EmbeddedGraph:
    """Insert a degree-3 vertex into every quadrangular face of the product.

    In the band between outer row ``r`` (``a`` or ``c``) and the middle row
    ``b``, the vertex inserted into the quad ``(r_i, b_i, b_{i+1}, r_{i+1})``
    attaches to ``r_i``, ``r_{i+1}`` and ``b_i`` --- the same orientation in
    every face of a band.  The result has 5*ell vertices, 11*ell edges and
    6*ell + 2 faces.
    """
    from . import surgery

    ell = _is_product_embedding(base)
    if ell is None:
        raise GraphError("medial_extension: input is not a path2 x cycle embedding")
    builder = surgery.EmbeddingBuilder.from_embedded(base)
    for row, tag in (("a", "A"), ("c", "C")):
        for i in range(ell):
            j = (i + 1) % ell
            face = builder.face_with_corners(
                {f"{row}{i}", f"{row}{j}", f"b{i}", f"b{j}"}
            )
            mid = f"m{tag}{i}"
            builder.insert_vertex_in_face(
                face,
                attach=[f"{row}{i}", f"{row}{j}", f"b{i}"],
                vertex_id=mid,
                edge_ids=[f"M{tag}{i}r0", f"M{tag}{i}r1", f"M{tag}{i}s"],
            )
    emb = builder.freeze()
    require_sphere(emb, "medial_extension")
    return emb


# ---------------------------------------------------------------------------
# Density sanity checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityVerdict:
    ok: bool
    graph_class: str
    n: int
    m: int
    bound: Fraction
    multigraph: bool = False

    def __bool__(self) -> bool:
        return self.ok


def check_density(g: Graph, graph_class: str) -> DensityVerdict:
    """Edge-count sanity check against the class density bound.

    Bounds: 4n-8 (1-planar), 6.5n-20 (quasi-planar), 5n-10 (fan-planar).
    Only simple graphs qualify; parallel edges are flagged, not compared.
    """
    if graph_class not in DENSITY_BOUNDS:
        raise GraphError(f"unknown drawing class {graph_class!r}")
    slope, offset = DENSITY_BOUNDS[graph_class]
    n, m = g.num_vertices, g.num_edges
    if not g.is_simple():
        return DensityVerdict(False, graph_class, n, m, Fraction(0), multigraph=True)
    bound = max(slope * n + offset, Fraction(0))
    return DensityVerdict(m <= bound, graph_class, n, m, bound)
