"""Simple topological drawings as planarization skeletons.

A drawing of a base multigraph is stored as

* a *skeleton*: a spherical embedding over the base vertices plus one
  degree-4 dummy vertex per crossing,
* *edge paths*: for every base edge the alternating sequence
  ``(endpoint, dummy, ..., dummy, endpoint)`` of skeleton vertices it
  traverses, and
* a *crossing registry* mapping each dummy to the unordered pair of base
  edges meeting there.

Skeleton edge ids are canonical: an uncrossed base edge keeps its id, a
crossed one contributes segments ``<edge>|s0 .. <edge>|st``.  Dummy ids are
``x0, x1, ...`` ordered by the sorted pair of crossing edge ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from . import surgery
from .graphs import (
    Dart,
    EmbeddedGraph,
    Graph,
    GraphError,
    require_sphere,
    reverse,
    trace_faces,
)


# ---------------------------------------------------------------------------
# Crossing schemes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrossingScheme:
    """An abstract set of pairwise crossings with per-edge crossing orders.

    ``pairs`` holds unordered pairs of base edge ids (each at most once:
    simple drawings).  ``orders[e]`` lists the crossing partners of ``e`` in
    the order they occur along ``e`` read from its canonical ``u`` endpoint;
    it is required exactly for edges crossed at least twice.
    """

    pairs: frozenset[frozenset[str]]
    orders: Mapping[str, tuple[str, ...]]

    @classmethod
    def of(
        cls,
        pairs: Iterable[tuple[str, str] | frozenset[str]],
        orders: Optional[Mapping[str, Sequence[str]]] = None,
    ) -> "CrossingScheme":
        ps = frozenset(frozenset(p) for p in pairs)
        for p in ps:
            if len(p) != 2:
                raise GraphError(f"crossing pair {set(p)} must have two edges")
        partners: dict[str, list[str]] = {}
        for p in sorted(ps, key=sorted):
            a, b = sorted(p)
            partners.setdefault(a, []).append(b)
            partners.setdefault(b, []).append(a)
        given = {k: tuple(v) for k, v in (orders or {}).items()}
        final: dict[str, tuple[str, ...]] = {}
        for e, mates in partners.items():
            if len(mates) == 1:
                if e in given and tuple(given[e]) != tuple(mates):
                    raise GraphError(f"inconsistent order for edge {e!r}")
                continue
            order = given.get(e, tuple(sorted(mates)))
            if sorted(order) != sorted(mates):
                raise GraphError(
                    f"order for edge {e!r} must cover exactly its crossings"
                )
            final[e] = tuple(order)
        for e in given:
            if e not in partners:
                raise GraphError(f"order given for uncrossed edge {e!r}")
        return cls(ps, final)

    def __len__(self) -> int:
        return len(self.pairs)

    def partners_in_order(self, edge: str) -> tuple[str, ...]:
        if edge in self.orders:
            return self.orders[edge]
        for p in self.pairs:
            if edge in p:
                (other,) = p - {edge}
                return (other,)
        return ()

    def crossed_edges(self) -> set[str]:
        return {e for p in self.pairs for e in p}


def empty_scheme() -> CrossingScheme:
    return CrossingScheme.of(())


def dummy_names(scheme: CrossingScheme) -> dict[frozenset[str], str]:
    """Deterministic dummy ids: x0, x1, ... by sorted pair of edge ids."""
    return {
        pair: f"x{k}"
        for k, pair in enumerate(sorted(scheme.pairs, key=sorted))
    }


def planarize(g: Graph, scheme: CrossingScheme) -> Graph:
    """Replace each crossed edge by a path through shared crossing dummies."""
    names = dummy_names(scheme)
    for pair in scheme.pairs:
        a, b = sorted(pair)
        ea, eb = g.edge(a), g.edge(b)
        if {ea.u, ea.v} & {eb.u, eb.v}:
            raise GraphError(f"scheme pairs adjacent edges {a!r} and {b!r}")
    if scheme.pairs and any("|" in e.id for e in g.edges):
        raise GraphError("base edge ids may not contain '|'")
    vertices = list(g.vertices)
    edges: list[tuple[str, str, str]] = []
    labels = g.labels
    new_labels: dict[str, str] = {}
    for pair in sorted(scheme.pairs, key=sorted):
        vertices.append(names[pair])
    for e in g.edges:
        mates = scheme.partners_in_order(e.id)
        if not mates:
            edges.append((e.id, e.u, e.v))
            continue
        points = [e.u] + [names[frozenset((e.id, other))] for other in mates] + [e.v]
        for j, (a, b) in enumerate(zip(points, points[1:])):
            sid = f"{e.id}|s{j}"
            edges.append((sid, a, b))
            if e.id in labels:
                new_labels[sid] = labels[e.id]
    keep = {eid: lbl for eid, lbl in labels.items() if not scheme.partners_in_order(eid)}
    keep.update(new_labels)
    return Graph(vertices, edges, keep)


# ---------------------------------------------------------------------------
# Topological drawings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple[tuple[str, bool, str], ...]
    crossing_count: int
    simple: bool

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


class TopologicalDrawing:
    """Immutable simple-drawing candidate (validity is a verdict, not a type)."""

    __slots__ = ("base", "skeleton", "edge_paths", "crossings")

    def __init__(
        self,
        base: Graph,
        skeleton: EmbeddedGraph,
        edge_paths: Mapping[str, Sequence[str]],
        crossings: Mapping[str, frozenset[str]],
    ) -> None:
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "skeleton", skeleton)
        object.__setattr__(
            self, "edge_paths", {k: tuple(v) for k, v in edge_paths.items()}
        )
        object.__setattr__(
            self, "crossings", {k: frozenset(v) for k, v in crossings.items()}
        )

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("TopologicalDrawing is immutable")

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def crossings_of_edge(self, edge_id: str) -> int:
        return len(self.edge_paths[edge_id]) - 2

    def segment_ids(self, edge_id: str) -> tuple[str, ...]:
        path = self.edge_paths[edge_id]
        if len(path) == 2:
            return (edge_id,)
        return tuple(f"{edge_id}|s{j}" for j in range(len(path) - 1))

    def scheme(self) -> CrossingScheme:
        pairs = [tuple(sorted(pair)) for pair in self.crossings.values()]
        orders: dict[str, list[str]] = {}
        for e, path in self.edge_paths.items():
            if len(path) > 3:
                mates = []
                for x in path[1:-1]:
                    (other,) = self.crossings[x] - {e}
                    mates.append(other)
                orders[e] = mates
        return CrossingScheme.of(pairs, orders)

    def __repr__(self) -> str:
        return (
            f"TopologicalDrawing(|V|={self.base.num_vertices}, "
            f"|E|={self.base.num_edges}, crossings={self.num_crossings})"
        )


def validate(d: TopologicalDrawing) -> ValidityReport:
    """Check all structural invariants plus drawing simplicity."""
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, ok, detail))

    base, skel = d.base, d.skeleton
    dummies = set(d.crossings)
    base_vertices = set(base.vertices)

    # paths cover base edges, endpoints match, interiors are dummies
    ok = set(d.edge_paths) == {e.id for e in base.edges}
    record("paths-cover-base", ok, "edge path set differs from base edge set")
    path_ok = True
    usage: dict[str, list[str]] = {x: [] for x in dummies}
    for eid, path in d.edge_paths.items():
        e = base.edge(eid) if base.has_edge(eid) else None
        if e is None or len(path) < 2 or {path[0], path[-1]} != {e.u, e.v}:
            path_ok = False
            continue
        if len(set(path)) != len(path):
            path_ok = False
        for x in path[1:-1]:
            if x not in dummies:
                path_ok = False
            else:
                usage[x].append(eid)
    record("path-endpoints", path_ok, "a path has bad endpoints or interior")

    reg_ok = all(
        len(usage.get(x, [])) == 2 and frozenset(usage[x]) == pair
        for x, pair in d.crossings.items()
    )
    record("registry", reg_ok, "dummy usage does not match crossing registry")

    # skeleton structure: vertex set and canonical segments
    skel_vertices = set(skel.graph.vertices)
    record(
        "skeleton-vertices",
        skel_vertices == base_vertices | dummies,
        "skeleton vertex set is not base + dummies",
    )
    want_edges: dict[str, tuple[str, str]] = {}
    owner_of_seg: dict[str, str] = {}
    seg_ok = True
    for eid, path in d.edge_paths.items():
        sids = d.segment_ids(eid)
        for sid, a, b in zip(sids, path, path[1:]):
            want_edges[sid] = (a, b)
            owner_of_seg[sid] = eid
    have = {e.id: (e.u, e.v) for e in skel.graph.edges}
    if set(have) != set(want_edges):
        seg_ok = False
    else:
        for sid, (a, b) in want_edges.items():
            if {a, b} != set(have[sid]):
                seg_ok = False
    record("skeleton-segments", seg_ok, "skeleton edges differ from path segments")

    # dummies: degree 4 and alternation of the two paths
    alt_ok = True
    deg_ok = True
    if seg_ok:
        for x, pair in d.crossings.items():
            rot = skel.rotation(x)
            if len(rot) != 4:
                deg_ok = False
                continue
            owners = [owner_of_seg[dart[0]] for dart in rot]
            if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
                alt_ok = False
            if frozenset(owners) != pair:
                alt_ok = False
    record("dummy-degree", deg_ok, "a crossing vertex does not have degree 4")
    record("crossing-alternation", alt_ok, "edge paths do not alternate at a crossing")

    genus_ok = seg_ok and trace_faces(skel).euler_ok
    record("skeleton-genus", genus_ok, "skeleton embedding is not spherical")

    # simplicity
    simple = True
    for x, pair in d.crossings.items():
        a, b = sorted(pair)
        if base.has_edge(a) and base.has_edge(b) and base.adjacent_edges(a, b):
            simple = False
            record("simplicity-adjacent", False, f"adjacent edges {a}, {b} cross")
    pair_counts: dict[frozenset[str], int] = {}
    for pair in d.crossings.values():
        pair_counts[pair] = pair_counts.get(pair, 0) + 1
    for pair, cnt in pair_counts.items():
        if cnt > 1:
            simple = False
            record("simplicity-multi", False, f"edges {sorted(pair)} cross {cnt} times")
    if simple:
        record("simplicity", True, "")

    return ValidityReport(tuple(checks), len(d.crossings), simple)


def crossing_count(d: TopologicalDrawing) -> int:
    report = validate(d)
    if not report.ok:
        raise GraphError("crossing_count: invalid drawing: " + "; ".join(report.failures()))
    return report.crossing_count


# ---------------------------------------------------------------------------
# Realization of schemes
# ---------------------------------------------------------------------------


def realize(
    g: Graph, scheme: CrossingScheme, emb: EmbeddedGraph
) -> TopologicalDrawing:
    """Turn a spherical embedding of ``planarize(g, scheme)`` into a drawing.

    A dummy whose rotation does not alternate between its two edge paths is
    not a proper crossing; such dummies are smoothed away (the two strands
    are split apart), so the result has at most ``len(scheme)`` crossings.
    """
    require_sphere(emb, "realize")
    names = dummy_names(scheme)
    b = surgery.EmbeddingBuilder.from_embedded(emb)

    paths: dict[str, list[str]] = {}
    segs: dict[str, list[str]] = {}
    for e in g.edges:
        mates = scheme.partners_in_order(e.id)
        points = [e.u] + [names[frozenset((e.id, m))] for m in mates] + [e.v]
        paths[e.id] = points
        segs[e.id] = (
            [e.id]
            if len(points) == 2
            else [f"{e.id}|s{j}" for j in range(len(points) - 1)]
        )

    crossings = {
        name: pair for pair, name in names.items()
    }

    # smooth non-alternating dummies
    owner_of = {s: e for e, ss in segs.items() for s in ss}
    merged = 0
    for pair, x in sorted(names.items(), key=lambda kv: sorted(kv[0])):
        rot = b.rotation[x]
        owners = [owner_of[dart[0]] for dart in rot]
        if owners[0] == owners[2] and owners[1] == owners[3] and owners[0] != owners[1]:
            continue  # proper crossing
        # group the four darts by owning edge and splice each pair through
        darts_by_owner: dict[str, list[Dart]] = {}
        for dart in rot:
            darts_by_owner.setdefault(owner_of[dart[0]], []).append(dart)
        del crossings[x]
        for eid, (d1, d2) in sorted(darts_by_owner.items()):
            new_id = f"{eid}|m{merged}"
            merged += 1
            b.merge_through(x, d1, d2, new_id)
            owner_of[new_id] = eid
            # update the path and segment bookkeeping of eid
            p = paths[eid]
            j = p.index(x)
            del p[j]
            s = segs[eid]
            s[j - 1 : j + 1] = [new_id]
        b.remove_isolated_vertex(x)

    # canonical rename of all segments
    rename: dict[str, str] = {}
    for eid, ss in segs.items():
        if len(ss) == 1:
            rename[ss[0]] = eid
        else:
            for j, s in enumerate(ss):
                rename[s] = f"{eid}|s{j}"
    _apply_rename(b, rename)

    skeleton = b.freeze()
    require_sphere(skeleton, "realized drawing skeleton")
    return TopologicalDrawing(
        g,
        skeleton,
        {e: tuple(p) for e, p in paths.items()},
        crossings,
    )


def _apply_rename(b: surgery.EmbeddingBuilder, rename: Mapping[str, str]) -> None:
    def new_id(eid: str) -> str:
        return rename.get(eid, eid)

    b.edges = {new_id(eid): uv for eid, uv in b.edges.items()}
    b.labels = {new_id(eid): lbl for eid, lbl in b.labels.items()}
    for v, rot in b.rotation.items():
        b.rotation[v] = [(new_id(eid), s) for (eid, s) in rot]


# ---------------------------------------------------------------------------
# Drawing builder (used by the family drawing constructions)
# ---------------------------------------------------------------------------


class DrawingBuilder:
    """Accumulates a drawing: a skeleton under surgery plus path bookkeeping.

    Starts from a spherical embedding of a subgraph of the base (all of it
    uncrossed) and routes the remaining base edges across existing ones.
    """

    def __init__(self, base: Graph, planar_part: EmbeddedGraph) -> None:
        if any("|" in e.id for e in base.edges):
            raise GraphError("base edge ids may not contain '|'")
        if set(planar_part.graph.vertices) != set(base.vertices):
            raise GraphError("planar part must carry all base vertices")
        self.base = base
        self.eb = surgery.EmbeddingBuilder.from_embedded(planar_part)
        self.paths: dict[str, list[str]] = {}
        self.segs: dict[str, list[str]] = {}
        self.base_of_seg: dict[str, str] = {}
        self.crossings: dict[str, frozenset[str]] = {}
        self._dummy_n = 0
        for e in planar_part.graph.edges:
            if not base.has_edge(e.id):
                raise GraphError(f"planar part has non-base edge {e.id!r}")
            self.paths[e.id] = [e.u, e.v]
            self.segs[e.id] = [e.id]
            self.base_of_seg[e.id] = e.id

    # -- queries ---------------------------------------------------------

    def clone(self) -> "DrawingBuilder":
        other = object.__new__(DrawingBuilder)
        other.base = self.base
        other.eb = self.eb.clone()
        other.paths = {k: list(v) for k, v in self.paths.items()}
        other.segs = {k: list(v) for k, v in self.segs.items()}
        other.base_of_seg = dict(self.base_of_seg)
        other.crossings = dict(self.crossings)
        other._dummy_n = self._dummy_n
        return other

    def darts_for_route(
        self, start_vertex: str, crossed_edges: Sequence[str]
    ) -> list[Dart]:
        """Crossing darts for a route that starts at ``start_vertex`` and
        crosses the listed (currently uncrossed) base edges in order.

        For each edge the dart on the face the route occupies before the
        crossing is selected; consecutive choices are chained through the
        opposite faces.
        """
        darts: list[Dart] = []
        current: Optional[surgery.Face] = None
        for eid in crossed_edges:
            segs = self.segs[eid]
            if len(segs) != 1:
                raise GraphError(f"edge {eid!r} is already crossed")
            seg = segs[0]
            options = [(seg, 0), (seg, 1)]
            if current is None:
                chosen = None
                for d in options:
                    f = self.eb.face_containing_dart(d)
                    corners = {self.eb.tail(x) for x in f}
                    if start_vertex in corners:
                        chosen = d
                        current = f
                        break
            else:
                chosen = None
                for d in options:
                    if d in current:
                        chosen = d
                        break
            if chosen is None:
                raise GraphError(
                    f"no consistent route side for edge {eid!r}"
                )
            darts.append(chosen)
            current = self.eb.face_containing_dart(
                surgery.reverse(chosen)
            )
        return darts

    def seg_dart_from(self, base_edge: str, vertex: str) -> Dart:
        """Dart of the first/last segment of a base edge, leaving ``vertex``."""
        path = self.paths[base_edge]
        if path[0] == vertex:
            return self.eb.dart_from(self.segs[base_edge][0], vertex)
        if path[-1] == vertex:
            return self.eb.dart_from(self.segs[base_edge][-1], vertex)
        raise GraphError(f"{vertex!r} is not an endpoint of {base_edge!r}")

    def whole_edge_darts(self, base_edge: str) -> list[Dart]:
        return [
            self.eb.dart_from(s, self.paths[base_edge][j])
            for j, s in enumerate(self.segs[base_edge])
        ]

    # -- edits -----------------------------------------------------------

    def route(
        self,
        edge_id: str,
        crossing_darts: Sequence[Dart],
        u_corner: Optional[int] = None,
        v_corner: Optional[int] = None,
    ) -> None:
        """Route base edge ``edge_id`` across the given skeleton darts."""
        e = self.base.edge(edge_id)
        if edge_id in self.paths:
            raise GraphError(f"edge {edge_id!r} is already drawn")
        crossed_bases = []
        for d in crossing_darts:
            owner = self.base_of_seg[d[0]]
            if owner == edge_id or self.base.adjacent_edges(owner, edge_id):
                raise GraphError(
                    f"route would cross adjacent edge {owner!r}"
                )
            crossed_bases.append(owner)
        result = surgery.route_edge(
            self.eb,
            edge_id,
            e.u,
            e.v,
            list(crossing_darts),
            u_corner=u_corner,
            v_corner=v_corner,
            label=self.base.label(edge_id),
            dummy_prefix=f"tmpx{self._dummy_n}",
        )
        # bookkeeping for the crossed edges
        for d, owner, x in zip(crossing_darts, crossed_bases, result.dummy_ids):
            seg = d[0]
            j = self.segs[owner].index(seg)
            a = self.paths[owner][j]
            tail_part, head_part = f"{seg}|{x}t", f"{seg}|{x}h"
            su, _ = self.eb.edges[tail_part]
            parts = [tail_part, head_part] if su == a else [head_part, tail_part]
            self.segs[owner][j : j + 1] = parts
            self.paths[owner].insert(j + 1, x)
            del self.base_of_seg[seg]
            self.base_of_seg[tail_part] = owner
            self.base_of_seg[head_part] = owner
            self.crossings[x] = frozenset((owner, edge_id))
        self._dummy_n += 1
        if result.dummy_ids:
            self.paths[edge_id] = [e.u, *result.dummy_ids, e.v]
            self.segs[edge_id] = list(result.segment_ids)
        else:
            self.paths[edge_id] = [e.u, e.v]
            self.segs[edge_id] = [edge_id]
        for s in self.segs[edge_id]:
            self.base_of_seg[s] = edge_id

    def chord_in_face(
        self, edge_id: str, face: surgery.Face, corner_a: str | int, corner_b: str | int
    ) -> None:
        e = self.base.edge(edge_id)
        self.eb.insert_edge_in_face(
            face, corner_a, corner_b, edge_id, self.base.label(edge_id)
        )
        u, v = self.eb.edges[edge_id]
        if {u, v} != {e.u, e.v}:
            raise GraphError(f"chord corners do not match endpoints of {edge_id!r}")
        self.paths[edge_id] = [e.u, e.v]
        self.segs[edge_id] = [edge_id]
        self.base_of_seg[edge_id] = edge_id

    # -- output ----------------------------------------------------------

    def finalize(self) -> TopologicalDrawing:
        missing = {e.id for e in self.base.edges} - set(self.paths)
        if missing:
            raise GraphError(f"drawing incomplete, missing edges {sorted(missing)}")
        # canonical dummy names ordered by their crossing pair
        order = sorted(self.crossings.items(), key=lambda kv: sorted(kv[1]))
        vmap = {old: f"x{k}" for k, (old, _) in enumerate(order)}
        emap: dict[str, str] = {}
        for eid, ss in self.segs.items():
            if len(ss) == 1:
                emap[ss[0]] = eid
            else:
                for j, s in enumerate(ss):
                    emap[s] = f"{eid}|s{j}"
        b = self.eb
        _apply_rename(b, emap)
        # rename dummy vertices
        b.vertices = [vmap.get(v, v) for v in b.vertices]
        b.edges = {
            eid: (vmap.get(u, u), vmap.get(v, v)) for eid, (u, v) in b.edges.items()
        }
        b.rotation = {vmap.get(v, v): rot for v, rot in b.rotation.items()}
        skeleton = b.freeze()
        require_sphere(skeleton, "finalized drawing skeleton")
        drawing = TopologicalDrawing(
            self.base,
            skeleton,
            {
                e: tuple(vmap.get(p, p) for p in path)
                for e, path in self.paths.items()
            },
            {vmap[x]: pair for x, pair in self.crossings.items()},
        )
        return drawing
