"""Mutually crossing long diagonals of an even face.

Given a face of size 2k and the k base edges joining opposite corners, this
inserts all k diagonals so that every pair crosses exactly once, the way
near-concurrent chords of a convex polygon do.  The combinatorics (crossing
orders along each diagonal and the rotation at every crossing) are read off
an exact rational model: corners sit on a rational parametrization of the
circle, so all intersections and orientation tests are exact.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Sequence

from ..drawings import DrawingBuilder
from ..graphs import GraphError
from ..surgery import Face

Point = tuple[Fraction, Fraction]


def _circle_point(t: Fraction) -> Point:
    d = 1 + t * t
    return ((1 - t * t) / d, 2 * t / d)


def _intersect(a: Point, b: Point, c: Point, d: Point) -> tuple[Point, Fraction, Fraction]:
    """Intersection of segments ab and cd with the parameters along each."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    rpx, rpy = bx - ax, by - ay
    spx, spy = dx - cx, dy - cy
    denom = rpx * spy - rpy * spx
    if denom == 0:
        raise GraphError("diagonals are collinear; degenerate corner layout")
    t = ((cx - ax) * spy - (cy - ay) * spx) / denom
    s = ((cx - ax) * rpy - (cy - ay) * rpx) / denom
    return (ax + t * rpx, ay + t * rpy), t, s


def _ccw_sort(vecs: list[tuple[Point, object]]) -> list[object]:
    """Sort direction vectors counterclockwise starting in the upper half."""

    def half(v: Point) -> int:
        x, y = v
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    def cmp(a, b) -> int:
        va, vb = a[0], b[0]
        ha, hb = half(va), half(vb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = va[0] * vb[1] - va[1] * vb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise GraphError("parallel directions at a crossing")

    return [tag for _, tag in sorted(vecs, key=functools.cmp_to_key(cmp))]


def insert_mutually_crossing_diagonals(
    db: DrawingBuilder, face: Face, diagonal_ids: Sequence[str]
) -> None:
    """Insert the k long diagonals of a 2k-face, pairwise crossing once.

    ``diagonal_ids[j]`` must be the base edge joining the face corners at
    walk positions ``j`` and ``j + k``.  Handles both orientations of the
    face walk by retrying with the mirrored pattern if the first attempt is
    not spherical.
    """
    k = len(diagonal_ids)
    if len(face) != 2 * k:
        raise GraphError("face size must be twice the number of diagonals")
    snapshot = db.clone()
    try:
        _insert(db, face, diagonal_ids, mirror=False)
        if db.eb.euler_ok():
            return
    except GraphError:
        pass
    # wrong chirality: restore and mirror
    db.base = snapshot.base
    db.eb = snapshot.eb
    db.paths = snapshot.paths
    db.segs = snapshot.segs
    db.base_of_seg = snapshot.base_of_seg
    db.crossings = snapshot.crossings
    db._dummy_n = snapshot._dummy_n
    _insert(db, face, diagonal_ids, mirror=True)
    if not db.eb.euler_ok():
        raise GraphError("diagonal pattern failed in both orientations")


def _insert(
    db: DrawingBuilder, face: Face, diagonal_ids: Sequence[str], mirror: bool
) -> None:
    eb = db.eb
    m = len(face)
    k = m // 2
    corners = [eb.tail(d) for d in face]
    pts = [_circle_point(Fraction(p)) for p in range(m)]
    if mirror:
        pts = [(x, -y) for (x, y) in pts]

    # endpoints of diagonal j in walk positions
    ends = [(j, j + k) for j in range(k)]
    for j, eid in enumerate(diagonal_ids):
        e = db.base.edge(eid)
        if {corners[j], corners[j + k]} != {e.u, e.v}:
            raise GraphError(
                f"diagonal {eid!r} does not join opposite corners of the face"
            )

    # pairwise intersections with parameters along each diagonal
    crossings: dict[tuple[int, int], Point] = {}
    params: dict[int, list[tuple[Fraction, int]]] = {j: [] for j in range(k)}
    for a in range(k):
        for b in range(a + 1, k):
            pa, qa = ends[a]
            pb, qb = ends[b]
            pt, t, s = _intersect(pts[pa], pts[qa], pts[pb], pts[qb])
            if not (0 < t < 1 and 0 < s < 1):
                raise GraphError("diagonals do not cross inside the face")
            crossings[(a, b)] = pt
            params[a].append((t, b))
            params[b].append((s, a))

    dummy_id = {
        pair: f"tmpd{db._dummy_n}.{pair[0]}.{pair[1]}" for pair in crossings
    }
    db._dummy_n += 1

    # register segments of each diagonal, oriented from the base edge's u
    seg_points: dict[int, list[str]] = {}
    for j, eid in enumerate(diagonal_ids):
        order = [b for _, b in sorted(params[j])]
        mids = [dummy_id[(min(j, b), max(j, b))] for b in order]
        start_corner = corners[j]
        e = db.base.edge(eid)
        pts_along = [start_corner] + mids + [corners[j + k]]
        if e.u != start_corner:
            pts_along.reverse()
        seg_points[j] = pts_along

    for x in sorted(dummy_id.values()):
        eb.add_vertex(x)

    seg_ids: dict[int, list[str]] = {}
    for j, eid in enumerate(diagonal_ids):
        pts_along = seg_points[j]
        sids = [f"{eid}|t{i}" for i in range(len(pts_along) - 1)]
        for sid, a, b in zip(sids, pts_along, pts_along[1:]):
            eb._register_edge(sid, a, b, db.base.label(eid))
        seg_ids[j] = sids

    # corner rotations: each diagonal end goes right before the out-dart of
    # its corner on the face walk
    for j, eid in enumerate(diagonal_ids):
        pts_along = seg_points[j]
        for pos in (j, j + k):
            vcorner = corners[pos]
            if pts_along[0] == vcorner:
                dart = (seg_ids[j][0], 0)
            else:
                dart = (seg_ids[j][-1], 1)
            eb._insert_before(vcorner, face[pos], dart)

    # dummy rotations: counterclockwise by exact direction
    def direction(frm: Point, to: Point) -> Point:
        return (to[0] - frm[0], to[1] - frm[1])

    pos_of_corner = {corners[p]: pts[p] for p in range(m)}
    pos_of_dummy = {dummy_id[pair]: pt for pair, pt in crossings.items()}

    def locate(vertex: str) -> Point:
        return pos_of_dummy.get(vertex) or pos_of_corner[vertex]

    for pair, x in dummy_id.items():
        here = crossings[pair]
        vecs = []
        for j in pair:
            pts_along = seg_points[j]
            i = pts_along.index(x)
            for nb, sid, end in (
                (pts_along[i - 1], seg_ids[j][i - 1], 1),
                (pts_along[i + 1], seg_ids[j][i], 0),
            ):
                vecs.append((direction(here, locate(nb)), (sid, end)))
        eb.rotation[x] = _ccw_sort(vecs)

    # drawing bookkeeping
    for j, eid in enumerate(diagonal_ids):
        db.paths[eid] = list(seg_points[j])
        db.segs[eid] = list(seg_ids[j])
        for s in seg_ids[j]:
            db.base_of_seg[s] = eid
    for (a, b), x in dummy_id.items():
        db.crossings[x] = frozenset((diagonal_ids[a], diagonal_ids[b]))
