"""Executable crossing-pattern definitions.

Validators operate on a validated :class:`TopologicalDrawing` and depend
only on the crossing registry and the rotations at the crossing vertices,
never on a choice of outer face.

* ``check_k_planar``   -- every edge crossed at most k times.
* ``check_k_quasi_planar`` -- no k pairwise crossing edges (exact clique
  search on the crossing graph; instances here are desk-scale).
* ``check_fan_planar`` -- every crossed edge is crossed by edges sharing a
  common endpoint, all passing from the same side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .drawings import TopologicalDrawing, validate
from .graphs import GraphError


@dataclass(frozen=True)
class CrossingGraph:
    """Nodes are crossed base edges, links are crossings of the drawing."""

    nodes: tuple[str, ...]
    adj: dict[str, frozenset[str]]

    @classmethod
    def of(cls, d: TopologicalDrawing) -> "CrossingGraph":
        adj: dict[str, set[str]] = {}
        for pair in d.crossings.values():
            a, b = sorted(pair)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return cls(
            nodes=tuple(sorted(adj)),
            adj={k: frozenset(v) for k, v in adj.items()},
        )

    def max_clique_size(self, stop_at: Optional[int] = None) -> int:
        """Exact maximum clique via Bron-Kerbosch with pivoting.

        ``stop_at`` allows an early exit as soon as a clique of that size is
        known to exist.
        """
        best = 0
        adj = self.adj

        def expand(clique: int, candidates: set[str], excluded: set[str]) -> bool:
            nonlocal best
            if not candidates and not excluded:
                best = max(best, clique)
                return stop_at is not None and best >= stop_at
            if stop_at is not None and clique + len(candidates) < max(best + 1, stop_at):
                return False
            if clique + len(candidates) <= best:
                return False
            pivot_pool = candidates | excluded
            pivot = max(pivot_pool, key=lambda v: len(adj[v] & candidates))
            for v in sorted(candidates - adj[pivot]):
                if expand(clique + 1, candidates & adj[v], excluded & adj[v]):
                    return True
                candidates.remove(v)
                excluded.add(v)
            return False

        expand(0, set(self.nodes), set())
        return best


@dataclass(frozen=True)
class FanViolation:
    crossed_edge: str
    pair: tuple[str, str]
    reason: str  # "independent" | "different-sides"


@dataclass(frozen=True)
class PatternProfile:
    max_crossings_per_edge: int
    max_clique: int
    fan_violations: tuple[FanViolation, ...] = field(default=())


def _require_valid(d: TopologicalDrawing) -> None:
    report = validate(d)
    if not report.ok:
        raise GraphError("invalid drawing: " + "; ".join(report.failures()))


def check_k_planar(d: TopologicalDrawing, k: int) -> bool:
    """True iff every base edge path passes through at most ``k`` crossings."""
    if k < 0:
        raise GraphError("k must be >= 0")
    _require_valid(d)
    return all(len(path) - 2 <= k for path in d.edge_paths.values())


def check_k_quasi_planar(d: TopologicalDrawing, k: int) -> bool:
    """True iff the drawing has no ``k`` mutually crossing edges (k >= 3)."""
    if k < 3:
        raise GraphError("k-quasi-planarity is defined for k >= 3")
    _require_valid(d)
    cg = CrossingGraph.of(d)
    if not cg.nodes:
        return True
    return cg.max_clique_size(stop_at=k) < k


def _crossing_side(d: TopologicalDrawing, x: str, crossed: str, crosser: str, apex: str) -> int:
    """Which side of ``crossed`` the ``crosser`` passes to at dummy ``x``.

    ``crossed`` is oriented along its stored path; ``crosser`` is oriented
    away from the apex.  Returns 0 or 1; fan-planarity requires all crossers
    of one edge to agree.
    """
    skel = d.skeleton
    rot = skel.rotation(x)

    def dart_toward(edge: str, point: str) -> tuple[str, int]:
        path = d.edge_paths[edge]
        j = path.index(x)
        sids = d.segment_ids(edge)
        if point == path[j - 1]:
            sid = sids[j - 1]
        elif point == path[j + 1]:
            sid = sids[j]
        else:  # pragma: no cover - defended by validate
            raise GraphError("inconsistent path at crossing")
        u, v = skel.graph.edge(sid).ends
        return (sid, 0 if u == x else 1)

    path_e = d.edge_paths[crossed]
    j = path_e.index(x)
    toward_prev = dart_toward(crossed, path_e[j - 1])

    path_f = d.edge_paths[crosser]
    jf = path_f.index(x)
    # the apex is an endpoint of the crosser; orient away from it
    away_point = path_f[jf + 1] if path_f[0] == apex else path_f[jf - 1]
    away_dart = dart_toward(crosser, away_point)

    i_prev = rot.index(toward_prev)
    i_away = rot.index(away_dart)
    return 0 if (i_prev + 1) % 4 == i_away else 1


def check_fan_planar(
    d: TopologicalDrawing,
) -> tuple[bool, tuple[FanViolation, ...]]:
    """Fan-planarity with the side rule.

    For each crossed edge ``e``: the edges crossing ``e`` must share a common
    endpoint (the fan apex), and, oriented away from the apex, they must all
    pass over ``e`` in the same direction, read from the rotations at the
    crossing vertices.
    """
    _require_valid(d)
    report = validate(d)
    if not report.simple:
        raise GraphError("check_fan_planar requires a simple drawing")
    violations: list[FanViolation] = []

    crossers: dict[str, list[tuple[str, str]]] = {}
    for x, pair in sorted(d.crossings.items()):
        a, b = sorted(pair)
        crossers.setdefault(a, []).append((b, x))
        crossers.setdefault(b, []).append((a, x))

    for e in sorted(crossers):
        mates = crossers[e]
        if len(mates) == 1:
            continue
        ends = [set(d.base.edge(f).ends) for f, _ in mates]
        common = set.intersection(*ends)
        if not common:
            offending = None
            for i in range(len(mates)):
                for j in range(i + 1, len(mates)):
                    if not (ends[i] & ends[j]):
                        offending = (mates[i][0], mates[j][0])
                        break
                if offending:
                    break
            if offending is None:
                # pairwise sharing without a common apex (triangle of crossers)
                running = set(ends[0])
                for j in range(1, len(mates)):
                    if not (running & ends[j]):
                        offending = (mates[0][0], mates[j][0])
                        break
                    running &= ends[j]
            violations.append(FanViolation(e, offending, "independent"))
            continue
        fan_ok = False
        last_bad = None
        for apex in sorted(common):
            sides = [
                (_crossing_side(d, x, e, f, apex), f) for f, x in mates
            ]
            values = {s for s, _ in sides}
            if len(values) == 1:
                fan_ok = True
                break
            s0 = sides[0][0]
            other = next(f for s, f in sides if s != s0)
            last_bad = (sides[0][1], other)
        if not fan_ok:
            violations.append(FanViolation(e, last_bad, "different-sides"))

    return (not violations, tuple(violations))


def profile(d: TopologicalDrawing) -> PatternProfile:
    """All three pattern statistics of a valid drawing."""
    _require_valid(d)
    max_per_edge = max(
        (len(p) - 2 for p in d.edge_paths.values()), default=0
    )
    cg = CrossingGraph.of(d)
    clique = cg.max_clique_size() if cg.nodes else 0
    try:
        _, viol = check_fan_planar(d)
    except GraphError:
        viol = ()
    return PatternProfile(max_per_edge, clique, viol)
