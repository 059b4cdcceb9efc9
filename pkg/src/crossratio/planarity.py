"""Planarity testing and planar embedding extraction.

Two routes with different priorities:

* :func:`lr_planar` -- a boolean left-right planarity test (Brandes'
  formulation) on plain adjacency arrays.  This is the oracle's hot loop;
  it allocates little and exits early on conflicts.
* :func:`is_planar` -- library-level check that additionally returns a
  spherical :class:`EmbeddedGraph` when the answer is yes.  The embedding
  is extracted with networkx and converted to our rotation convention;
  parallel edges are re-inserted as nested strands afterwards.

The two routes are cross-checked against each other in the test suite.
"""

from __future__ import annotations

from typing import Optional

import networkx as nx

from .graphs import EmbeddedGraph, Graph, GraphError, require_sphere, trace_faces

Adjacency = list[list[tuple[int, int]]]


# ---------------------------------------------------------------------------
# Left-right test on arrays
# ---------------------------------------------------------------------------


def adjacency_of(graph: Graph) -> tuple[Adjacency, list[str], list[str]]:
    """Compact adjacency view: vertex/edge index maps plus (w, edge) lists."""
    vindex = {v: i for i, v in enumerate(graph.vertices)}
    vlist = list(graph.vertices)
    elist = []
    adj: Adjacency = [[] for _ in vlist]
    for k, e in enumerate(graph.edges):
        elist.append(e.id)
        ui, vi = vindex[e.u], vindex[e.v]
        adj[ui].append((vi, k))
        adj[vi].append((ui, k))
    return adj, vlist, elist


def lr_planar(n: int, adj: Adjacency, num_edges: Optional[int] = None) -> bool:
    """Left-right planarity test; multigraphs allowed, no self-loops."""
    if num_edges is None:
        num_edges = sum(len(a) for a in adj) // 2
    m = num_edges
    if n <= 2 or m == 0:
        return True

    height = [-1] * n
    parent_edge = [-1] * n
    src = [-1] * m
    dst = [-1] * m
    lowpt = [0] * m
    lowpt2 = [0] * m
    nesting = [0] * m

    # --- phase 1: orientation DFS -------------------------------------
    for root in range(n):
        if height[root] != -1:
            continue
        height[root] = 0
        stack = [(root, 0)]
        while stack:
            v, i = stack[-1]
            descended = False
            hv = height[v]
            av = adj[v]
            while i < len(av):
                w, e = av[i]
                i += 1
                if src[e] != -1:
                    continue
                src[e] = v
                dst[e] = w
                lowpt[e] = hv
                lowpt2[e] = hv
                if height[w] == -1:
                    parent_edge[w] = e
                    height[w] = hv + 1
                    stack[-1] = (v, i)
                    stack.append((w, 0))
                    descended = True
                    break
                # back edge: post-process immediately
                lowpt[e] = height[w]
                nesting[e] = 2 * lowpt[e] + (1 if lowpt2[e] < hv else 0)
                pe = parent_edge[v]
                if pe != -1:
                    if lowpt[e] < lowpt[pe]:
                        lowpt2[pe] = min(lowpt[pe], lowpt2[e])
                        lowpt[pe] = lowpt[e]
                    elif lowpt[e] > lowpt[pe]:
                        lowpt2[pe] = min(lowpt2[pe], lowpt[e])
                    else:
                        lowpt2[pe] = min(lowpt2[pe], lowpt2[e])
            if descended:
                continue
            stack.pop()
            e = parent_edge[v]
            if e != -1:
                u = src[e]
                nesting[e] = 2 * lowpt[e] + (1 if lowpt2[e] < height[u] else 0)
                pe = parent_edge[u]
                if pe != -1:
                    if lowpt[e] < lowpt[pe]:
                        lowpt2[pe] = min(lowpt[pe], lowpt2[e])
                        lowpt[pe] = lowpt[e]
                    elif lowpt[e] > lowpt[pe]:
                        lowpt2[pe] = min(lowpt2[pe], lowpt[e])
                    else:
                        lowpt2[pe] = min(lowpt2[pe], lowpt2[e])
    # --- phase 2: testing DFS ------------------------------------------
    ordered: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        out = [e for (_, e) in adj[v] if src[e] == v]
        out.sort(key=nesting.__getitem__)
        ordered[v] = out

    # conflict pair: [L.low, L.high, R.low, R.high]; -1 = absent
    NONE = -1
    S: list[list[int]] = []
    stack_bottom: dict[int, Optional[list[int]]] = {}
    lowpt_edge = [NONE] * m
    ref = [NONE] * m

    def conflicting(hi: int, b: int) -> bool:
        return hi != NONE and lowpt[hi] > lowpt[b]

    def add_constraints(ei: int, e: int) -> bool:
        # P = new conflict pair
        pll = plh = prl = prh = NONE
        # merge return edges of ei into P.R
        bottom = stack_bottom[ei]
        while True:
            q = S.pop()
            if q[0] != NONE or q[1] != NONE:
                q[0], q[1], q[2], q[3] = q[2], q[3], q[0], q[1]
            if q[0] != NONE or q[1] != NONE:
                return False
            if lowpt[q[2]] > lowpt[e]:
                if prh == NONE:
                    prh = q[3]
                else:
                    ref[prl] = q[3]
                prl = q[2]
            else:
                ref[q[2]] = lowpt_edge[e]
            if (S and S[-1] is bottom) or (not S and bottom is None):
                break
        # merge conflicting return edges of e1..e_{i-1} into P.L
        while S and (
            conflicting(S[-1][1], ei) or conflicting(S[-1][3], ei)
        ):
            q = S.pop()
            if conflicting(q[3], ei):
                q[0], q[1], q[2], q[3] = q[2], q[3], q[0], q[1]
            if conflicting(q[3], ei):
                return False
            # merge interval below lowpt(ei) into P.R
            ref[prl] = q[3]
            if q[2] != NONE:
                prl = q[2]
            if plh == NONE:
                plh = q[1]
            else:
                ref[pll] = q[1]
            pll = q[0]
        if not (pll == NONE and plh == NONE and prl == NONE and prh == NONE):
            S.append([pll, plh, prl, prh])
        return True

    def lowest(p: list[int]) -> int:
        if p[0] == NONE and p[1] == NONE:
            return lowpt[p[2]]
        if p[2] == NONE and p[3] == NONE:
            return lowpt[p[0]]
        return min(lowpt[p[0]], lowpt[p[2]])

    def trim_back_edges(u: int) -> None:
        hu = height[u]
        while S and lowest(S[-1]) == hu:
            S.pop()
        if S:
            p = S[-1]
            # trim left interval
            while p[1] != NONE and dst[p[1]] == u:
                p[1] = ref[p[1]]
            if p[1] == NONE and p[0] != NONE:
                ref[p[0]] = p[2]
                p[0] = NONE
            # trim right interval
            while p[3] != NONE and dst[p[3]] == u:
                p[3] = ref[p[3]]
            if p[3] == NONE and p[2] != NONE:
                ref[p[2]] = p[0]
                p[2] = NONE

    roots = [v for v in range(n) if parent_edge[v] == -1]

    for root in roots:
        # frames: (v, index into ordered[v], resume-after-tree-edge)
        frames = [(root, 0, False)]
        while frames:
            v, i, resume = frames.pop()
            ov = ordered[v]
            e = parent_edge[v]
            failed = False
            if resume:
                ei = ov[i]
                if lowpt[ei] < height[v]:
                    if i == 0:
                        lowpt_edge[e] = lowpt_edge[ei]
                    else:
                        if not add_constraints(ei, e):
                            return False
                i += 1
            descended = False
            while i < len(ov):
                ei = ov[i]
                stack_bottom[ei] = S[-1] if S else None
                w = dst[ei]
                if ei == parent_edge[w]:
                    frames.append((v, i, True))
                    frames.append((w, 0, False))
                    descended = True
                    break
                lowpt_edge[ei] = ei
                S.append([NONE, NONE, ei, ei])
                if lowpt[ei] < height[v]:
                    if i == 0:
                        lowpt_edge[e] = lowpt_edge[ei]
                    else:
                        if not add_constraints(ei, e):
                            return False
                i += 1
            if descended:
                continue
            # postlude for v
            if e != -1:
                u = src[e]
                trim_back_edges(u)
                if lowpt[e] < height[u] and S:
                    hl, hr = S[-1][1], S[-1][3]
                    if hl != NONE and (hr == NONE or lowpt[hl] > lowpt[hr]):
                        ref[e] = hl
                    else:
                        ref[e] = hr
    return True


def graph_is_planar(graph: Graph) -> bool:
    adj, _, _ = adjacency_of(graph)
    return lr_planar(graph.num_vertices, adj, graph.num_edges)


# ---------------------------------------------------------------------------
# Embedding extraction
# ---------------------------------------------------------------------------


def is_planar(graph: Graph) -> tuple[bool, Optional[EmbeddedGraph]]:
    """Planarity verdict; on yes, also a spherical embedding of the graph."""
    if not graph_is_planar(graph):
        return False, None
    return True, planar_embedding(graph)


def planar_embedding(graph: Graph) -> EmbeddedGraph:
    """A spherical embedding of a planar multigraph.

    Parallel edges are collapsed for the embedding search and re-inserted as
    nested strands next to their representative, which preserves planarity.
    """
    # representative edge per unordered endpoint pair
    rep: dict[frozenset[str], str] = {}
    extras: dict[str, list[str]] = {}
    for e in graph.edges:
        key = frozenset((e.u, e.v))
        if key in rep:
            extras.setdefault(rep[key], []).append(e.id)
        else:
            rep[key] = e.id

    G = nx.Graph()
    G.add_nodes_from(graph.vertices)
    edge_of_pair: dict[tuple[str, str], str] = {}
    for key, eid in rep.items():
        u, v = tuple(key)
        G.add_edge(u, v)
        edge_of_pair[(u, v)] = eid
        edge_of_pair[(v, u)] = eid
    ok, embedding = nx.check_planarity(G)
    if not ok:
        raise GraphError("planar_embedding: graph is not planar")

    def build(reversed_order: bool) -> EmbeddedGraph:
        base = graph.without_edges(
            [x for xs in extras.values() for x in xs]
        )
        rotation: dict[str, list] = {}
        for v in graph.vertices:
            nbrs = list(embedding.neighbors_cw_order(v)) if G.degree(v) else []
            if reversed_order:
                nbrs = list(reversed(nbrs))
            darts = []
            for w in nbrs:
                eid = edge_of_pair[(v, w)]
                side = 0 if base.edge(eid).u == v else 1
                darts.append((eid, side))
            rotation[v] = darts
        return EmbeddedGraph(base, rotation)

    emb = None
    for reversed_order in (False, True):
        candidate = build(reversed_order)
        if trace_faces(candidate).euler_ok:
            emb = candidate
            break
    if emb is None:
        raise GraphError("planar_embedding: could not orient the embedding")

    if not extras:
        return emb

    from .surgery import EmbeddingBuilder

    b = EmbeddingBuilder.from_embedded(emb)
    for eid, copies in extras.items():
        u, v = b.edges[eid]
        ru = b.rotation[u]
        iu = ru.index((eid, 0))
        ru[iu + 1 : iu + 1] = [(c, 0) for c in copies]
        rv = b.rotation[v]
        iv = rv.index((eid, 1))
        rv[iv:iv] = [(c, 1) for c in reversed(copies)]
        for c in copies:
            b.edges[c] = (u, v)
            lbl = graph.label(c)
            if lbl is not None:
                b.labels[c] = lbl
    out = b.freeze()
    require_sphere(out, "planar_embedding with parallel edges")
    # restore original labels that the rep-collapse may have dropped
    return EmbeddedGraph(
        Graph(
            graph.vertices,
            [(e.id, e.u, e.v) for e in out.graph.edges],
            graph.labels,
        ),
        out.rotations,
    )
