"""Randomized property suites over small instances.

Each property runs on hundreds of seeded random instances; together the
suites exceed a thousand cases per run.  Instances are derived from integer
seeds so shrinking stays meaningful and runs stay reproducible.
"""

from __future__ import annotations

import random

import networkx as nx
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from crossratio import formats
from crossratio.drawings import planarize, realize, validate
from crossratio.graphs import Graph, dual, trace_faces
from crossratio.oracle import insert_edge_min_crossings
from crossratio.patterns import check_k_planar, check_k_quasi_planar
from crossratio.planarity import graph_is_planar, is_planar, planar_embedding
from crossratio.render import render_svg, svg_crossing_count

from conftest import random_planar_graph

COMMON = dict(
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


def bridgeless_planar(rng: random.Random, max_n: int = 9) -> Graph:
    """Random cycle plus planar chords: connected, no bridges."""
    n = rng.randint(3, max_n)
    edges = [(i, (i + 1) % n) for i in range(n)]
    candidates = [
        (i, j)
        for i in range(n)
        for j in range(i + 2, n)
        if (i, j) not in edges and not (i == 0 and j == n - 1)
    ]
    rng.shuffle(candidates)
    for (i, j) in candidates[: rng.randint(0, 6)]:
        trial = Graph(
            [str(x) for x in range(n)],
            [(f"t{k}", str(a), str(b)) for k, (a, b) in enumerate(edges + [(i, j)])],
        )
        if graph_is_planar(trial):
            edges.append((i, j))
    return Graph(
        [str(x) for x in range(n)],
        [(f"t{k}", str(a), str(b)) for k, (a, b) in enumerate(edges)],
    )


def random_drawing(rng: random.Random, max_n: int = 9):
    """Valid random drawing: a planar base plus one or two inserted edges."""
    g = random_planar_graph(rng, max_n=max_n, extra=6)
    emb = planar_embedding(g)
    non_edges = [
        (u, v)
        for u in g.vertices
        for v in g.vertices
        if u < v and v not in g.neighbors(u)
    ]
    if not non_edges:
        return None
    u, v = non_edges[rng.randrange(len(non_edges))]
    return insert_edge_min_crossings(emb, u, v, edge_id="probe")


@settings(max_examples=250, **COMMON)
@given(st.integers(0, 10**9))
def test_euler_identity_after_face_tracing(seed):
    rng = random.Random(seed)
    g = random_planar_graph(rng, max_n=11, extra=8)
    emb = planar_embedding(g)
    report = trace_faces(emb)
    assert report.euler_ok
    v, e, f = g.num_vertices, g.num_edges, report.num_faces
    assert v - e + f == 2
    assert sum(report.sizes) == 2 * e


@settings(max_examples=200, **COMMON)
@given(st.integers(0, 10**9))
def test_dual_of_dual_isomorphic(seed):
    rng = random.Random(seed)
    g = bridgeless_planar(rng)
    emb = planar_embedding(g)
    d1, corr1 = dual(emb)
    d2, _ = dual(d1, vertex_prefix="g")
    assert d2.graph.num_vertices == g.num_vertices
    assert d2.graph.num_edges == g.num_edges
    G1 = nx.MultiGraph([(e.u, e.v) for e in g.edges])
    G2 = nx.MultiGraph([(e.u, e.v) for e in d2.graph.edges])
    assert nx.is_isomorphic(G1, G2)
    # dual degree equals face size
    for i, face in enumerate(emb.faces):
        assert d1.graph.degree(corr1.dual_vertex_of_face[i]) == len(face)


@settings(max_examples=150, **COMMON)
@given(st.integers(0, 10**9))
def test_validator_monotone_in_k(seed):
    rng = random.Random(seed)
    d = random_drawing(rng)
    if d is None:
        return
    assert validate(d).ok
    flags = [check_k_planar(d, k) for k in range(0, 6)]
    assert flags == sorted(flags)
    quasi_flags = [check_k_quasi_planar(d, k) for k in (3, 4, 5)]
    assert quasi_flags == sorted(quasi_flags)
    # a 1-planar drawing is always quasi-planar
    if check_k_planar(d, 1):
        assert check_k_quasi_planar(d, 3)


@settings(max_examples=150, **COMMON)
@given(st.integers(0, 10**9))
def test_smoothing_never_increases_crossings(seed):
    rng = random.Random(seed)
    d = random_drawing(rng)
    if d is None or d.num_crossings == 0:
        return
    scheme = d.scheme()
    ok, emb = is_planar(planarize(d.base, scheme))
    assert ok
    redrawn = realize(d.base, scheme, emb)
    assert validate(redrawn).ok
    assert redrawn.num_crossings <= len(scheme)
    assert {e.id for e in redrawn.base.edges} == {e.id for e in d.base.edges}


@settings(max_examples=150, **COMMON)
@given(st.integers(0, 10**9))
def test_serialize_parse_round_trip(seed):
    rng = random.Random(seed)
    d = random_drawing(rng)
    if d is None:
        return
    text = formats.serialize(formats.drawing_to_dict(d, {"seed": seed}))
    parsed = formats.parse(text)
    assert parsed.drawing.crossings == d.crossings
    assert parsed.drawing.edge_paths == d.edge_paths
    assert formats.serialize(parsed.to_dict()) == text


@settings(max_examples=120, **COMMON)
@given(st.integers(0, 10**9))
def test_svg_intersections_equal_crossings(seed):
    rng = random.Random(seed)
    d = random_drawing(rng, max_n=8)
    if d is None:
        return
    svg = render_svg(d)
    assert svg_crossing_count(svg) == d.num_crossings


@settings(max_examples=60, **COMMON)
@given(st.integers(0, 10**9))
def test_realize_planarize_round_trip(seed):
    rng = random.Random(seed)
    d = random_drawing(rng)
    if d is None or d.num_crossings == 0:
        return
    rebuilt = realize(d.base, d.scheme(), d.skeleton)
    assert rebuilt.crossings == d.crossings
    assert rebuilt.edge_paths == d.edge_paths
