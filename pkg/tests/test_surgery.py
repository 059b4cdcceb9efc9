"""Embedding surgery primitives: every edit keeps the rotation spherical."""

from __future__ import annotations

import pytest

from crossratio.graphs import EmbeddedGraph, Graph, GraphError, require_sphere, trace_faces
from crossratio.surgery import EmbeddingBuilder, route_edge

from conftest import k4_planar_embedding


def square():
    g = Graph(
        ["a", "b", "c", "d"],
        [("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("da", "d", "a")],
    )
    rot = {
        "a": [("ab", 0), ("da", 1)],
        "b": [("bc", 0), ("ab", 1)],
        "c": [("cd", 0), ("bc", 1)],
        "d": [("da", 0), ("cd", 1)],
    }
    return EmbeddedGraph(g, rot)


class TestElementaryEdits:
    def test_chord_splits_face(self):
        b = EmbeddingBuilder.from_embedded(square())
        face = b.faces()[0]
        b.insert_edge_in_face(face, "a", "c", "ac")
        emb = b.freeze()
        require_sphere(emb)
        assert trace_faces(emb).num_faces == 3

    def test_insert_vertex_all_corners(self):
        b = EmbeddingBuilder.from_embedded(square())
        face = b.faces()[0]
        b.insert_vertex_in_face(face, attach=[0, 1, 2, 3], vertex_id="m",
                                edge_ids=["m0", "m1", "m2", "m3"])
        emb = b.freeze()
        require_sphere(emb)
        assert emb.graph.degree("m") == 4
        assert trace_faces(emb).num_faces == 5

    def test_insert_spur(self):
        b = EmbeddingBuilder.from_embedded(square())
        face = b.faces()[0]
        b.insert_vertex_in_face(face, attach=["a"], vertex_id="s", edge_ids=["sa"])
        emb = b.freeze()
        require_sphere(emb)
        assert emb.graph.degree("s") == 1
        assert trace_faces(emb).num_faces == 2

    def test_subdivide_edge(self):
        b = EmbeddingBuilder.from_embedded(square())
        b.subdivide_edge("ab", "m", ("ab1", "ab2"))
        emb = b.freeze()
        require_sphere(emb)
        assert emb.graph.num_vertices == 5
        assert emb.graph.num_edges == 5

    def test_widen_edge(self):
        b = EmbeddingBuilder.from_embedded(square())
        b.widen_edge("ab", 3, ["ab", "ab~1", "ab~2"])
        emb = b.freeze()
        require_sphere(emb)
        assert emb.graph.num_edges == 6
        assert trace_faces(emb).num_faces == 4  # two bigons appeared

    def test_parallel_paths_nest(self):
        b = EmbeddingBuilder.from_embedded(square())
        b.add_parallel_paths(
            "ab",
            3,
            side=("ab", 0),
            mid_ids=[f"p{i}" for i in range(3)],
            edge_id_pairs=[(f"p{i}a", f"p{i}b") for i in range(3)],
        )
        emb = b.freeze()
        require_sphere(emb)
        assert emb.graph.num_vertices == 7
        assert emb.graph.num_edges == 10
        assert trace_faces(emb).num_faces == 5

    def test_flip_orientation_is_invisible(self):
        b = EmbeddingBuilder.from_embedded(square())
        before = len(b.faces())
        b.flip_edge_orientation("ab")
        assert b.edges["ab"] == ("b", "a")
        assert len(b.faces()) == before


class TestRouteEdge:
    def test_zero_crossing_chord(self):
        b = EmbeddingBuilder.from_embedded(k4_planar_embedding())
        with pytest.raises(GraphError):
            # K4 is complete; no chord to add between distinct vertices
            route_edge(b, "probe", "0", "0", [])

    def test_route_across_two_edges(self):
        # square with two chords drawn outside; route a probe through both
        b = EmbeddingBuilder.from_embedded(square())
        inner, outer = b.faces()
        b.insert_edge_in_face(inner, "a", "c", "ac")
        # probe from b to d crossing ac inside
        face = b.face_containing_dart(("ac", 0))
        corners = {b.tail(x) for x in face}
        dart = ("ac", 0) if "b" in corners else ("ac", 1)
        result = route_edge(b, "probe", "b", "d", [dart])
        emb = b.freeze()
        require_sphere(emb)
        assert len(result.dummy_ids) == 1
        x = result.dummy_ids[0]
        rot = emb.rotation(x)
        owners = ["ac" if "ac" in d[0] else "probe" for d in rot]
        assert owners in (["ac", "probe", "ac", "probe"],
                          ["probe", "ac", "probe", "ac"])

    def test_route_rejects_crossing_twice(self):
        b = EmbeddingBuilder.from_embedded(square())
        inner, _ = b.faces()
        b.insert_edge_in_face(inner, "a", "c", "ac")
        with pytest.raises(GraphError):
            route_edge(b, "probe", "b", "d", [("ac", 0), ("ac", 1)])
