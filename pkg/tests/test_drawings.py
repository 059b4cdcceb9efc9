"""Drawing model: validation, planarization, realization and smoothing."""

from __future__ import annotations

import pytest

from crossratio.drawings import (
    CrossingScheme,
    TopologicalDrawing,
    crossing_count,
    empty_scheme,
    planarize,
    realize,
    validate,
)
from crossratio.graphs import EmbeddedGraph, Graph, GraphError
from crossratio.planarity import graph_is_planar, is_planar

from conftest import complete_bipartite, complete_graph


def k5_one_crossing():
    g = complete_graph(5)
    s = CrossingScheme.of([("e0-3", "e1-2")])
    ok, emb = is_planar(planarize(g, s))
    assert ok
    return realize(g, s, emb)


class TestValidate:
    def test_planar_k4(self):
        g = complete_graph(4)
        ok, emb = is_planar(g)
        d = realize(g, empty_scheme(), emb)
        report = validate(d)
        assert report.ok and report.crossing_count == 0

    def test_k5_one_crossing(self):
        d = k5_one_crossing()
        report = validate(d)
        assert report.ok and report.crossing_count == 1
        assert crossing_count(d) == 1

    def test_adjacent_edges_sharing_dummy_flagged(self):
        # hand-built bad drawing: two edges at a shared endpoint "cross"
        g = Graph(["a", "b", "c"], [("e", "a", "b"), ("f", "a", "c")])
        skel = Graph(
            ["a", "b", "c", "x0"],
            [
                ("e|s0", "a", "x0"),
                ("e|s1", "x0", "b"),
                ("f|s0", "a", "x0"),
                ("f|s1", "x0", "c"),
            ],
        )
        emb = EmbeddedGraph(
            skel,
            {
                "a": [("e|s0", 0), ("f|s0", 0)],
                "b": [("e|s1", 1)],
                "c": [("f|s1", 1)],
                "x0": [("e|s0", 1), ("f|s0", 1), ("e|s1", 0), ("f|s1", 0)],
            },
        )
        d = TopologicalDrawing(
            g,
            emb,
            {"e": ("a", "x0", "b"), "f": ("a", "x0", "c")},
            {"x0": frozenset(("e", "f"))},
        )
        report = validate(d)
        assert not report.simple
        assert any(name == "simplicity-adjacent" for name, ok, _ in report.checks if not ok)

    def test_crossing_count_requires_valid(self):
        g = Graph(["a", "b"], [("e", "a", "b")])
        skel = Graph(["a", "b"], [("e", "a", "b")])
        emb = EmbeddedGraph(skel, {"a": [("e", 0)], "b": [("e", 1)]})
        d = TopologicalDrawing(g, emb, {}, {})  # paths missing
        with pytest.raises(GraphError):
            crossing_count(d)


class TestPlanarize:
    def test_empty_scheme_identity(self):
        g = complete_graph(5)
        out = planarize(g, empty_scheme())
        assert {e.id for e in out.edges} == {e.id for e in g.edges}
        assert out.num_vertices == 5

    def test_k5_single_pair(self):
        g = complete_graph(5)
        out = planarize(g, CrossingScheme.of([("e0-3", "e1-2")]))
        # one shared dummy, each crossed edge split in two
        assert out.num_vertices == 6
        assert out.num_edges == 12
        assert graph_is_planar(out)

    def test_k33_empty_scheme_nonplanar(self):
        out = planarize(complete_bipartite(3, 3), empty_scheme())
        assert not graph_is_planar(out)

    def test_adjacent_pair_rejected(self):
        g = complete_graph(4)
        with pytest.raises(GraphError):
            planarize(g, CrossingScheme.of([("e0-1", "e0-2")]))

    def test_order_must_cover_crossings(self):
        with pytest.raises(GraphError):
            CrossingScheme.of(
                [("a", "b"), ("a", "c")], orders={"a": ("b",)}
            )


class TestRealize:
    def test_alternating_gives_full_count(self):
        d = k5_one_crossing()
        assert d.num_crossings == 1

    def test_non_alternating_dummy_smoothed(self):
        g = Graph(
            ["u1", "u2", "u3", "u4"],
            [("e", "u1", "u2"), ("f", "u3", "u4")],
        )
        s = CrossingScheme.of([("e", "f")])
        pg = planarize(g, s)
        # embedding with the two strands side by side (no proper crossing)
        emb = EmbeddedGraph(
            pg,
            {
                "u1": [("e|s0", 0)],
                "u2": [("e|s1", 1)],
                "u3": [("f|s0", 0)],
                "u4": [("f|s1", 1)],
                "x0": [("e|s0", 1), ("e|s1", 0), ("f|s0", 1), ("f|s1", 0)],
            },
        )
        d = realize(g, s, emb)
        assert d.num_crossings == 0
        assert validate(d).ok
        # smoothing restores plain edges
        assert d.edge_paths["e"] == ("u1", "u2")

    def test_k6_three_crossing_scheme(self):
        from crossratio.oracle import exact_cr

        cert = exact_cr(complete_graph(6), 3)
        assert cert.value == 3
        d = cert.witness
        assert validate(d).ok and d.num_crossings == 3

    def test_round_trip_scheme(self):
        d = k5_one_crossing()
        s = d.scheme()
        ok, emb = is_planar(planarize(d.base, s))
        d2 = realize(d.base, s, emb)
        assert d2.crossings == d.crossings


class TestSchemeOf:
    def test_orders_recovered(self, quasi2):
        from crossratio.families import build_drawing

        d = build_drawing(quasi2, "quasi-planar")
        s = d.scheme()
        assert len(s) == d.num_crossings
        rebuilt = {tuple(sorted(p)) for p in s.pairs}
        assert rebuilt == {tuple(sorted(p)) for p in d.crossings.values()}
