"""Document format: canonical serialization, strict parsing, exports."""

from __future__ import annotations

import json

import pytest

from crossratio import formats
from crossratio.drawings import empty_scheme, realize
from crossratio.families import build_drawing
from crossratio.graphs import Graph
from crossratio.planarity import is_planar

from conftest import complete_graph


def k4_drawing():
    g = complete_graph(4)
    ok, emb = is_planar(g)
    return realize(g, empty_scheme(), emb)


class TestRoundTrip:
    def test_empty_graph_document(self):
        doc = formats.graph_document(Graph([], []))
        text = formats.serialize(doc)
        parsed = formats.parse(text)
        assert parsed.graph.num_vertices == 0
        assert formats.serialize(parsed.to_dict()) == text

    def test_graph_only(self, quasi2):
        doc = formats.graph_document(quasi2.graph, {"family": "quasi", "ell": 2})
        text = formats.serialize(doc)
        parsed = formats.parse(text)
        assert formats.serialize(parsed.to_dict()) == text
        assert parsed.meta["family"] == "quasi"
        assert parsed.graph.labels == quasi2.graph.labels

    def test_drawing_round_trip(self, oneplanar7):
        d = build_drawing(oneplanar7, "min")
        text = formats.serialize(formats.drawing_to_dict(d))
        parsed = formats.parse(text)
        assert parsed.drawing is not None
        assert parsed.drawing.crossings == d.crossings
        assert parsed.drawing.edge_paths == d.edge_paths
        assert formats.serialize(parsed.to_dict()) == text

    def test_saturated_document_has_77_crossings(self, oneplanar7):
        d = build_drawing(oneplanar7, "saturated")
        doc = formats.drawing_to_dict(d)
        assert len(doc["drawing"]["crossings"]) == 77

    def test_serialization_is_canonical(self, quasi2):
        d = build_drawing(quasi2, "min")
        a = formats.serialize(formats.drawing_to_dict(d))
        b = formats.serialize(formats.drawing_to_dict(build_drawing(quasi2, "min")))
        assert a == b


class TestStrictParse:
    def test_unknown_top_level_field(self):
        doc = formats.graph_document(complete_graph(3))
        doc["surprise"] = 1
        with pytest.raises(formats.FormatError, match="unknown field"):
            formats.parse(formats.serialize(doc))

    def test_unknown_edge_field(self):
        doc = formats.graph_document(complete_graph(3))
        doc["graph"]["edges"][0]["weight"] = 2
        with pytest.raises(formats.FormatError, match="unknown field"):
            formats.parse(formats.serialize(doc))

    def test_wrong_version(self):
        doc = formats.graph_document(complete_graph(3))
        doc["format"] = 99
        with pytest.raises(formats.FormatError, match="version"):
            formats.parse(formats.serialize(doc))

    def test_degree_three_crossing_rejected(self, oneplanar7):
        d = build_drawing(oneplanar7, "min")
        doc = formats.drawing_to_dict(d)
        # strip one rotation entry at a crossing: degree 3 is not a crossing
        doc["drawing"]["rotations"]["x0"] = doc["drawing"]["rotations"]["x0"][:3]
        with pytest.raises(formats.FormatError):
            formats.parse(formats.serialize(doc))

    def test_fabricated_crossing_record_rejected(self):
        d = k4_drawing()
        doc = formats.drawing_to_dict(d)
        doc["drawing"]["crossings"] = [{"id": "x0", "edges": ["e0-1", "e2-3"]}]
        with pytest.raises(formats.FormatError):
            formats.parse(formats.serialize(doc))

    def test_invalid_drawing_rejected(self, oneplanar7):
        d = build_drawing(oneplanar7, "min")
        doc = formats.drawing_to_dict(d)
        # corrupt one rotation: swap two entries at a crossing vertex
        rot = doc["drawing"]["rotations"]["x0"]
        rot[0], rot[1] = rot[1], rot[0]
        with pytest.raises(formats.FormatError, match="validation failed"):
            formats.parse(formats.serialize(doc))

    def test_bad_json(self):
        with pytest.raises(formats.FormatError, match="JSON"):
            formats.parse("{nope")

    def test_self_loop_rejected(self):
        doc = {
            "format": 1,
            "kind": "drawing-document",
            "graph": {"vertices": ["a"], "edges": [{"id": "e", "u": "a", "v": "a"}]},
            "drawing": None,
            "meta": {},
        }
        with pytest.raises(formats.FormatError, match="loop"):
            formats.parse(formats.serialize(doc))


class TestExports:
    def test_dot(self, quasi2):
        out = formats.to_dot(quasi2.graph)
        assert out.startswith("graph {")
        assert '"u0" -- "u3" [label="special"]' in out

    def test_graphml(self, fan2):
        out = formats.to_graphml(fan2.graph)
        assert out.startswith("<?xml")
        assert 'source="u" target="v"' in out
