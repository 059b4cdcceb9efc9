"""Rendering: layout validity, the SVG crossing invariant, determinism."""

from __future__ import annotations

import os

import pytest

from crossratio.drawings import empty_scheme, realize
from crossratio.families import (
    build_drawing,
    gen_fan,
    gen_oneplanar,
    gen_oneplanar_multi_family,
    gen_quasi,
)
from crossratio.planarity import is_planar
from crossratio.render import render_figure, render_svg, svg_crossing_count

from conftest import complete_graph


def k4_drawing():
    g = complete_graph(4)
    ok, emb = is_planar(g)
    return realize(g, empty_scheme(), emb)


class TestSvg:
    def test_planar_k4_no_bends_no_intersections(self):
        d = k4_drawing()
        svg = render_svg(d)
        assert svg_crossing_count(svg) == 0
        # no dummies means no polyline bends: every edge is one segment
        assert all(len(path) == 2 for path in d.edge_paths.values())

    @pytest.mark.parametrize(
        "make,style,expected",
        [
            (lambda: gen_oneplanar(7), "min", 2),
            (lambda: gen_quasi(2), "quasi-planar", 5),
            (lambda: gen_quasi(3), "min", 3),
            (lambda: gen_fan(4), "fan-planar", 4),
            (lambda: gen_fan(2), "min", 3),
            (lambda: gen_oneplanar_multi_family(7, 2), "min", 4),
        ],
    )
    def test_intersection_count_matches(self, make, style, expected):
        d = build_drawing(make(), style)
        svg = render_svg(d)
        assert svg_crossing_count(svg) == expected == d.num_crossings

    def test_saturated_counts(self, oneplanar7):
        d = build_drawing(oneplanar7, "saturated")
        assert svg_crossing_count(render_svg(d)) == 77

    def test_deterministic_bytes(self, quasi2):
        d1 = build_drawing(quasi2, "quasi-planar")
        d2 = build_drawing(quasi2, "quasi-planar")
        assert render_svg(d1) == render_svg(d2)

    def test_vertex_labels_flag(self, quasi2):
        d = build_drawing(quasi2, "min")
        assert "<text" in render_svg(d, vertex_labels=True)
        assert "<text" not in render_svg(d)


class TestFigures:
    def test_png_written(self, tmp_path, quasi2):
        d = build_drawing(quasi2, "min")
        out = tmp_path / "quasi.png"
        render_figure(d, str(out), title="probe")
        assert out.exists() and out.stat().st_size > 1000
