"""Gadget families, drawings and exact certificates for crossing ratios."""

from .drawings import (
    CrossingScheme,
    DrawingBuilder,
    TopologicalDrawing,
    ValidityReport,
    crossing_count,
    planarize,
    realize,
    validate,
)
from .families import (
    build_drawing,
    gen_fan,
    gen_kquasi,
    gen_oneplanar,
    gen_oneplanar_multi,
    gen_quasi,
)
from .graphs import (
    DensityVerdict,
    EmbeddedGraph,
    FaceReport,
    Graph,
    GraphError,
    cartesian_path2_cycle,
    check_density,
    dual,
    extend_edge,
    medial_extension,
    trace_faces,
)
from .oracle import (
    BudgetExceededError,
    Certificate,
    RatioReport,
    certify_lower,
    exact_cr,
    insert_edge_min_crossings,
    ratio_report,
    verify_parallel_lemma,
)
from .patterns import (
    CrossingGraph,
    PatternProfile,
    check_fan_planar,
    check_k_planar,
    check_k_quasi_planar,
    profile,
)
from .planarity import is_planar

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Certificate",
    "CrossingGraph",
    "CrossingScheme",
    "DensityVerdict",
    "DrawingBuilder",
    "EmbeddedGraph",
    "FaceReport",
    "Graph",
    "GraphError",
    "PatternProfile",
    "RatioReport",
    "TopologicalDrawing",
    "ValidityReport",
    "build_drawing",
    "cartesian_path2_cycle",
    "certify_lower",
    "check_density",
    "check_fan_planar",
    "check_k_planar",
    "check_k_quasi_planar",
    "crossing_count",
    "dual",
    "exact_cr",
    "extend_edge",
    "gen_fan",
    "gen_kquasi",
    "gen_oneplanar",
    "gen_oneplanar_multi",
    "gen_quasi",
    "insert_edge_min_crossings",
    "is_planar",
    "medial_extension",
    "planarize",
    "profile",
    "ratio_report",
    "realize",
    "trace_faces",
    "validate",
    "verify_parallel_lemma",
]
