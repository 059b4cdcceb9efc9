"""Shared fixtures and small graph builders used across the suite."""

from __future__ import annotations

import random

import pytest

from crossratio.graphs import Graph
from crossratio.planarity import graph_is_planar, planar_embedding


def complete_graph(n: int) -> Graph:
    return Graph(
        [str(i) for i in range(n)],
        [(f"e{i}-{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)],
    )


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(
        [f"a{i}" for i in range(a)] + [f"b{j}" for j in range(b)],
        [(f"e{i}.{j}", f"a{i}", f"b{j}") for i in range(a) for j in range(b)],
    )


def petersen_graph() -> Graph:
    edges = [
        ("o0", "v0", "v1"), ("o1", "v1", "v2"), ("o2", "v2", "v3"),
        ("o3", "v3", "v4"), ("o4", "v4", "v0"),
        ("i0", "w0", "w2"), ("i1", "w2", "w4"), ("i2", "w4", "w1"),
        ("i3", "w1", "w3"), ("i4", "w3", "w0"),
        ("s0", "v0", "w0"), ("s1", "v1", "w1"), ("s2", "v2", "w2"),
        ("s3", "v3", "w3"), ("s4", "v4", "w4"),
    ]
    return Graph([f"v{i}" for i in range(5)] + [f"w{i}" for i in range(5)], edges)


def k4_planar_embedding():
    from crossratio.graphs import EmbeddedGraph

    g = complete_graph(4)
    rot = {
        "0": [("e0-1", 0), ("e0-2", 0), ("e0-3", 0)],
        "1": [("e0-1", 1), ("e1-3", 0), ("e1-2", 0)],
        "2": [("e0-2", 1), ("e1-2", 1), ("e2-3", 0)],
        "3": [("e0-3", 1), ("e2-3", 1), ("e1-3", 1)],
    }
    return EmbeddedGraph(g, rot)


def random_planar_graph(rng: random.Random, max_n: int = 12, extra: int = 10) -> Graph:
    """Random connected planar graph: a random tree plus planar chords."""
    n = rng.randint(3, max_n)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    candidates = [
        (i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges
    ]
    rng.shuffle(candidates)
    added = 0
    for (i, j) in candidates:
        if added >= extra:
            break
        trial = Graph(
            [str(x) for x in range(n)],
            [(f"t{k}", str(a), str(b)) for k, (a, b) in enumerate(edges + [(i, j)])],
        )
        if graph_is_planar(trial):
            edges.append((i, j))
            added += 1
    return Graph(
        [str(x) for x in range(n)],
        [(f"t{k}", str(a), str(b)) for k, (a, b) in enumerate(edges)],
    )


def random_planar_embedded(rng: random.Random, max_n: int = 12, extra: int = 10):
    return planar_embedding(random_planar_graph(rng, max_n, extra))


@pytest.fixture(scope="session")
def oneplanar7():
    from crossratio.families import gen_oneplanar

    return gen_oneplanar(7)


@pytest.fixture(scope="session")
def quasi2():
    from crossratio.families import gen_quasi

    return gen_quasi(2)


@pytest.fixture(scope="session")
def fan2():
    from crossratio.families import gen_fan

    return gen_fan(2)
