"""Planarity: the hand-rolled left-right test against networkx, and the
embedding extraction path."""

from __future__ import annotations

import random

import networkx as nx
import pytest

from crossratio.graphs import Graph, trace_faces
from crossratio.planarity import (
    adjacency_of,
    graph_is_planar,
    is_planar,
    lr_planar,
    planar_embedding,
)

from conftest import complete_bipartite, complete_graph, petersen_graph


class TestKnownGraphs:
    def test_k4_planar(self):
        ok, emb = is_planar(complete_graph(4))
        assert ok and trace_faces(emb).euler_ok

    def test_k5_k33_nonplanar(self):
        assert not graph_is_planar(complete_graph(5))
        assert not graph_is_planar(complete_bipartite(3, 3))

    def test_petersen_nonplanar(self):
        assert not graph_is_planar(petersen_graph())

    def test_oneplanar_minus_special_planar(self, oneplanar7):
        g = oneplanar7.graph.without_edges([oneplanar7.special_edge])
        ok, emb = is_planar(g)
        assert ok and trace_faces(emb).euler_ok

    def test_empty_and_tiny(self):
        assert graph_is_planar(Graph([], []))
        assert graph_is_planar(Graph(["a"], []))
        assert graph_is_planar(Graph(["a", "b"], [("e", "a", "b")]))


class TestAgainstNetworkx:
    @pytest.mark.parametrize("seed", range(40))
    def test_random_batch(self, seed):
        rng = random.Random(seed * 9176 + 11)
        for _ in range(60):
            n = rng.randint(1, 13)
            m = rng.randint(0, min(n * (n - 1) // 2 + 4, 24))
            edges = []
            for _ in range(m):
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    edges.append((min(u, v), max(u, v)))
            adj = [[] for _ in range(n)]
            for k, (u, v) in enumerate(edges):
                adj[u].append((v, k))
                adj[v].append((u, k))
            mine = lr_planar(n, adj, len(edges))
            G = nx.Graph()
            G.add_nodes_from(range(n))
            G.add_edges_from(edges)
            assert mine == nx.check_planarity(G)[0]

    def test_multigraph_parallel_edges(self):
        g = Graph(["a", "b", "c"], [("e1", "a", "b"), ("e2", "a", "b"),
                                    ("e3", "b", "c"), ("e4", "a", "c")])
        assert graph_is_planar(g)
        emb = planar_embedding(g)
        assert trace_faces(emb).euler_ok
        assert emb.graph.num_edges == 4


class TestEmbeddingExtraction:
    @pytest.mark.parametrize("seed", range(12))
    def test_random_planar_embeddings_spherical(self, seed):
        from conftest import random_planar_graph

        rng = random.Random(seed)
        g = random_planar_graph(rng, max_n=14, extra=12)
        emb = planar_embedding(g)
        assert trace_faces(emb).euler_ok
        assert emb.graph.num_edges == g.num_edges

    def test_adjacency_of_round_trip(self):
        g = complete_graph(4)
        adj, vlist, elist = adjacency_of(g)
        assert len(vlist) == 4 and len(elist) == 6
        assert sum(len(a) for a in adj) == 12
