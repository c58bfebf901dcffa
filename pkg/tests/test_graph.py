#!/usr/bin/env python
# -*- coding: utf-8 -*-

import math

import numpy as np
import pytest

from src.graph import (
    Graph, HostSpec, PerturbationPlan, complete_bipartite, complete_graph, density, empty_graph,
    generate_dense_host, generate_gnp, graph_union, min_degree, parse_host_spec, random_permutation,
    read_edge_list, relabel, union_all, write_edge_list,
)
from src.utils.constants import HostKind
from src.utils.exceptions import ConfigError, DataLoadError, GraphError, PreconditionError


class TestGenerateGnp:
    def test_zero_probability_gives_empty_graph(self):
        g = generate_gnp(4, 0.0, seed=7)
        assert g.num_edges() == 0
        assert g == empty_graph(4)

    def test_full_probability_gives_complete_graph(self):
        assert generate_gnp(4, 1.0, seed=7) == complete_graph(4)

    def test_edge_count_within_four_sigma(self):
        n, p = 1000, 0.5
        pairs = n * (n - 1) // 2
        g = generate_gnp(n, p, seed=2024)
        sigma = math.sqrt(pairs * p * (1 - p))
        assert abs(g.num_edges() - pairs * p) <= 4 * sigma

    def test_deterministic_per_seed(self):
        assert generate_gnp(60, 0.3, seed=11).edge_set == generate_gnp(60, 0.3, seed=11).edge_set
        assert generate_gnp(60, 0.3, seed=11) != generate_gnp(60, 0.3, seed=12)

    def test_invalid_probability(self):
        with pytest.raises(ValueError):
            generate_gnp(5, 1.5, seed=0)


class TestGraphUnion:
    def test_union_with_empty(self, k4):
        assert graph_union(empty_graph(4), k4) == k4

    def test_idempotent(self, k4):
        union = graph_union(k4, k4)
        assert union == k4
        assert union.num_edges() == 6

    def test_path_plus_edge_is_triangle(self, path3):
        triangle = graph_union(path3, Graph(3, [(0, 2)]))
        assert triangle == complete_graph(3)

    def test_vertex_count_mismatch(self, k4):
        with pytest.raises(GraphError):
            graph_union(k4, complete_graph(5))

    def test_union_all_matches_pairwise(self):
        parts = [generate_gnp(30, 0.1, seed=s) for s in range(3)]
        assert union_all(parts) == graph_union(graph_union(parts[0], parts[1]), parts[2])


class TestMinDegreeAndDensity:
    def test_min_degree_examples(self, k4, path3, k24):
        assert min_degree(k4) == 3
        assert min_degree(path3) == 1
        assert min_degree(k24) == 2

    def test_min_degree_of_empty_vertex_set(self):
        with pytest.raises(GraphError):
            min_degree(Graph(0))

    def test_density_complete_and_empty(self):
        kb = complete_bipartite(3, 3)
        assert density(kb, {0, 1, 2}, {3, 4, 5}) == 1.0
        assert density(empty_graph(6), {0, 1, 2}, {3, 4, 5}) == 0.0

    def test_density_hand_count(self):
        g = Graph(4, [(0, 2), (1, 3), (1, 2)])
        assert density(g, {0, 1}, {2, 3}) == pytest.approx(0.75)

    def test_density_rejects_overlap(self, k4):
        with pytest.raises(GraphError):
            density(k4, {0, 1}, {1, 2})
        with pytest.raises(GraphError):
            density(k4, set(), {1, 2})


class TestGraphStructure:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])

    def test_relabel_preserves_degree_multiset(self):
        g = generate_gnp(40, 0.2, seed=3)
        perm = random_permutation(40, seed=9)
        h = relabel(g, perm)
        assert h.num_edges() == g.num_edges()
        assert sorted(h.degree_sequence()) == sorted(g.degree_sequence())
        for u, v in g.edges():
            assert h.has_edge(int(perm[u]), int(perm[v]))

    def test_relabel_rejects_non_permutation(self, k4):
        with pytest.raises(GraphError):
            relabel(k4, [0, 0, 1, 2])

    def test_fingerprint_distinguishes_graphs(self, k4, c4):
        assert k4.fingerprint() == complete_graph(4).fingerprint()
        assert k4.fingerprint() != c4.fingerprint()

    def test_edge_list_file(self, tmp_path):
        g = generate_gnp(25, 0.3, seed=5)
        path = write_edge_list(g, str(tmp_path / "g.txt"))
        assert read_edge_list(path) == g

    def test_edge_list_bad_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("3\n0 1\n", encoding='utf-8')
        with pytest.raises(DataLoadError):
            read_edge_list(str(path))


class TestHosts:
    @pytest.mark.parametrize("text,kind", [
        ("gnp:0.5", HostKind.GNP),
        ("bipartite:1:2", HostKind.BIPARTITE),
        ("complete", HostKind.COMPLETE),
        ("file:hosts/g.txt", HostKind.FILE),
    ])
    def test_parse_host_spec(self, text, kind):
        spec = parse_host_spec(text)
        assert spec.kind == kind
        assert str(spec) == text

    @pytest.mark.parametrize("text", ["gnp:2", "bipartite:1", "bipartite:0:2", "torus", "file:"])
    def test_parse_host_spec_rejects(self, text):
        with pytest.raises(ConfigError):
            parse_host_spec(text)

    def test_dense_gnp_host_meets_min_degree(self):
        host = generate_dense_host(HostSpec(HostKind.GNP, p=0.5), 200, 0.35, seed=1)
        assert min_degree(host) >= 0.35 * 200

    def test_bipartite_host_sides(self):
        host = generate_dense_host(parse_host_spec("bipartite:1:2"), 12, 0.3, seed=0)
        assert host == complete_bipartite(4, 8)

    def test_bipartite_host_below_alpha(self):
        with pytest.raises(PreconditionError):
            generate_dense_host(parse_host_spec("bipartite:1:2"), 12, 0.5, seed=0)

    def test_sparse_gnp_host_gives_up(self):
        with pytest.raises(PreconditionError):
            generate_dense_host(HostSpec(HostKind.GNP, p=0.1), 100, 0.5, seed=0, max_attempts=3)


class TestPerturbationPlan:
    def test_budget_split(self):
        plan = PerturbationPlan.from_budget(40.0, 100, seed=3)
        assert plan.budgets == (10.0, 10.0, 10.0, 10.0)
        assert plan.phase_densities == (0.1, 0.1, 0.1, 0.1)

    def test_zero_budget_has_no_edges(self):
        phases = PerturbationPlan.from_budget(0.0, 30, seed=3).sample_phases(30)
        assert len(phases) == 4
        assert all(p.num_edges() == 0 for p in phases)

    def test_phases_deterministic_and_independent(self):
        plan = PerturbationPlan.from_budget(80.0, 50, seed=5)
        first, again = plan.sample_phases(50), plan.sample_phases(50)
        assert first == again
        assert first[0] != first[1]

    def test_union_probability(self):
        plan = PerturbationPlan((0.1, 0.2))
        assert plan.union_probability() == pytest.approx(1 - 0.9 * 0.8)

    def test_rejects_negative_budget(self):
        with pytest.raises(ValueError):
            PerturbationPlan.from_budget(-1.0, 10)

    def test_rejects_density_above_one(self):
        with pytest.raises(ValueError):
            PerturbationPlan.from_budget(100.0, 10)

    def test_max_budget(self):
        assert PerturbationPlan.max_budget(300) == pytest.approx(1200.0)
        assert PerturbationPlan.max_budget(100, (0.7, 0.1, 0.1, 0.1)) == pytest.approx(100 / 0.7)
        PerturbationPlan.from_budget(PerturbationPlan.max_budget(40), 40)
        with pytest.raises(ValueError):
            PerturbationPlan.max_budget(10, (0.0, 0.0, 0.0, 0.0))


def test_adjacency_is_read_only(k4):
    with pytest.raises(ValueError):
        k4.adjacency[0, 1] = False
    assert isinstance(k4.adjacency, np.ndarray)
