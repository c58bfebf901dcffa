#!/usr/bin/env python
# -*- coding: utf-8 -*-

import numpy as np
import pytest

from src.embedding import verify_embedding
from src.graph import Graph, complete_bipartite, complete_graph, empty_graph, generate_gnp
from src.matching import (
    StarDemand, beta_bound, check_hall_condition, complete_case1, cross_degree_bound,
    find_star_packing, validate_star_packing,
)
from src.matching.star_packing import StarPacking
from src.tree import Tree, generate_bounded_tree
from src.utils.constants import HallMode, PhaseMode, TreeShape
from src.utils.exceptions import DataValidationError, EmbeddingError, HallViolationError, PreconditionError


def random_instance(seed: int):
    """|A| = 4，ℓ(a) ∈ {1, 2}，B 紧跟在 A 之后"""
    rng = np.random.default_rng(seed)
    demand = {a: int(rng.integers(1, 3)) for a in range(4)}
    b_side = range(4, 4 + sum(demand.values()))
    g = generate_gnp(4 + len(b_side), float(rng.uniform(0.2, 0.7)), seed=seed)
    return g, StarDemand(range(4), b_side, demand)


def violates_hall(g: Graph, d: StarDemand, s) -> bool:
    reach = {int(b) for a in s for b in g.neighbors(a) if int(b) in d.b_side}
    return len(reach) < sum(d.demand[a] for a in s)


class TestStarDemand:
    def test_total_must_match_b(self):
        with pytest.raises(DataValidationError):
            StarDemand({0}, {1, 2, 3}, {0: 2})

    def test_domain_must_be_a(self):
        with pytest.raises(DataValidationError):
            StarDemand({0, 1}, {2, 3}, {0: 2})

    def test_degree_bound(self):
        with pytest.raises(DataValidationError):
            StarDemand({0}, {1, 2, 3}, {0: 3}, delta_max=2)


class TestHallCondition:
    def test_single_centre_missing_a_neighbour(self):
        g = Graph(3, [(0, 1)])
        d = StarDemand({0}, {1, 2}, {0: 2})
        for mode in (HallMode.EXHAUSTIVE, HallMode.MATCHING):
            check = check_hall_condition(g, d, mode)
            assert not check
            assert check.witness == frozenset({0})

    def test_complete_bipartite_holds(self, k24):
        d = StarDemand({0, 1}, {2, 3, 4, 5}, {0: 2, 1: 2})
        assert check_hall_condition(k24, d, HallMode.EXHAUSTIVE)
        assert check_hall_condition(k24, d, HallMode.MATCHING)

    @pytest.mark.parametrize("seed", range(40))
    def test_modes_agree_on_random_instances(self, seed):
        g, d = random_instance(seed)
        exhaustive = check_hall_condition(g, d, HallMode.EXHAUSTIVE)
        matching = check_hall_condition(g, d, HallMode.MATCHING)
        assert exhaustive.holds == matching.holds
        if not matching.holds:
            assert violates_hall(g, d, exhaustive.witness)
            assert violates_hall(g, d, matching.witness)

    def test_exhaustive_size_limit(self):
        d = StarDemand(range(21), range(21, 42), {a: 1 for a in range(21)})
        with pytest.raises(PreconditionError):
            check_hall_condition(empty_graph(42), d, HallMode.EXHAUSTIVE)

    def test_unknown_mode(self, k24):
        d = StarDemand({0, 1}, {2, 3, 4, 5}, {0: 2, 1: 2})
        with pytest.raises(ValueError):
            check_hall_condition(k24, d, "guess")


class TestFindStarPacking:
    def test_packing_on_complete_bipartite(self, k24):
        d = StarDemand({0, 1}, {2, 3, 4, 5}, {0: 2, 1: 2})
        packing = find_star_packing(k24, d)
        assert packing.leaves() == frozenset({2, 3, 4, 5})
        assert validate_star_packing(k24, d, packing) == (True, None)

    def test_violation_carries_witness(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(HallViolationError) as info:
            find_star_packing(g, StarDemand({0}, {1, 2}, {0: 2}))
        assert info.value.witness == frozenset({0})

    @pytest.mark.parametrize("seed", range(20))
    def test_packing_exists_iff_hall_holds(self, seed):
        g, d = random_instance(seed)
        if check_hall_condition(g, d, HallMode.EXHAUSTIVE):
            ok, _ = validate_star_packing(g, d, find_star_packing(g, d))
            assert ok
        else:
            with pytest.raises(HallViolationError):
                find_star_packing(g, d)

    def test_validator_catches_shared_leaf(self, k24):
        d = StarDemand({0, 1}, {2, 3, 4, 5}, {0: 2, 1: 2})
        bad = StarPacking({0: frozenset({2, 3}), 1: frozenset({3, 4})})
        ok, message = validate_star_packing(k24, d, bad)
        assert not ok
        assert "3" in message


def test_cross_degree_bound(k24):
    assert cross_degree_bound(k24, [0, 1], [2, 3, 4, 5]) == 2
    assert cross_degree_bound(k24, [], [2]) == 0


def test_beta_bound():
    assert beta_bound(0.2, 0.4, 4) == pytest.approx(0.01)


class TestCompleteCase1:
    def test_star_on_complete_host(self):
        tree = Tree(20, [-1] + [0] * 19)
        host = complete_graph(20)
        phases = [empty_graph(20)] * 4
        result = complete_case1(tree, host, phases, lam=0.2, seed=1, phase_mode=PhaseMode.UNION)
        assert result.details['removed_leaves'] == 4
        assert result.details['pruned_size'] == 16
        assert verify_embedding(tree, host, result.embedding).valid

    def test_caterpillar_on_dense_host(self):
        tree = generate_bounded_tree(60, 4, TreeShape.CATERPILLAR, seed=3)
        host = complete_graph(60)
        phases = [empty_graph(60)] * 4
        result = complete_case1(tree, host, phases, lam=0.1, seed=4, phase_mode=PhaseMode.UNION)
        assert verify_embedding(tree, host, result.embedding).valid

    def test_needs_enough_leaves(self, path_tree5):
        with pytest.raises(PreconditionError):
            complete_case1(path_tree5, complete_graph(5), [empty_graph(5)] * 4, lam=0.5, seed=0)

    def test_bipartite_host_blocks_packing(self):
        # K_{4,8} 中容纳不下 K_{1,11}
        tree = Tree(12, [-1] + [0] * 11)
        host = complete_bipartite(4, 8)
        with pytest.raises((HallViolationError, EmbeddingError)):
            complete_case1(tree, host, [empty_graph(12)] * 4, lam=0.3, seed=0, phase_mode=PhaseMode.UNION)
