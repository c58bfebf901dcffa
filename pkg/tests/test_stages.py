#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pytest

from src.graph import Graph, complete_graph, empty_graph, generate_gnp
from src.pipeline import (
    ClusterState, SpecialPair, Template, assignment_count, find_template_paths, stage_complete_cycles,
    stage_fix_endpoints,
)
from src.utils.constants import DestinationRule
from src.utils.exceptions import BridgeError, CyclePackingError, InvariantError, TemplatePathError


def multipartite(n, parts, skip=()):
    """parts 之间全部连边，skip 中的部分对除外"""
    owner = {v: j for j, part in enumerate(parts) for v in part}
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            a, b = owner[u], owner[v]
            if a != b and (min(a, b), max(a, b)) not in skip:
                edges.append((u, v))
    return Graph(n, edges)


class TestFixEndpoints:
    @staticmethod
    def setup_state():
        membership = {0: (0, 1), 1: (0, 2), 2: (1, 1), 3: (1, 2)}
        for offset, cid in zip((4, 8, 12, 16), ((0, 1), (0, 2), (1, 1), (1, 2))):
            for v in range(offset, offset + 4):
                membership[v] = cid
        state = ClusterState(membership, range(4, 20))
        pairs = [SpecialPair(0, tuple(range(100, 110)), (0,), (1,)),
                 SpecialPair(1, tuple(range(110, 120)), (2,), (3,))]
        return pairs, state

    @pytest.mark.parametrize("rule", [DestinationRule.BALANCED, DestinationRule.ROUND_ROBIN])
    def test_bridges_on_complete_graph(self, rule):
        pairs, state = self.setup_state()
        g = complete_graph(20)
        result = stage_fix_endpoints(pairs, state, g, g, 9, seed=5, rule=rule)
        assert result.k == 5
        assert len(result.consumed) == 8
        assert state.total_free() == 8
        for pair in result.pairs:
            assert state.membership[pair.end_x] == (pair.home, 1)
            assert state.membership[pair.end_y] == (pair.home, 2)
            assert len(pair.x_trail) == 3 and len(pair.y_trail) == 3
            assert pair.remaining_length == 5

    def test_balanced_rule_spreads_homes(self):
        pairs, state = self.setup_state()
        g = complete_graph(20)
        result = stage_fix_endpoints(pairs, state, g, g, 9, seed=1)
        assert sorted(p.home for p in result.pairs) == [0, 1]
        assert result.details['capacity_fallbacks'] == 0

    def test_bridge_uses_host_then_random_edges(self):
        pairs, state = self.setup_state()
        g = complete_graph(20)
        result = stage_fix_endpoints(pairs, state, g, g, 9, seed=2)
        for pair in result.pairs:
            for trail in (pair.x_trail, pair.y_trail):
                assert g.has_edge(trail[0], trail[1])
                assert g.has_edge(trail[1], trail[2])

    def test_no_random_edges(self):
        pairs, state = self.setup_state()
        with pytest.raises(BridgeError) as info:
            stage_fix_endpoints(pairs, state, complete_graph(20), empty_graph(20), 9, seed=0)
        assert 'second_halves' in info.value.details

    def test_unknown_rule(self):
        pairs, state = self.setup_state()
        with pytest.raises(ValueError):
            stage_fix_endpoints(pairs, state, complete_graph(20), complete_graph(20), 9, seed=0, rule="nearest")


class TestTemplatePaths:
    @staticmethod
    def setup():
        template = Template(0, ((0, 1), (0, 2), (1, 1), (0, 1), (0, 2)))
        w_sets = {(0, 1): set(range(6, 11)), (0, 2): set(range(11, 16)), (1, 1): set(range(16, 21))}
        candidates = [SpecialPair(i, tuple(range(5)), (2 * i,), (2 * i + 1,), home=0) for i in range(3)]
        return template, w_sets, candidates

    def test_finds_disjoint_paths_through_slots(self):
        template, w_sets, candidates = self.setup()
        g = complete_graph(21)
        result = find_template_paths(template, 3, candidates, w_sets, g, g, xi=0.0, seed=4)
        assert len(result.paths) == 3
        seen = set()
        for pair, interior in result.paths:
            assert len(interior) == 3
            assert interior[0] in w_sets[(0, 2)]
            assert interior[1] in w_sets[(1, 1)]
            assert interior[2] in w_sets[(0, 1)]
            assert not seen & set(interior)
            seen.update(interior)
        assert result.diagnostics['slot_sizes'] == [5, 5, 5]

    def test_stops_at_requested_count(self):
        template, w_sets, candidates = self.setup()
        g = complete_graph(21)
        result = find_template_paths(template, 2, candidates, w_sets, g, g, xi=0.0, seed=4)
        assert len(result.paths) == 2

    def test_missing_random_edges(self):
        template, w_sets, candidates = self.setup()
        with pytest.raises(TemplatePathError) as info:
            find_template_paths(template, 3, candidates, w_sets, complete_graph(21), empty_graph(21),
                                xi=0.0, seed=4)
        assert info.value.details['found'] == 0

    def test_slack_allows_shortfall(self):
        template, w_sets, candidates = self.setup()
        g = complete_graph(21)
        # 只剩两个候选特殊对，ξ = 0.5 时两条已足够
        result = find_template_paths(template, 3, candidates[:2], w_sets, g, g, xi=0.5, seed=4)
        assert len(result.paths) == 2

    def test_random_slots_of_twenty(self):
        # k = 3：20 个特殊对，两个位置各 20 个顶点，G 与 r4 都是 p = 0.5
        template = Template(0, ((0, 1), (0, 2), (0, 1), (0, 2)))
        w_sets = {(0, 2): set(range(40, 60)), (0, 1): set(range(60, 80))}
        candidates = [SpecialPair(i, tuple(range(4)), (i,), (20 + i,), home=0) for i in range(20)]
        enough = 0
        for seed in range(50):
            g = generate_gnp(80, 0.5, seed)
            r4 = generate_gnp(80, 0.5, 1000 + seed)
            try:
                result = find_template_paths(template, 20, candidates, w_sets, g, r4, xi=0.1, seed=seed)
            except TemplatePathError:
                continue
            interiors = [interior for _, interior in result.paths]
            assert len({v for interior in interiors for v in interior}) == 2 * len(interiors)
            for pair, (a, b) in result.paths:
                assert g.has_edge(pair.end_x, a) and r4.has_edge(a, b) and g.has_edge(b, pair.end_y)
            enough += len(result.paths) >= 18
        assert enough >= 45

    def test_well_connected_pairs_go_first(self):
        template, w_sets, candidates = self.setup()
        # 特殊对 0 的 end_x 在第一个位置只有一个邻居，低于 δξn = 2.5
        weak = {(0, v) for v in range(12, 16)}
        g = Graph(21, [(u, v) for u in range(21) for v in range(u + 1, 21) if (u, v) not in weak])
        result = find_template_paths(template, 2, candidates, w_sets, g, g, xi=0.5, seed=4, delta=0.5, n=10)
        assert sorted(pair.index for pair, _ in result.paths) == [1, 2]
        assert result.diagnostics['rounds'] == 1


class TestCompleteCycles:
    @staticmethod
    def setup_state():
        membership = {0: (0, 1), 1: (0, 1), 4: (0, 1), 5: (0, 1),
                      2: (0, 2), 3: (0, 2), 6: (0, 2), 7: (0, 2)}
        state = ClusterState(membership, [4, 5, 6, 7])
        pairs = [SpecialPair(0, (30, 31, 32, 33), (0,), (2,), home=0),
                 SpecialPair(1, (40, 41, 42, 43), (1,), (3,), home=0)]
        return pairs, state

    def test_packs_both_pairs(self):
        pairs, state = self.setup_state()
        g = multipartite(8, [[0, 1, 2, 3], [4, 5], [6, 7]])
        result = stage_complete_cycles(pairs, state, g, 3, seed=0)
        assert set(result.paths) == {0, 1}
        for pair in pairs:
            a, b = result.paths[pair.index]
            assert a in (6, 7) and b in (4, 5)
            assert g.has_edge(pair.end_x, a) and g.has_edge(a, b) and g.has_edge(b, pair.end_y)
        assert result.consumed == {4, 5, 6, 7}
        assert state.total_free() == 0

    def test_missing_middle_edges(self):
        pairs, state = self.setup_state()
        g = multipartite(8, [[0, 1, 2, 3], [4, 5], [6, 7]], skip={(1, 2)})
        with pytest.raises(CyclePackingError):
            stage_complete_cycles(pairs, state, g, 3, seed=0)

    def test_unbalanced_sides(self):
        pairs, state = self.setup_state()
        state.remove([7])
        with pytest.raises(InvariantError):
            stage_complete_cycles(pairs, state, complete_graph(8), 3, seed=0)

    def test_longer_cycles_on_complete_graph(self):
        membership = {0: (0, 1), 1: (0, 2)}
        membership.update({v: (0, 1) for v in range(2, 4)})
        membership.update({v: (0, 2) for v in range(4, 6)})
        state = ClusterState(membership, range(2, 6))
        pair = SpecialPair(0, tuple(range(10, 16)), (0,), (1,), home=0)
        result = stage_complete_cycles([pair], state, complete_graph(6), 5, seed=3)
        interior = result.paths[0]
        assert len(interior) == 4
        assert [state.membership[v] for v in interior] == [(0, 2), (0, 1), (0, 2), (0, 1)]

    def test_search_on_random_host(self):
        # 9 个特殊对，k = 5：两侧各 18 个空闲顶点，G 是 p = 0.5 的随机图
        packed = 0
        for seed in range(20):
            membership = {v: (0, 1) for v in list(range(9)) + list(range(18, 36))}
            membership.update({v: (0, 2) for v in list(range(9, 18)) + list(range(36, 54))})
            state = ClusterState(membership, range(18, 54))
            pairs = [SpecialPair(i, tuple(range(100 + 6 * i, 106 + 6 * i)), (i,), (9 + i,), home=0)
                     for i in range(9)]
            g = generate_gnp(54, 0.5, seed)
            try:
                result = stage_complete_cycles(pairs, state, g, 5, seed=seed)
            except CyclePackingError:
                continue
            packed += 1
            assert result.details['searches']['0']['mode'] == 'search'
            assert result.consumed == set(range(18, 54))
            for pair in pairs:
                walk = [pair.end_x] + list(result.paths[pair.index]) + [pair.end_y]
                assert all(g.has_edge(a, b) for a, b in zip(walk[:-1], walk[1:]))
        assert packed >= 17


@pytest.mark.parametrize("side,groups,size,expected", [(4, 2, 2, 6), (2, 1, 2, 1), (6, 3, 2, 90), (5, 2, 2, 0)])
def test_assignment_count(side, groups, size, expected):
    assert assignment_count(side, groups, size) == expected
