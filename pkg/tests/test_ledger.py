#!/usr/bin/env python
# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest

from src.pipeline import AdjustmentLedger, ClusterState, ConsumptionLedger, SpecialPair, Template, check_balance
from src.utils.exceptions import InvariantError, LedgerError, TemplatePathError


class TestAdjustmentLedger:
    def test_budget_values(self):
        ledger = AdjustmentLedger.compute({0: 10}, {(0, 1): 30, (0, 2): 33}, 7)
        budget = ledger.budgets[0]
        assert budget.m == Fraction(10)
        assert budget.lz == 5
        assert budget.lw == 15
        assert ledger.remove_z(0) == 5

    def test_unbalanced_middles_rejected(self):
        ledger = AdjustmentLedger.compute({0: 10}, {(0, 1): 30, (0, 2): 33}, 7)
        with pytest.raises(LedgerError):
            ledger.check_feasible()

    def test_balanced_pair_templates(self):
        ledger = AdjustmentLedger.compute({0: 10}, {(0, 1): 30, (0, 2): 30}, 7)
        assert ledger.check_feasible()
        templates = ledger.templates()
        assert sum(templates.values()) == 5
        assert len(templates) == 1
        template = next(iter(templates))
        assert template.good
        assert template.validate(7)
        assert template.cluster_sequence == ((0, 1), (0, 2), (0, 1), (0, 2), (0, 1), (0, 2), (0, 1), (0, 2))
        assert ledger.consumption() == {(0, 1): 15, (0, 2): 15}

    def test_no_halving_leaves_balanced_pair_alone(self):
        ledger = AdjustmentLedger.compute({0: 4}, {(0, 1): 12, (0, 2): 12}, 7, halve=False)
        assert ledger.budgets[0].lz == 4
        assert ledger.total_removed == 0
        assert not ledger.templates()

    def test_fractional_minimum(self):
        ledger = AdjustmentLedger.compute({0: 9}, {(0, 1): 13, (0, 2): 20}, 5)
        budget = ledger.budgets[0]
        assert budget.m == Fraction(13, 2)
        assert budget.lz == 3
        assert budget.lw == 6

    def test_middles_spread_over_two_pairs(self):
        # 两个簇对都满足 |W| = (k−1)|Z|/2，中间位置在四个簇之间分配
        w = {(0, 1): 12, (0, 2): 12, (1, 1): 12, (1, 2): 12}
        ledger = AdjustmentLedger.compute({0: 4, 1: 4}, w, 7)
        assert ledger.check_feasible()
        consumption = ledger.consumption()
        for cid, size in w.items():
            assert consumption[cid] == size - ledger.budgets[cid[0]].lw
        for template in ledger.sequences():
            assert template.good
            assert template.k == 7

    def test_gamma_violations(self):
        w = {(0, 1): 30, (0, 2): 30}
        assert AdjustmentLedger.compute({0: 10}, w, 7, rho=1.0).gamma_violations() == []
        tight = AdjustmentLedger.compute({0: 10}, w, 7, rho=1.0, cluster_sizes={(0, 1): 20, (0, 2): 20})
        assert len(tight.gamma_violations()) == 2

    @pytest.mark.parametrize("k", [2, 4, 1])
    def test_k_must_be_odd(self, k):
        with pytest.raises(ValueError):
            AdjustmentLedger.compute({0: 1}, {(0, 1): 1, (0, 2): 1}, k)


class TestTemplate:
    def test_wrong_endpoints(self):
        with pytest.raises(TemplatePathError):
            Template(0, ((0, 2), (0, 1), (0, 1), (0, 1))).validate(3)

    def test_wrong_length(self):
        with pytest.raises(TemplatePathError):
            Template(0, ((0, 1), (0, 2), (0, 1), (0, 2))).validate(5)


class TestBookkeeping:
    def test_check_balance(self):
        membership = {0: (0, 1), 1: (0, 2), 2: (0, 1), 3: (0, 2), 4: (0, 1), 5: (0, 2)}
        pair = SpecialPair(0, (0, 9, 8, 1), (0,), (1,), home=0)
        state = ClusterState(membership, [2, 3])
        assert check_balance([pair], state, 3) == {}
        state.remove([2])
        assert check_balance([pair], state, 3) == {(0, 1): (0, 2)}

    def test_state_rejects_double_removal(self):
        state = ClusterState({0: (0, 1), 1: (0, 2)}, [0, 1])
        state.remove([0])
        with pytest.raises(InvariantError):
            state.remove([0])

    def test_consumption_ledger(self):
        ledger = ConsumptionLedger(4)
        ledger.record('a', [0, 1])
        ledger.record('b', [2])
        with pytest.raises(InvariantError):
            ledger.record('c', [1])
        with pytest.raises(InvariantError):
            ledger.assert_complete()
        ledger.record('c', [3])
        ledger.assert_complete()
        assert ledger.counts() == {'a': 2, 'b': 1, 'c': 1}

    def test_special_pair_geometry(self):
        pair = SpecialPair(0, tuple(range(10)), (5,), (6,))
        assert pair.remaining_length == 9
        moved = pair.bridged((7, 8), (11, 12), home=1)
        assert moved.end_x == 8 and moved.end_y == 12
        assert moved.x == 5 and moved.y == 6
        assert moved.remaining_length == 5
        assert moved.host_path((20, 21, 22, 23)) == (5, 7, 8, 20, 21, 22, 23, 12, 11, 6)
