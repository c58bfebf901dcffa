#!/usr/bin/env python
# -*- coding: utf-8 -*-

import pandas as pd
import pytest

from src.utils.constants import ColumnName
from src.utils.stats_processor import StatsProcessor


def trial_rows(c, outcomes, wall=10.0):
    return [{'n': 50, 'alpha': 0.35, 'delta_max': 3, 'tree_shape': 'path', 'k': 9, 'c': c,
             'success': ok, 'wall_ms': wall} for ok in outcomes]


class TestWilsonInterval:
    def test_half_rate(self):
        lo, hi = StatsProcessor.wilson_interval(5, 10)
        assert lo == pytest.approx(0.2366, abs=1e-4)
        assert hi == pytest.approx(0.7634, abs=1e-4)

    def test_all_successes(self):
        lo, hi = StatsProcessor.wilson_interval(10, 10)
        assert lo == pytest.approx(0.7225, abs=1e-4)
        assert hi == 1.0

    def test_no_trials(self):
        assert StatsProcessor.wilson_interval(0, 0) == (0.0, 1.0)

    @pytest.mark.parametrize("successes,trials", [(3, 2), (-1, 4), (0, -1)])
    def test_invalid_counts(self, successes, trials):
        with pytest.raises(ValueError):
            StatsProcessor.wilson_interval(successes, trials)


class TestHypergeometric:
    def test_moments(self):
        mean, std = StatsProcessor.hypergeometric_moments(10, 4, 5)
        assert mean == pytest.approx(2.0)
        assert std == pytest.approx((2 / 3) ** 0.5)

    def test_degenerate_population(self):
        assert StatsProcessor.hypergeometric_moments(0, 0, 0) == (0.0, 0.0)
        assert StatsProcessor.hypergeometric_moments(1, 1, 1) == (1.0, 0.0)

    def test_within_band(self):
        assert StatsProcessor.within_band(2.4, 2.0, 0.0)
        assert not StatsProcessor.within_band(9.0, 2.0, 1.0)


class TestInversions:
    def test_noise_explains_small_drop(self):
        result = StatsProcessor.count_inversions([0.1, 0.9, 0.8], [100, 100, 100])
        assert result == {'inversions': 1, 'unexplained': 0}

    def test_large_drop_is_unexplained(self):
        result = StatsProcessor.count_inversions([1.0, 0.0], [100, 100])
        assert result == {'inversions': 1, 'unexplained': 1}

    def test_monotone(self):
        assert StatsProcessor.count_inversions([0.0, 0.5, 1.0], [4, 4, 4])['inversions'] == 0


class TestSummarizeTrials:
    def test_one_row_per_cell(self):
        df = pd.DataFrame(trial_rows(30.0, [True, False, True, True]) + trial_rows(0.0, [False, False]))
        cells = StatsProcessor.summarize_trials(df)
        assert list(cells.columns) == ColumnName.CELL_COLUMNS
        assert list(cells[ColumnName.C]) == [0.0, 30.0]
        assert list(cells[ColumnName.TRIALS]) == [2, 4]
        assert list(cells[ColumnName.SUCCESSES]) == [0, 3]
        assert cells[ColumnName.RATE].iloc[1] == pytest.approx(0.75)
        assert cells[ColumnName.MEAN_MS].iloc[0] == pytest.approx(10.0)
        lo, hi = StatsProcessor.wilson_interval(3, 4)
        assert cells[ColumnName.WILSON_LO].iloc[1] == pytest.approx(lo, abs=1e-6)
        assert cells[ColumnName.WILSON_HI].iloc[1] == pytest.approx(hi, abs=1e-6)

    def test_without_timing(self):
        cells = StatsProcessor.summarize_trials(pd.DataFrame(trial_rows(0.0, [True])), record_timing=False)
        assert cells[ColumnName.MEAN_MS].isna().all()

    def test_empty(self):
        cells = StatsProcessor.summarize_trials(pd.DataFrame())
        assert cells.empty
        assert list(cells.columns) == ColumnName.CELL_COLUMNS

    def test_rates_by_c(self):
        df = pd.DataFrame(trial_rows(60.0, [True, True]) + trial_rows(30.0, [True, False]))
        rates = StatsProcessor.rates_by_c(StatsProcessor.summarize_trials(df))
        assert rates == [(30.0, 0.5, 2), (60.0, 1.0, 2)]
        assert StatsProcessor.rates_by_c(pd.DataFrame()) == []
