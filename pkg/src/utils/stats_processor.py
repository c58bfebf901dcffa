#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
统计工具类
提供实验结果汇总所需的区间估计、超几何分布带宽和单调性检查
"""

import math
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pandas as pd

from src.utils.constants import ColumnName

# 95% 双侧正态分位数
Z_95 = 1.959963984540054


class StatsProcessor:
    """
    统计工具类

    提供通用的统计方法，包括：
    1. Wilson 置信区间
    2. 超几何分布的均值与标准差
    3. 成功率单调性检查
    4. 试验明细到单元汇总表的聚合
    """

    def __init__(self):
        """初始化统计工具"""
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def wilson_interval(successes: int, trials: int, z: float = Z_95) -> Tuple[float, float]:
        """
        计算成功率的 Wilson 置信区间

        Parameters:
        -----------
        successes : int
            成功次数
        trials : int
            试验次数
        z : float, optional
            正态分位数，默认 95% 区间

        Returns:
        --------
        Tuple[float, float]
            (下界, 上界)；trials 为 0 时返回 (0.0, 1.0)
        """
        if trials < 0 or successes < 0 or successes > trials:
            raise ValueError(f"非法的计数: successes={successes}, trials={trials}")
        if trials == 0:
            return 0.0, 1.0

        p_hat = successes / trials
        z2 = z * z
        denom = 1.0 + z2 / trials
        centre = (p_hat + z2 / (2 * trials)) / denom
        half = z * math.sqrt(p_hat * (1 - p_hat) / trials + z2 / (4 * trials * trials)) / denom
        return max(0.0, centre - half), min(1.0, centre + half)

    @staticmethod
    def hypergeometric_moments(population: int, marked: int, draws: int) -> Tuple[float, float]:
        """
        超几何分布的均值与标准差

        从 population 个元素中不放回抽取 draws 个，其中 marked 个被标记，
        返回抽中标记元素个数的均值和标准差。

        Parameters:
        -----------
        population : int
            总体大小
        marked : int
            标记元素个数
        draws : int
            抽取个数

        Returns:
        --------
        Tuple[float, float]
            (均值, 标准差)
        """
        if population <= 0:
            return 0.0, 0.0
        frac = marked / population
        mean = draws * frac
        if population == 1:
            return mean, 0.0
        var = draws * frac * (1 - frac) * (population - draws) / (population - 1)
        return mean, math.sqrt(max(var, 0.0))

    @staticmethod
    def within_band(value: float, mean: float, std: float, width: float = 5.0) -> bool:
        """判断 value 是否落在 mean ± width·std 内（std 为 0 时允许 0.5 的取整误差）"""
        return abs(value - mean) <= max(width * std, 0.5)

    @staticmethod
    def count_inversions(rates: Sequence[float], trials: Sequence[int]) -> Dict[str, int]:
        """
        检查成功率关于 c 的单调性

        相邻两点成功率下降记为一次逆序；若两点的 Wilson 区间重叠，
        该逆序可由二项噪声解释。

        Parameters:
        -----------
        rates : Sequence[float]
            按 c 升序排列的成功率
        trials : Sequence[int]
            对应的试验次数

        Returns:
        --------
        Dict[str, int]
            {'inversions': 逆序总数, 'unexplained': 不能由噪声解释的逆序数}
        """
        inversions = 0
        unexplained = 0
        for j in range(len(rates) - 1):
            if rates[j + 1] < rates[j]:
                inversions += 1
                lo_a, hi_a = StatsProcessor.wilson_interval(
                    int(round(rates[j] * trials[j])), trials[j])
                lo_b, hi_b = StatsProcessor.wilson_interval(
                    int(round(rates[j + 1] * trials[j + 1])), trials[j + 1])
                if hi_b < lo_a:
                    unexplained += 1
        return {'inversions': inversions, 'unexplained': unexplained}

    @staticmethod
    def summarize_trials(trials_df: pd.DataFrame, record_timing: bool = True) -> pd.DataFrame:
        """
        把试验明细聚合为每个单元一行的汇总表

        Parameters:
        -----------
        trials_df : pd.DataFrame
            每行一个试验，至少包含 n, alpha, delta_max, tree_shape, k, c,
            success, wall_ms 列
        record_timing : bool, optional
            是否输出平均耗时；为 False 时 mean_ms 列留空，保证逐字节复现

        Returns:
        --------
        pd.DataFrame
            列顺序固定为 ColumnName.CELL_COLUMNS
        """
        columns = ColumnName.CELL_COLUMNS
        if trials_df.empty:
            return pd.DataFrame(columns=columns)

        keys = [ColumnName.N, ColumnName.ALPHA, ColumnName.DELTA_MAX,
                ColumnName.TREE_SHAPE, ColumnName.K, ColumnName.C]
        grouped = trials_df.groupby(keys, sort=True).agg(
            trials=('success', 'size'),
            successes=('success', 'sum'),
            mean_ms=('wall_ms', 'mean'),
        ).reset_index()

        grouped[ColumnName.SUCCESSES] = grouped[ColumnName.SUCCESSES].astype(int)
        grouped[ColumnName.RATE] = grouped[ColumnName.SUCCESSES] / grouped[ColumnName.TRIALS]
        bounds = [StatsProcessor.wilson_interval(int(s), int(t))
                  for s, t in zip(grouped[ColumnName.SUCCESSES], grouped[ColumnName.TRIALS])]
        grouped[ColumnName.WILSON_LO] = [lo for lo, _ in bounds]
        grouped[ColumnName.WILSON_HI] = [hi for _, hi in bounds]

        if record_timing:
            grouped[ColumnName.MEAN_MS] = grouped[ColumnName.MEAN_MS].round(3)
        else:
            grouped[ColumnName.MEAN_MS] = np.nan

        for col in (ColumnName.RATE, ColumnName.WILSON_LO, ColumnName.WILSON_HI):
            grouped[col] = grouped[col].round(6)

        return grouped[columns]

    @staticmethod
    def rates_by_c(cells: pd.DataFrame) -> List[Tuple[float, float, int]]:
        """按 c 升序返回 (c, rate, trials) 列表"""
        if cells.empty:
            return []
        ordered = cells.sort_values(ColumnName.C)
        return [(float(c), float(r), int(t)) for c, r, t in zip(
            ordered[ColumnName.C], ordered[ColumnName.RATE], ordered[ColumnName.TRIALS])]
