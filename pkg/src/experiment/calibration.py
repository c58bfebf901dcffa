#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
c 网格上的阈值标定
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.experiment.experiment_config import ExperimentConfig
from src.utils.config import Config
from src.utils.stats_processor import StatsProcessor

logger = logging.getLogger(__name__)

# probe(n, c) -> (成功次数, 试验次数)
Probe = Callable[[int, float], Tuple[int, int]]


@dataclass
class CalibrationRecord:
    """
    标定结果

    Attributes:
    -----------
    target : float
        目标成功率
    grid : List[float]
        升序 c 网格
    thresholds : Dict[int, Optional[float]]
        n → 达到目标的最小 c；网格耗尽时为 None
    probes : Dict[int, Dict[float, Tuple[int, int]]]
        n → {c: (成功次数, 试验次数)}
    """
    target: float
    grid: List[float]
    thresholds: Dict[int, Optional[float]] = field(default_factory=dict)
    probes: Dict[int, Dict[float, Tuple[int, int]]] = field(default_factory=dict)

    @property
    def exhausted(self) -> List[int]:
        """没有达到目标的 n"""
        return [n for n, c in self.thresholds.items() if c is None]

    def to_dict(self) -> Dict[str, Any]:
        probes = {}
        for n, table in self.probes.items():
            rows = []
            for c, (successes, trials) in sorted(table.items()):
                lo, hi = StatsProcessor.wilson_interval(successes, trials)
                rows.append({'c': c, 'successes': successes, 'trials': trials,
                             'rate': successes / trials if trials else None, 'wilson_lo': lo, 'wilson_hi': hi})
            probes[str(n)] = rows
        return {
            'target': self.target,
            'grid': list(self.grid),
            'thresholds': {str(n): c for n, c in self.thresholds.items()},
            'exhausted': [str(n) for n in self.exhausted],
            'probes': probes,
        }


def _search(grid: List[float], target: float, measure: Callable[[float], float]) -> Optional[float]:
    """假设成功率关于 c 单调不减，二分查找达到 target 的最小网格点"""
    if measure(grid[-1]) < target:
        return None
    lo, hi = 0, len(grid) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if measure(grid[mid]) >= target:
            hi = mid
        else:
            lo = mid + 1
    return grid[lo]


def calibrate(cfg: ExperimentConfig, config: Optional[Config] = None, probe: Optional[Probe] = None,
              show_progress: bool = True) -> CalibrationRecord:
    """
    对每个 n 在 c 网格上二分查找成功率不低于 cfg.target 的最小 c

    每个探测点运行 cfg.trials 次试验，结果按 c 缓存。网格耗尽只记录警告，不抛出异常。

    Parameters:
    -----------
    cfg : ExperimentConfig
        实验参数（使用其中的 n、c、trials、target）
    config : Config, optional
        全局配置
    probe : Callable[[int, float], Tuple[int, int]], optional
        探测函数，默认运行真实试验
    show_progress : bool, optional
        是否显示进度条

    Returns:
    --------
    CalibrationRecord
        各 n 的阈值与全部探测结果
    """
    cfg.validate()
    if probe is None:
        from src.experiment.runner import ExperimentRunner
        probe = ExperimentRunner(cfg, config, show_progress).probe

    record = CalibrationRecord(cfg.target, list(cfg.c))
    for n in cfg.n:
        table: Dict[float, Tuple[int, int]] = {}

        def measure(c: float) -> float:
            if c not in table:
                table[c] = probe(n, c)
                successes, trials = table[c]
                logger.info(f"标定 n = {n}, c = {c}: {successes}/{trials}")
            successes, trials = table[c]
            return successes / trials if trials else 0.0

        threshold = _search(record.grid, cfg.target, measure)
        record.thresholds[n] = threshold
        record.probes[n] = table
        if threshold is None:
            logger.warning(f"n = {n}: c 网格耗尽仍未达到目标成功率 {cfg.target}")
        else:
            logger.info(f"n = {n}: 最小 c = {threshold}")
    return record
