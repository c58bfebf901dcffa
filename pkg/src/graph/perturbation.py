#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
随机扰动的分阶段采样

随机图 R 被拆成若干个独立的阶段 R_1..R_4，每个阶段是 G(n, c_i/n)，
阶段之并与 G(n, c/n)（c = Σc_i）的一个子图耦合。
"""

import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from src.graph.graph import Graph, generate_gnp, union_all
from src.utils.rng import derive_seed

PHASE_COUNT = 4


@dataclass(frozen=True)
class PerturbationPlan:
    """
    扰动计划

    Attributes:
    -----------
    phase_densities : Tuple[float, ...]
        各阶段的边概率 c_i/n，均在 [0, 1] 内
    seed : int
        随机种子
    """
    phase_densities: Tuple[float, ...]
    seed: int = 0
    budgets: Tuple[float, ...] = field(default=(), compare=False)

    def __post_init__(self):
        densities = tuple(float(p) for p in self.phase_densities)
        for p in densities:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"阶段边概率必须在 [0, 1] 内，实际为 {p}")
        object.__setattr__(self, 'phase_densities', densities)

    @classmethod
    def from_budget(cls, c: float, n: int, split: Sequence[float] = (0.25,) * PHASE_COUNT,
                    seed: int = 0) -> 'PerturbationPlan':
        """
        按总预算 c 与拆分比例构造扰动计划

        Parameters:
        -----------
        c : float
            总预算，R ~ G(n, c/n)
        n : int
            顶点数
        split : Sequence[float], optional
            各阶段占 c 的比例，默认四等分
        seed : int, optional
            随机种子

        Returns:
        --------
        PerturbationPlan
            扰动计划

        Raises:
        -------
        ValueError
            比例非法或某阶段概率超过 1
        """
        if c < 0:
            raise ValueError(f"扰动预算不能为负: {c}")
        if len(split) != PHASE_COUNT or any(s < 0 for s in split):
            raise ValueError(f"阶段拆分必须是 {PHASE_COUNT} 个非负比例")
        total = sum(split)
        if not math.isclose(total, 1.0, rel_tol=1e-9) and total > 0:
            split = [s / total for s in split]
        budgets = tuple(c * s for s in split)
        densities = tuple((b / n) if n > 0 else 0.0 for b in budgets)
        return cls(densities, seed, budgets)

    @staticmethod
    def max_budget(n: int, split: Sequence[float] = (0.25,) * PHASE_COUNT) -> float:
        """
        各阶段概率都不超过 1 时允许的最大总预算 n / max(s_i)

        Raises:
        -------
        ValueError
            比例全为零或含负数
        """
        total = sum(split)
        if total <= 0 or any(s < 0 for s in split):
            raise ValueError(f"阶段拆分必须是非负且不全为零的比例: {list(split)}")
        return n * total / max(split)

    @property
    def phase_count(self) -> int:
        return len(self.phase_densities)

    def union_probability(self) -> float:
        """固定顶点对出现在阶段之并中的概率 1 − Π(1 − p_i)"""
        q = 1.0
        for p in self.phase_densities:
            q *= 1.0 - p
        return 1.0 - q

    def sample_phase(self, n: int, index: int) -> Graph:
        """采样第 index 个阶段（从 0 开始）"""
        return generate_gnp(n, self.phase_densities[index], derive_seed(self.seed, 'phase', index))

    def sample_phases(self, n: int) -> List[Graph]:
        """
        采样全部阶段

        Parameters:
        -----------
        n : int
            顶点数

        Returns:
        --------
        List[Graph]
            [R_1, ..., R_k]
        """
        return [self.sample_phase(n, i) for i in range(self.phase_count)]

    def sample_union(self, n: int) -> Graph:
        """采样并返回所有阶段之并"""
        return union_all(self.sample_phases(n))

    def to_dict(self) -> dict:
        return {
            'phase_densities': list(self.phase_densities),
            'budgets': list(self.budgets),
            'seed': self.seed,
        }
