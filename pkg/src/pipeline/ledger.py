#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
簇大小调整的账本

对每个簇对 i：
    m_i   = min{|Z_i|, 2|W_(i,1)|/(k−1), 2|W_(i,2)|/(k−1)}
    L_i^Z = ⌊m_i/2⌋
    L_i^W = ((k−1)/2)·L_i^Z
调整阶段删去 |Z_i| − L_i^Z 个特殊对（各配一条完整的特殊路径），
使每个簇恰好剩下 L_i^W 个空闲顶点。
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

from src.regularity import ClusterId
from src.pipeline.types import Template
from src.utils.constants import Stage
from src.utils.exceptions import LedgerError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairBudget:
    """单个簇对的调整目标"""
    index: int
    z: int
    w1: int
    w2: int
    m: Fraction
    lz: int
    lw: int

    @property
    def remove_z(self) -> int:
        return self.z - self.lz

    def to_dict(self) -> Dict[str, Any]:
        return {'index': self.index, 'z': self.z, 'w1': self.w1, 'w2': self.w2,
                'm': float(self.m), 'lz': self.lz, 'lw': self.lw, 'remove_z': self.remove_z}


@dataclass
class AdjustmentLedger:
    """
    调整账本

    Attributes:
    -----------
    k : int
        当前特殊路径长度（奇数）
    budgets : Dict[int, PairBudget]
        簇对编号 → 调整目标
    w_sizes : Dict[ClusterId, int]
        调整前各簇的空闲顶点数
    gamma : float, optional
        每个簇至少保留 γ 的比例
    cluster_sizes : Dict[ClusterId, int], optional
        各簇的完整大小（γ 检查的分母）
    """
    k: int
    budgets: Dict[int, PairBudget]
    w_sizes: Dict[ClusterId, int]
    gamma: Optional[float] = None
    cluster_sizes: Dict[ClusterId, int] = field(default_factory=dict)

    @classmethod
    def compute(cls, z_sizes: Mapping[int, int], w_sizes: Mapping[ClusterId, int], k: int,
                halve: bool = True, rho: Optional[float] = None,
                cluster_sizes: Optional[Mapping[ClusterId, int]] = None) -> 'AdjustmentLedger':
        """
        由原始簇大小计算账本

        Parameters:
        -----------
        z_sizes : Mapping[int, int]
            簇对 i → |Z_i|
        w_sizes : Mapping[ClusterId, int]
            簇 (i,h) → |W_(i,h)|
        k : int
            特殊路径长度，必须为奇数且 ≥ 3
        halve : bool, optional
            为真时 L^Z = ⌊m/2⌋；为假时 L^Z = ⌊m⌋（已平衡的簇不做调整）
        rho : float, optional
            簇大小比，给出 γ = ρ⁻²/3
        cluster_sizes : Mapping[ClusterId, int], optional
            各簇完整大小，缺省时用 w_sizes

        Returns:
        --------
        AdjustmentLedger
            账本

        Raises:
        -------
        ValueError
            k 不是 ≥ 3 的奇数
        """
        if k < 3 or k % 2 == 0:
            raise ValueError(f"k 必须是 ≥ 3 的奇数，实际为 {k}")
        budgets = {}
        indices = sorted(set(z_sizes) | {cid[0] for cid in w_sizes})
        for i in indices:
            z = int(z_sizes.get(i, 0))
            w1, w2 = int(w_sizes.get((i, 1), 0)), int(w_sizes.get((i, 2), 0))
            m = min(Fraction(z), Fraction(2 * w1, k - 1), Fraction(2 * w2, k - 1))
            lz = math.floor(m / 2) if halve else math.floor(m)
            lw = (k - 1) // 2 * lz
            budgets[i] = PairBudget(i, z, w1, w2, m, lz, lw)
        gamma = (rho ** -2) / 3 if rho else None
        sizes = dict(cluster_sizes) if cluster_sizes else dict(w_sizes)
        return cls(k, budgets, dict(w_sizes), gamma, sizes)

    def remove_z(self, i: int) -> int:
        return self.budgets[i].remove_z

    def need_w(self, cid: ClusterId) -> int:
        """簇 cid 需要被删去路径消耗的空闲顶点数"""
        return self.w_sizes.get(cid, 0) - self.budgets[cid[0]].lw

    def middle_quota(self, cid: ClusterId) -> int:
        """除去首末两个位置后，簇 cid 还需提供的中间位置数"""
        return self.need_w(cid) - self.remove_z(cid[0])

    @property
    def total_removed(self) -> int:
        return sum(b.remove_z for b in self.budgets.values())

    def check_feasible(self) -> bool:
        """
        Raises:
        -------
        LedgerError
            某簇需要消耗的顶点少于被删特殊对的个数，或中间位置总数不符
        """
        for i, budget in self.budgets.items():
            for h in (1, 2):
                need = self.need_w((i, h))
                if need < budget.remove_z:
                    raise LedgerError(Stage.ADJUST_CLUSTERS,
                                      f"簇 {(i, h)} 只需消耗 {need} 个顶点，少于删除的 {budget.remove_z} 个特殊对",
                                      {'cluster': [i, h], 'need_w': need, 'remove_z': budget.remove_z})
        middles = sum(self.middle_quota(cid) for cid in self.w_sizes)
        expected = (self.k - 3) * self.total_removed
        if middles != expected:
            raise LedgerError(Stage.ADJUST_CLUSTERS, f"中间位置总数 {middles} 不等于 {expected}",
                              {'middles': middles, 'expected': expected})
        return True

    def gamma_violations(self) -> List[Dict[str, Any]]:
        """消耗超过 (1−γ)|簇| 的簇"""
        if self.gamma is None:
            return []
        violations = []
        for cid in sorted(self.w_sizes):
            size = self.cluster_sizes.get(cid, self.w_sizes[cid])
            used = self.need_w(cid)
            if used > (1 - self.gamma) * size:
                violations.append({'cluster': list(cid), 'consumed': used, 'size': size})
        return violations

    def sequences(self) -> List[Template]:
        """
        为每个被删的特殊对构造一个好的簇序列

        第一个内部位置取 W_(i,2)，最后一个取 W_(i,1)；中间位置依次取剩余
        配额最大的簇（相同时取编号最小的）。

        Returns:
        --------
        List[Template]
            按簇对编号排列的模板（可重复）
        """
        residual = {cid: self.middle_quota(cid) for cid in sorted(self.w_sizes)}
        result = []
        for i in sorted(self.budgets):
            for _ in range(self.budgets[i].remove_z):
                middles = []
                for _ in range(self.k - 3):
                    cid = max(sorted(residual), key=lambda c: residual[c])
                    residual[cid] -= 1
                    middles.append(cid)
                seq = ((i, 1), (i, 2)) + tuple(middles) + ((i, 1), (i, 2))
                result.append(Template(i, seq))
        leftover = {cid: r for cid, r in residual.items() if r}
        if leftover:
            raise LedgerError(Stage.ADJUST_CLUSTERS, f"中间位置配额未用完: {leftover}",
                              {'leftover': {str(c): r for c, r in leftover.items()}})
        return result

    def templates(self) -> Counter:
        """模板 → 需要的路径条数 N_τ"""
        return Counter(self.sequences())

    def consumption(self) -> Dict[ClusterId, int]:
        """各簇被模板消耗的顶点数 t_C"""
        counts = Counter()
        for template in self.sequences():
            counts.update(template.slots)
        return {cid: counts.get(cid, 0) for cid in sorted(self.w_sizes)}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'gamma': self.gamma,
            'pairs': [b.to_dict() for b in self.budgets.values()],
            'removed': self.total_removed,
            'gamma_violations': self.gamma_violations(),
        }
