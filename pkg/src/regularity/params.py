#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
正则性参数与参数运算

所有函数都是纯函数，严格按公式计算，不做任何取整。
"""

from dataclasses import asdict, dataclass
from typing import Dict, Tuple

from src.utils.exceptions import ConfigError


@dataclass(frozen=True)
class RegularityParams:
    """
    (ε, δ) 参数与抽样认证预算

    Attributes:
    -----------
    epsilon : float
        子集相对大小阈值，0 < ε < 1
    delta : float
        密度下界，0 < δ < 1
    witness_budget : int
        抽样认证时抽取的子集对数量
    """
    epsilon: float
    delta: float
    witness_budget: int = 2000

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ConfigError(f"epsilon 必须在 (0, 1) 内，实际为 {self.epsilon}")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError(f"delta 必须在 (0, 1) 内，实际为 {self.delta}")
        if self.witness_budget < 1:
            raise ConfigError(f"witness_budget 必须为正，实际为 {self.witness_budget}")

    def with_values(self, epsilon: float, delta: float) -> 'RegularityParams':
        """保留预算，替换 (ε, δ)"""
        return RegularityParams(epsilon, delta, self.witness_budget)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def combine_delta(delta: float, r: int) -> float:
    """
    合并 r 个簇后的密度下界 δ/r

    Raises:
    -------
    ValueError
        r < 1 或 delta 非正
    """
    if r < 1 or delta <= 0:
        raise ValueError(f"combine_delta 参数非法: delta={delta}, r={r}")
    return delta / r


def robust_eps(eps: float, f: float) -> float:
    """
    向簇中加入至多 f·ε 比例的顶点后的 ε 上界 max{2f, 1+f}·ε

    Raises:
    -------
    ValueError
        参数为负或 eps 非正
    """
    if eps <= 0 or f < 0:
        raise ValueError(f"robust_eps 参数非法: eps={eps}, f={f}")
    return max(2 * f, 1 + f) * eps


def robust_delta(delta: float, f: float, eps: float) -> float:
    """加入顶点后的密度下界 min{1/4, 1/(1+fε)}·δ"""
    if delta <= 0 or eps <= 0 or f < 0:
        raise ValueError(f"robust_delta 参数非法: delta={delta}, f={f}, eps={eps}")
    return min(0.25, 1.0 / (1.0 + f * eps)) * delta


def superregular_core(eps: float, delta: float) -> Tuple[float, float]:
    """
    稠密对删去低度顶点后的超正则子对参数 (ε/(1−ε), δ−ε)
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps 必须在 (0, 1) 内，实际为 {eps}")
    return eps / (1 - eps), delta - eps


def large_subset_eps(eps: float, gamma: float) -> float:
    """相对大小至少 γ 的子集继承的 ε/γ"""
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma 必须在 (0, 1] 内，实际为 {gamma}")
    return eps / gamma


@dataclass(frozen=True)
class StageConstants:
    """
    情形二各阶段依次放宽的 (ε, δ)

    下标 1 为划分认证的参数，2 为森林嵌入后，3 为端点修正后，
    4 为簇大小调整后。
    """
    eps1: float
    delta1: float
    eps2: float
    delta2: float
    eps3: float
    delta3: float
    eps4: float
    delta4: float
    rho: float
    k: int

    @classmethod
    def chain(cls, eps: float, delta: float, rho: float, k: int) -> 'StageConstants':
        """
        由划分参数推出整条常数链

        森林嵌入后剩余的 W 约为各簇的一半，ε₂ 取 ε/(1/2)。

        Parameters:
        -----------
        eps, delta : float
            划分认证的 (ε₁, δ₁)
        rho : float
            簇大小比上界
        k : int
            端点修正后的特殊路径长度

        Returns:
        --------
        StageConstants
            ε₁..ε₄, δ₁..δ₄
        """
        eps2 = large_subset_eps(eps, 0.5)
        delta2 = delta / 2
        eps3 = rho * (k - 1) * eps2 / (1 - delta2 / 2)
        delta3 = delta2 / 2
        eps4 = 3 * rho * rho * eps3
        delta4 = delta3 / 4
        return cls(eps, delta, eps2, delta2, eps3, delta3, eps4, delta4, rho, k)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)
