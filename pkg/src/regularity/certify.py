#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
(ε, δ)-稠密与超正则认证

穷举模式是判定过程；抽样模式是单侧检验：FAIL 一定附带可复核的反例，
PASS 只表示在预算内没有找到反例。
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.graph import Graph, as_vertex_set
from src.utils.constants import CertifyMode, ErrorMessage
from src.utils.exceptions import GraphError, PreconditionError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 24


@dataclass(frozen=True)
class Verdict:
    """
    认证结论

    Attributes:
    -----------
    passed : bool
        是否通过
    reason : str
        'ok'、'density'（找到低密度子集对）或 'degree'（存在低度顶点）
    counterexample : Tuple[FrozenSet[int], FrozenSet[int]], optional
        密度反例 (U1, U2)
    violator : int, optional
        度数不足的顶点
    min_density : float
        检查过的子集对中观察到的最小密度
    min_degree_ratio : float, optional
        超正则认证中观察到的最小交叉度比例
    checked : int
        检查过的子集对数量
    """
    passed: bool
    reason: str = 'ok'
    counterexample: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None
    violator: Optional[int] = None
    min_density: float = 1.0
    min_degree_ratio: Optional[float] = None
    checked: int = 0
    mode: str = CertifyMode.SAMPLED
    sizes: Tuple[int, int] = field(default=(0, 0))

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            'passed': self.passed,
            'reason': self.reason,
            'counterexample': ([sorted(self.counterexample[0]), sorted(self.counterexample[1])]
                               if self.counterexample else None),
            'violator': self.violator,
            'min_density': self.min_density,
            'min_degree_ratio': self.min_degree_ratio,
            'checked': self.checked,
            'mode': self.mode,
            'sizes': list(self.sizes),
        }


def _threshold(eps: float, size: int) -> int:
    """⌈ε·size⌉，至少为 1"""
    return max(1, int(math.ceil(eps * size - 1e-9)))


def _prepare(x: Iterable[int], y: Iterable[int]) -> Tuple[np.ndarray, np.ndarray]:
    xs, ys = as_vertex_set(x), as_vertex_set(y)
    if not xs or not ys or (xs & ys):
        raise GraphError(ErrorMessage.INVALID_VERTEX_SET)
    return np.array(sorted(xs), dtype=np.int64), np.array(sorted(ys), dtype=np.int64)


def _worst_completion(counts: np.ndarray, size: int) -> np.ndarray:
    """给定一侧子集对另一侧每个顶点的邻居计数，取计数最小的 size 个位置"""
    if size >= counts.size:
        return np.arange(counts.size)
    return np.sort(np.argpartition(counts, size - 1, kind='introselect')[:size])


def certify_dense(g: Graph, x: Iterable[int], y: Iterable[int], eps: float, delta: float,
                  mode: str = CertifyMode.SAMPLED, budget: int = 2000, seed: int = 0) -> Verdict:
    """
    认证 (x, y) 是否 (ε, δ)-稠密

    对任意 |U1| ≥ ε|x|、|U2| ≥ ε|y| 的子集对要求 d(U1, U2) ≥ δ。固定一侧时，
    密度最小的另一侧子集恰好由邻居最少的顶点组成，且取阈值大小时最小，
    因此只需枚举（或抽样）阈值大小的一侧，另一侧取最坏补全。

    Parameters:
    -----------
    g : Graph
        图
    x, y : Iterable[int]
        非空且不相交的顶点集合
    eps, delta : float
        认证参数
    mode : str, optional
        exhaustive 或 sampled
    budget : int, optional
        抽样模式下的子集对数量
    seed : int, optional
        抽样模式的随机种子

    Returns:
    --------
    Verdict
        认证结论

    Raises:
    -------
    PreconditionError
        穷举模式下 |x| + |y| 超过上限
    """
    xs, ys = _prepare(x, y)
    tx, ty = _threshold(eps, xs.size), _threshold(eps, ys.size)
    sub = g.adjacency[np.ix_(xs, ys)].astype(np.int64)
    sizes = (int(xs.size), int(ys.size))

    if mode == CertifyMode.EXHAUSTIVE:
        if xs.size + ys.size > EXHAUSTIVE_LIMIT:
            raise PreconditionError(ErrorMessage.EXHAUSTIVE_TOO_LARGE.format(
                xs.size + ys.size, EXHAUSTIVE_LIMIT))
        # 枚举较小一侧
        if xs.size <= ys.size:
            matrix, small, large, t_small, t_large, flipped = sub, xs, ys, tx, ty, False
        else:
            matrix, small, large, t_small, t_large, flipped = sub.T, ys, xs, ty, tx, True

        best = (2.0, None, None)
        checked = 0
        for combo in itertools.combinations(range(small.size), t_small):
            counts = matrix[list(combo)].sum(axis=0)
            worst = _worst_completion(counts, t_large)
            d = counts[worst].sum() / (t_small * t_large)
            checked += 1
            if d < best[0]:
                best = (d, combo, worst)

        min_density = float(best[0])
        if min_density < delta:
            u_small = frozenset(int(small[i]) for i in best[1])
            u_large = frozenset(int(large[i]) for i in best[2])
            pair = (u_large, u_small) if flipped else (u_small, u_large)
            return Verdict(False, 'density', pair, None, min_density, None, checked, mode, sizes)
        return Verdict(True, 'ok', None, None, min_density, None, checked, mode, sizes)

    if mode != CertifyMode.SAMPLED:
        raise ValueError(f"未知的认证模式: {mode}")

    rng = make_rng(seed, 'certify')
    min_density = 1.0
    for draw in range(budget):
        # 轮流随机抽取一侧，另一侧取最坏补全
        if draw % 2 == 0:
            rows = np.sort(rng.choice(xs.size, size=tx, replace=False))
            counts = sub[rows].sum(axis=0)
            cols = _worst_completion(counts, ty)
            e = int(counts[cols].sum())
        else:
            cols = np.sort(rng.choice(ys.size, size=ty, replace=False))
            counts = sub[:, cols].sum(axis=1)
            rows = _worst_completion(counts, tx)
            e = int(counts[rows].sum())
        d = e / (tx * ty)
        min_density = min(min_density, d)
        if d < delta:
            pair = (frozenset(int(v) for v in xs[rows]), frozenset(int(v) for v in ys[cols]))
            return Verdict(False, 'density', pair, None, min_density, None, draw + 1, mode, sizes)
    return Verdict(True, 'ok', None, None, min_density, None, budget, mode, sizes)


def certify_super_regular(g: Graph, x: Iterable[int], y: Iterable[int], eps: float, delta: float,
                          mode: str = CertifyMode.SAMPLED, budget: int = 2000,
                          seed: int = 0) -> Verdict:
    """
    认证 (x, y) 是否 (ε, δ)-超正则：稠密且每个顶点在对侧至少有 δ 比例的邻居

    Returns:
    --------
    Verdict
        度数条件失败时 reason 为 'degree'，violator 为最小度比例的顶点
    """
    xs, ys = _prepare(x, y)
    sub = g.adjacency[np.ix_(xs, ys)]
    x_ratio = sub.sum(axis=1) / ys.size
    y_ratio = sub.sum(axis=0) / xs.size
    min_ratio = float(min(x_ratio.min(), y_ratio.min()))
    sizes = (int(xs.size), int(ys.size))

    if min_ratio < delta - 1e-12:
        if x_ratio.min() <= y_ratio.min():
            violator = int(xs[int(np.argmin(x_ratio))])
        else:
            violator = int(ys[int(np.argmin(y_ratio))])
        return Verdict(False, 'degree', None, violator, 1.0, min_ratio, 0, mode, sizes)

    verdict = certify_dense(g, xs.tolist(), ys.tolist(), eps, delta, mode, budget, seed)
    return Verdict(verdict.passed, verdict.reason, verdict.counterexample, None,
                   verdict.min_density, min_ratio, verdict.checked, mode, sizes)


def subset_inherits(g: Graph, pair: Tuple[Iterable[int], Iterable[int]], subset_sizes: Sequence[int],
                    eps: float, delta: float, seed: int = 0, mode: str = CertifyMode.SAMPLED,
                    budget: int = 2000) -> Verdict:
    """
    随机子集是否继承超正则性

    从 pair 两侧各均匀随机抽取给定大小的子集，在 (eps, delta) 下认证子对。
    调用方通常传入 (ε′, δ/2)。

    Parameters:
    -----------
    g : Graph
        图
    pair : Tuple
        (x, y)
    subset_sizes : Sequence[int]
        (|U1|, |U2|)
    eps, delta : float
        子对的认证参数
    seed : int, optional
        随机种子

    Returns:
    --------
    Verdict
        子对的认证结论
    """
    xs, ys = _prepare(*pair)
    size_x, size_y = int(subset_sizes[0]), int(subset_sizes[1])
    if not (1 <= size_x <= xs.size and 1 <= size_y <= ys.size):
        raise ValueError(f"子集大小 {subset_sizes} 超出范围 ({xs.size}, {ys.size})")
    rng = make_rng(seed, 'subset')
    u1 = np.sort(rng.choice(xs, size=size_x, replace=False))
    u2 = np.sort(rng.choice(ys, size=size_y, replace=False))
    return certify_super_regular(g, u1.tolist(), u2.tolist(), eps, delta, mode, budget, seed)
