#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
星覆盖

最小度至少 αn 的图可以被若干个不交的星覆盖，每个星有 2 到 1+⌊1/α⌋ 个顶点。
构造方法是对每个未覆盖顶点依次尝试三种交换操作。
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Set, Tuple

from src.graph import Graph, min_degree
from src.utils.constants import Stage
from src.utils.exceptions import InvariantError, PreconditionError, StarCoverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Star:
    """以 center 为中心、leaves 为叶子的星"""
    center: int
    leaves: Tuple[int, ...]

    @property
    def size(self) -> int:
        return 1 + len(self.leaves)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return (self.center,) + self.leaves


def star_capacity(alpha: float) -> int:
    """星的顶点数上界 1+⌊1/α⌋（α 截断到 1/2）"""
    return 1 + int(math.floor(1.0 / min(alpha, 0.5) + 1e-9))


def star_cover(g: Graph, alpha: float) -> List[Star]:
    """
    构造星覆盖

    对每个未覆盖的顶点 v，按顺序尝试：
    1. v 有未覆盖的邻居 u：新建星 {v; u}
    2. v 的邻居 u 是未满星的中心（2 顶点星的任一端都可以作中心）：v 作为叶子加入
    3. v 的邻居 u 是至少 3 顶点星的叶子：把 u 取出，新建星 {v; u}

    Parameters:
    -----------
    g : Graph
        图
    alpha : float
        最小度比例，0 < α ≤ 1；大于 1/2 时按 1/2 处理

    Returns:
    --------
    List[Star]
        按中心编号排序的星

    Raises:
    -------
    PreconditionError
        最小度小于 αn
    StarCoverError
        三种操作都不可用（在前置条件成立时不会发生）
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha 必须在 (0, 1] 内，实际为 {alpha}")
    if g.n == 0:
        return []
    if min_degree(g) < alpha * g.n - 1e-9:
        raise PreconditionError(f"星覆盖要求最小度 ≥ {alpha}·{g.n}，实际为 {min_degree(g)}")

    cap = star_capacity(alpha)
    centers: Dict[int, Set[int]] = {}  # 中心 → 叶子集合
    owner: Dict[int, int] = {}         # 已覆盖顶点 → 所在星的中心

    def recenter(old_center: int, new_center: int):
        leaves = centers.pop(old_center)
        leaves.discard(new_center)
        leaves.add(old_center)
        centers[new_center] = leaves
        for w in leaves | {new_center}:
            owner[w] = new_center

    for v in range(g.n):
        if v in owner:
            continue
        nbrs = g.neighbors(v).tolist()

        free = [u for u in nbrs if u not in owner]
        if free:
            u = free[0]
            centers[v] = {u}
            owner[v] = v
            owner[u] = v
            continue

        joined = False
        for u in nbrs:
            c = owner[u]
            size = 1 + len(centers[c])
            if size >= cap:
                continue
            if u == c or size == 2:
                if u != c:
                    recenter(c, u)
                centers[u].add(v)
                owner[v] = u
                joined = True
                break
        if joined:
            continue

        stolen = False
        for u in nbrs:
            c = owner[u]
            if u != c and len(centers[c]) >= 2:
                centers[c].discard(u)
                centers[v] = {u}
                owner[v] = v
                owner[u] = v
                stolen = True
                break
        if not stolen:
            raise StarCoverError(Stage.PARTITION, f"顶点 {v} 无法被星覆盖", {'vertex': v, 'degree': len(nbrs)})

    stars = [Star(c, tuple(sorted(leaves))) for c, leaves in sorted(centers.items())]
    validate_star_cover(g, stars, cap)
    logger.debug(f"星覆盖: n={g.n}, 星数={len(stars)}, 上界={cap}")
    return stars


def validate_star_cover(g: Graph, stars: List[Star], cap: int) -> bool:
    """
    验证星覆盖：覆盖全部顶点、星互不相交、大小在 [2, cap] 内、叶子与中心相邻

    Raises:
    -------
    InvariantError
        任一条件不成立
    """
    seen = set()
    for star in stars:
        if not 2 <= star.size <= cap:
            raise InvariantError(f"星 {star} 的大小 {star.size} 不在 [2, {cap}] 内")
        for leaf in star.leaves:
            if not g.has_edge(star.center, leaf):
                raise InvariantError(f"星的叶子 {leaf} 与中心 {star.center} 不相邻")
        if seen.intersection(star.vertices):
            raise InvariantError("星之间存在公共顶点")
        seen.update(star.vertices)
    if len(seen) != g.n:
        raise InvariantError(f"星覆盖只覆盖了 {len(seen)}/{g.n} 个顶点")
    return True
