#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
情形二最后一步：在每个簇对中把剩余的特殊对补成完整的特殊路径

把簇对 i 的每个特殊对看作一个 S^Z 节点，特殊路径就是经过它的 k 圈：
S^Z → S¹ → S² → S¹ → … → S² → S^Z，内部奇数位置取 W_(i,2)，偶数位置取 W_(i,1)。

先逐层用最大匹配做随机贪心穿线，匹配不上的链用剩余顶点补齐；
再做若干轮局部修补：同侧顶点两两交换以减少缺失的边，仍有冲突时
释放冲突的圈并重新穿线。分组方式很少时逐一枚举。
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.graph import Graph
from src.pipeline.template_paths import layer_matching
from src.pipeline.types import ClusterState, SpecialPair
from src.utils.constants import Stage
from src.utils.exceptions import CyclePackingError, InvariantError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)

# 交换搜索时随机选一个交换（而不是最优交换）的概率
SWAP_NOISE = 0.1
STEPS_PER_SLOT = 30


@dataclass
class CycleStageResult:
    """
    圈打包结果

    Attributes:
    -----------
    paths : Dict[int, Tuple[int, ...]]
        特殊对编号 → 内部顶点序列（长度 k−1）
    consumed : Set[int]
        用掉的顶点
    details : Dict[str, Any]
        各簇对的搜索统计
    """
    paths: Dict[int, Tuple[int, ...]]
    consumed: Set[int]
    details: Dict[str, Any] = field(default_factory=dict)


def _ordered_partitions(items: Sequence[int], groups: int, size: int) -> Iterator[List[Tuple[int, ...]]]:
    """把 items 分成 groups 个大小为 size 的有序组的全部方式"""
    if groups == 0:
        yield []
        return
    for first in itertools.combinations(items, size):
        chosen = set(first)
        rest = [v for v in items if v not in chosen]
        for tail in _ordered_partitions(rest, groups - 1, size):
            yield [first] + tail


def assignment_count(side: int, groups: int, size: int) -> int:
    """side!/(size!)^groups"""
    if groups * size != side:
        return 0
    return math.factorial(side) // (math.factorial(size) ** groups)


class _CycleSearch:
    """
    单个簇对的圈打包搜索

    grid[c, j] 是第 c 条链第 j+1 个内部位置上的顶点；j 为偶数时取自
    odd_side（W_(i,2)），j 为奇数时取自 even_side（W_(i,1)）。
    """

    def __init__(self, pairs: Sequence[SpecialPair], odd_side: Sequence[int], even_side: Sequence[int],
                 g: Graph, k: int, rng: np.random.Generator):
        self.adj = g.adjacency
        self.length = k - 1
        self.count = len(pairs)
        self.ends_x = np.array([p.end_x for p in pairs], dtype=np.int64)
        self.ends_y = np.array([p.end_y for p in pairs], dtype=np.int64)
        self.sides = (np.array(sorted(odd_side), dtype=np.int64), np.array(sorted(even_side), dtype=np.int64))
        self.rng = rng
        self.swaps = 0

    def thread(self, rows: Sequence[int], grid: np.ndarray, pools: Tuple[np.ndarray, np.ndarray]):
        """
        逐层最大匹配，把 rows 中的链穿过全部位置

        每层从对应一侧的池中取 len(rows) 个顶点；匹配不上的链随机取池中剩余顶点。
        """
        rows = np.asarray(rows, dtype=np.int64)
        pools = [self.rng.permutation(pools[0]), self.rng.permutation(pools[1])]
        for j in range(self.length):
            side = j % 2
            pool = pools[side]
            tails = self.ends_x[rows] if j == 0 else grid[rows, j - 1]
            allowed = self.adj[np.ix_(tails, pool)]
            if j == self.length - 1:
                allowed = allowed & self.adj[np.ix_(self.ends_y[rows], pool)]
            matched = layer_matching(allowed, self.rng)
            taken = np.zeros(pool.size, dtype=bool)
            for row, col in matched.items():
                grid[rows[row], j] = pool[col]
                taken[col] = True
            unmatched = [row for row in range(rows.size) if row not in matched]
            spare = np.flatnonzero(~taken)
            for row, col in zip(unmatched, spare):
                grid[rows[row], j] = pool[col]
                taken[col] = True
            pools[side] = pool[~taken]

    def slot_cost(self, grid: np.ndarray, c: int, j: int) -> int:
        """位置 (c, j) 两侧缺失的边数"""
        v = grid[c, j]
        left = self.ends_x[c] if j == 0 else grid[c, j - 1]
        right = self.ends_y[c] if j == self.length - 1 else grid[c, j + 1]
        return int(not self.adj[left, v]) + int(not self.adj[v, right])

    def chain_cost(self, grid: np.ndarray, c: int) -> int:
        walk = [self.ends_x[c]] + grid[c].tolist() + [self.ends_y[c]]
        return sum(1 for a, b in zip(walk[:-1], walk[1:]) if not self.adj[a, b])

    def cost(self, grid: np.ndarray) -> int:
        return sum(self.chain_cost(grid, c) for c in range(self.count))

    def _swap_delta(self, grid: np.ndarray, a: Tuple[int, int], b: Tuple[int, int]) -> int:
        before = self.slot_cost(grid, *a) + self.slot_cost(grid, *b)
        grid[a], grid[b] = grid[b], grid[a]
        after = self.slot_cost(grid, *a) + self.slot_cost(grid, *b)
        grid[a], grid[b] = grid[b], grid[a]
        return after - before

    def repair(self, grid: np.ndarray, steps: int) -> bool:
        """
        最小冲突交换：随机取一个有缺边的位置，与同侧代价变化最小的位置交换

        Returns:
        --------
        bool
            是否已没有缺边
        """
        slots = [(c, j) for c in range(self.count) for j in range(self.length)]
        for _ in range(steps):
            bad = [slot for slot in slots if self.slot_cost(grid, *slot)]
            if not bad:
                return True
            a = bad[int(self.rng.integers(len(bad)))]
            partners = [b for b in slots if b[1] % 2 == a[1] % 2 and b != a]
            if not partners:
                return False
            if self.rng.random() < SWAP_NOISE:
                b = partners[int(self.rng.integers(len(partners)))]
            else:
                deltas = np.array([self._swap_delta(grid, a, b) for b in partners])
                best = np.flatnonzero(deltas == deltas.min())
                b = partners[int(best[self.rng.integers(best.size)])]
            grid[a], grid[b] = grid[b], grid[a]
            self.swaps += 1
        return self.cost(grid) == 0

    def rethread_conflicts(self, grid: np.ndarray):
        """释放仍有缺边的圈，用释放出的顶点重新穿线"""
        rows = [c for c in range(self.count) if self.chain_cost(grid, c)]
        if not rows:
            return
        pools = (grid[rows][:, 0::2].ravel(), grid[rows][:, 1::2].ravel())
        self.thread(rows, grid, pools)

    def search(self, restarts: int, augment_rounds: int) -> Tuple[Optional[np.ndarray], Dict[str, int]]:
        """
        随机贪心穿线加 augment_rounds 轮局部修补，最多重启 restarts 次

        Returns:
        --------
        Tuple[np.ndarray or None, Dict[str, int]]
            (无缺边的 grid，统计)；预算用完仍有缺边时 grid 为 None
        """
        steps = STEPS_PER_SLOT * self.count * self.length
        best = None
        for restart in range(1, restarts + 1):
            grid = np.zeros((self.count, self.length), dtype=np.int64)
            self.thread(range(self.count), grid, self.sides)
            for augment in range(1, augment_rounds + 1):
                if self.repair(grid, steps):
                    return grid, {'restarts': restart, 'augment_rounds': augment, 'swaps': self.swaps}
                self.rethread_conflicts(grid)
            remaining = self.cost(grid)
            best = remaining if best is None else min(best, remaining)
            if remaining == 0:
                return grid, {'restarts': restart, 'augment_rounds': augment_rounds, 'swaps': self.swaps}
        return None, {'restarts': restarts, 'swaps': self.swaps, 'missing_edges': best or 0}


def _thread_groups(pairs: Sequence[SpecialPair], odd_groups: Sequence[Sequence[int]],
                   even_groups: Sequence[Sequence[int]], g: Graph, k: int,
                   rng: np.random.Generator) -> Optional[Dict[int, List[int]]]:
    """按给定分组逐层做完美匹配；任何一层不完美时返回 None"""
    chains = [[p.end_x] for p in pairs]
    ends_y = np.array([p.end_y for p in pairs], dtype=np.int64)
    for j in range(1, k):
        group = np.array(odd_groups[(j - 1) // 2] if j % 2 == 1 else even_groups[(j - 1) // 2], dtype=np.int64)
        tails = np.array([chain[-1] for chain in chains], dtype=np.int64)
        allowed = g.adjacency[np.ix_(tails, group)]
        if j == k - 1:
            allowed = allowed & g.adjacency[np.ix_(ends_y, group)]
        matched = layer_matching(allowed, rng)
        if len(matched) < len(chains):
            return None
        for row, col in matched.items():
            chains[row].append(int(group[col]))
    return {p.index: chain[1:] for p, chain in zip(pairs, chains)}


def _pack_home(home: int, pairs: List[SpecialPair], odd_side: List[int], even_side: List[int], g: Graph,
               k: int, rounds: int, augment_rounds: int,
               rng: np.random.Generator) -> Tuple[Dict[int, List[int]], Dict[str, Any]]:
    """对单个簇对打包；返回 (路径, 搜索统计)"""
    count = len(pairs)
    groups = (k - 1) // 2
    total = assignment_count(len(odd_side), groups, count) * assignment_count(len(even_side), groups, count)

    if total <= rounds:
        tried = 0
        for odd_groups, even_groups in itertools.product(_ordered_partitions(odd_side, groups, count),
                                                         _ordered_partitions(even_side, groups, count)):
            tried += 1
            result = _thread_groups(pairs, odd_groups, even_groups, g, k, rng)
            if result is not None:
                return result, {'mode': 'exhaustive', 'assignments': tried}
        raise CyclePackingError(Stage.COMPLETE_CYCLES,
                                f"簇对 {home} 的全部 {total} 种分组都无法打包 {count} 个圈",
                                {'home': home, 'pairs': count, 'assignments': total})

    search = _CycleSearch(pairs, odd_side, even_side, g, k, rng)
    grid, stats = search.search(rounds, augment_rounds)
    if grid is None:
        raise CyclePackingError(Stage.COMPLETE_CYCLES,
                                f"簇对 {home} 在 {rounds} 次重启内未能打包 {count} 个圈",
                                dict(home=home, pairs=count, **stats))
    stats['mode'] = 'search'
    return {p.index: grid[c].tolist() for c, p in enumerate(pairs)}, stats


def stage_complete_cycles(pairs: List[SpecialPair], state: ClusterState, g: Graph, k: int, seed: int,
                          rounds: int = 25, augment_rounds: int = 3) -> CycleStageResult:
    """
    为剩余特殊对补全内部路径

    Parameters:
    -----------
    pairs : List[SpecialPair]
        调整后剩余的特殊对
    state : ClusterState
        满足 2|W_C| = (k−1)|X_C| 的空闲顶点
    g : Graph
        宿主图
    k : int
        特殊路径长度（奇数）
    seed : int
        随机种子
    rounds : int, optional
        每个簇对的随机重启次数；全部分组方式不超过该数时逐一枚举
    augment_rounds : int, optional
        每次重启的局部修补轮数

    Returns:
    --------
    CycleStageResult
        每个特殊对的内部路径

    Raises:
    -------
    CyclePackingError
        某个簇对用完预算仍未打包成功
    InvariantError
        簇大小不满足平衡恒等式，或结果不是每圈恰好一个 S^Z 节点
    """
    if k < 3 or k % 2 == 0:
        raise ValueError(f"k 必须是 ≥ 3 的奇数，实际为 {k}")
    rng = make_rng(seed, 'complete_cycles')
    groups = (k - 1) // 2
    by_home: Dict[int, List[SpecialPair]] = {}
    for pair in pairs:
        by_home.setdefault(pair.home, []).append(pair)

    paths: Dict[int, Tuple[int, ...]] = {}
    consumed: Set[int] = set()
    searches = {}
    for home in sorted({cid[0] for cid in state.cluster_ids()}):
        members = sorted(by_home.get(home, []), key=lambda p: p.index)
        odd_side = sorted(state.w[(home, 2)])
        even_side = sorted(state.w[(home, 1)])
        expected = groups * len(members)
        if len(odd_side) != expected or len(even_side) != expected:
            raise InvariantError(f"簇对 {home}: |S¹| = {len(odd_side)}, |S²| = {len(even_side)}，"
                                 f"应为 {expected}")
        if not members:
            continue
        result, stats = _pack_home(home, members, odd_side, even_side, g, k, rounds, augment_rounds, rng)
        searches[str(home)] = stats
        for pair in members:
            interior = tuple(int(v) for v in result[pair.index])
            if len(interior) != k - 1 or pair.end_x in interior or pair.end_y in interior:
                raise InvariantError(f"特殊对 {pair.index} 的圈不是恰好经过一个 S^Z 节点")
            paths[pair.index] = interior
            consumed.update(interior)
        state.remove(consumed & (state.w[(home, 1)] | state.w[(home, 2)]))

    if len(consumed) != sum(len(p) for p in paths.values()):
        raise InvariantError("圈打包使用了重复的顶点")
    logger.debug(f"圈打包完成: {len(paths)} 条特殊路径")
    return CycleStageResult(paths, consumed, {'searches': searches, 'paths': len(paths)})
