#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
树的手术操作：抽取裸路径、删除叶子
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from src.tree.tree import Forest, Tree, bare_path_lower_bound, count_leaves
from src.utils.constants import ErrorMessage
from src.utils.exceptions import InvariantError, TreeError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BarePathDecomposition:
    """
    裸路径分解

    Attributes:
    -----------
    tree : Tree
        原树
    k : int
        每条路径的边数
    paths : Tuple[Tuple[int, ...], ...]
        互不相交的路径，每条 k+1 个顶点
    """
    tree: Tree
    k: int
    paths: Tuple[Tuple[int, ...], ...]
    forest_vertices: FrozenSet[int] = field(init=False)

    def __post_init__(self):
        interior = set()
        for path in self.paths:
            interior.update(path[1:-1])
        object.__setattr__(self, 'forest_vertices',
                           frozenset(v for v in range(self.tree.n) if v not in interior))

    @property
    def special_pairs(self) -> List[Tuple[int, int]]:
        """每条路径的 (首顶点, 尾顶点)"""
        return [(path[0], path[-1]) for path in self.paths]

    @property
    def interior_vertices(self) -> FrozenSet[int]:
        return frozenset(range(self.tree.n)) - self.forest_vertices

    def __len__(self) -> int:
        return len(self.paths)

    def forest(self) -> Forest:
        """删去所有路径内部顶点后得到的森林 F"""
        keep = self.forest_vertices
        return Forest(keep, ((u, v) for u, v in self.tree.edges() if u in keep and v in keep))

    def restrict(self, count: int) -> 'BarePathDecomposition':
        """只保留前 count 条路径"""
        if count < 0 or count > len(self.paths):
            raise ValueError(f"路径条数 {count} 超出范围 [0, {len(self.paths)}]")
        return BarePathDecomposition(self.tree, self.k, self.paths[:count])

    def reassemble_edges(self) -> List[Tuple[int, int]]:
        """森林的边加上各路径的边，按字典序排列"""
        edges = set(self.forest().edges())
        for path in self.paths:
            for u, v in zip(path[:-1], path[1:]):
                edges.add((min(u, v), max(u, v)))
        return sorted(edges)

    def validate(self) -> bool:
        """
        验证分解的结构不变量

        Raises:
        -------
        InvariantError
            路径相交、长度不符、内部顶点度数不为 2 或重组后的边集与原树不同
        """
        seen = set()
        for path in self.paths:
            if len(path) != self.k + 1:
                raise InvariantError(f"路径 {path} 的长度不是 {self.k}")
            if seen.intersection(path):
                raise InvariantError("裸路径之间存在公共顶点")
            seen.update(path)
            for u, v in zip(path[:-1], path[1:]):
                if v not in self.tree.neighbors(u):
                    raise InvariantError(f"({u}, {v}) 不是树边")
            if any(self.tree.degree(v) != 2 for v in path[1:-1]):
                raise InvariantError(f"路径 {path} 的内部顶点度数不为 2")
        if self.reassemble_edges() != sorted(self.tree.edges()):
            raise InvariantError("森林与路径重组后的边集与原树不同")
        return True


def _bare_runs(t: Tree) -> Iterator[List[int]]:
    """按最小顶点顺序给出所有极大的度 2 顶点串（沿树的顺序排列）"""
    is_bare = [t.degree(v) == 2 for v in range(t.n)]
    seen = [False] * t.n
    for start in range(t.n):
        if not is_bare[start] or seen[start]:
            continue
        # 先走到串的一端
        end, prev = start, -1
        while True:
            nxt = [w for w in t.neighbors(end) if is_bare[w] and w != prev]
            if not nxt:
                break
            prev, end = end, nxt[0]
        run = [end]
        seen[end] = True
        prev = -1
        cur = end
        while True:
            nxt = [w for w in t.neighbors(cur) if is_bare[w] and w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            run.append(cur)
            seen[cur] = True
        yield run


def extract_bare_paths(t: Tree, k: int) -> BarePathDecomposition:
    """
    贪心抽取互不相交、长度为 k 的裸路径

    沿每条极大的度 2 顶点串切出 ⌊串长/(k+1)⌋ 段，每段 k+1 个顶点。
    返回的条数必须满足下界 (n − (2ℓ−2)(k+1)) / (k+1)，ℓ 为叶子数。

    Parameters:
    -----------
    t : Tree
        树
    k : int
        路径长度（边数），k ≥ 2

    Returns:
    --------
    BarePathDecomposition
        分解结果，可能为空

    Raises:
    -------
    ValueError
        k < 2
    InvariantError
        条数低于下界
    """
    if k < 2:
        raise ValueError(f"裸路径长度 k 至少为 2，实际为 {k}")

    pieces = []
    for run in _bare_runs(t):
        for start in range(0, len(run) - k, k + 1):
            pieces.append(tuple(run[start:start + k + 1]))

    decomposition = BarePathDecomposition(t, k, tuple(pieces))
    if t.n >= 2:
        bound = bare_path_lower_bound(t.n, count_leaves(t), k)
        if len(pieces) < bound:
            raise InvariantError(f"裸路径条数 {len(pieces)} 低于下界 {bound:.3f}")
    logger.debug(f"抽取裸路径: n={t.n}, k={k}, 条数={len(pieces)}")
    return decomposition


@dataclass(frozen=True)
class LeafRemoval:
    """
    删除叶子的结果

    Attributes:
    -----------
    tree : Tree
        剪枝后的树（重新编号为 0..n−count−1）
    demand : Dict[int, int]
        剪枝树顶点 → 在该顶点处删除的叶子数 ℓ(a)，只包含正值
    kept : Tuple[int, ...]
        kept[v] 为剪枝树顶点 v 在原树中的编号
    removed : Dict[int, int]
        原树中被删除的叶子 → 其父顶点（原编号）
    """
    tree: Tree
    demand: Dict[int, int]
    kept: Tuple[int, ...]
    removed: Dict[int, int]

    def __iter__(self):
        # 支持 `pruned, ell = remove_leaves(...)`
        yield self.tree
        yield self.demand

    def leaves_at(self, a: int) -> List[int]:
        """剪枝树顶点 a 处删除的叶子（原编号，升序）"""
        original = self.kept[a]
        return sorted(leaf for leaf, parent in self.removed.items() if parent == original)


def remove_leaves(t: Tree, count: int, seed: Optional[int] = None) -> LeafRemoval:
    """
    删除 count 个叶子

    给定 seed 时在所有叶子中均匀随机选取，否则按编号从小到大选取。

    Parameters:
    -----------
    t : Tree
        原树
    count : int
        删除的叶子数
    seed : int, optional
        随机种子

    Returns:
    --------
    LeafRemoval
        剪枝后的树与叶子分配 ℓ

    Raises:
    -------
    TreeError
        count 超过叶子数，或删除后不剩顶点
    """
    leaves = t.leaves() if t.n >= 2 else []
    if count < 0 or count > len(leaves):
        raise TreeError(ErrorMessage.TOO_MANY_LEAVES.format(count, len(leaves)))
    if count >= t.n:
        raise TreeError("删除叶子后树中不剩任何顶点")
    if t.n == 2 and count == 2:
        raise TreeError("K2 的两个端点不能同时删除")

    if seed is None:
        chosen = sorted(leaves[:count])
    else:
        rng = make_rng(seed, 'remove_leaves')
        chosen = sorted(int(v) for v in rng.choice(leaves, size=count, replace=False)) if count else []

    removed = {}
    for leaf in chosen:
        removed[leaf] = t.neighbors(leaf)[0]
    kept = tuple(v for v in range(t.n) if v not in removed)
    relabel = {old: new for new, old in enumerate(kept)}
    pruned = Tree.from_edges(len(kept), [(relabel[u], relabel[v]) for u, v in t.edges()
                                         if u in relabel and v in relabel])

    demand: Dict[int, int] = {}
    for parent in removed.values():
        a = relabel[parent]
        demand[a] = demand.get(a, 0) + 1
    return LeafRemoval(pruned, dict(sorted(demand.items())), kept, removed)
