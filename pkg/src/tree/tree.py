#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
有界度树与森林

Tree 以 0 为根，用父节点数组表示；Forest 是原树顶点的一个子集及其上的边，
顶点保留原来的编号。
"""

import logging
import math
import os
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.base import BaseStructure
from src.utils.constants import ErrorMessage, TreeShape
from src.utils.exceptions import DataLoadError, TreeError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)


class Forest(BaseStructure):
    """
    森林：顶点集合为任意整数标签，边集无环

    Parameters:
    -----------
    vertices : Iterable[int]
        顶点标签
    edges : Iterable[Tuple[int, int]]
        边，端点必须都在 vertices 中
    """
    def __init__(self, vertices: Iterable[int], edges: Iterable[Tuple[int, int]]):
        verts = tuple(sorted(set(int(v) for v in vertices)))
        super().__init__(len(verts))
        self._vertices = verts
        adjacency: Dict[int, List[int]] = {v: [] for v in verts}
        for u, v in edges:
            u, v = int(u), int(v)
            if u not in adjacency or v not in adjacency:
                raise TreeError(f"边 ({u}, {v}) 的端点不在森林顶点集中")
            if u == v:
                raise TreeError("森林中不允许自环")
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adj = {v: tuple(sorted(nbrs)) for v, nbrs in adjacency.items()}
        self.validate()

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degree_sequence(self) -> np.ndarray:
        return np.array([len(self._adj[v]) for v in self._vertices], dtype=np.int64)

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in self._vertices:
            for v in self._adj[u]:
                if u < v:
                    yield u, v

    def components(self) -> List[List[int]]:
        """
        连通分支，每个分支按以最小顶点为根的 BFS 顺序给出

        Returns:
        --------
        List[List[int]]
            分支列表，按分支最小顶点排序
        """
        seen = set()
        result = []
        for root in self._vertices:
            if root in seen:
                continue
            order = [root]
            seen.add(root)
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        order.append(w)
                        queue.append(w)
            result.append(order)
        return result

    def validate(self) -> bool:
        """
        验证无环（边数 = 顶点数 − 分支数）

        Raises:
        -------
        TreeError
            存在环或重边
        """
        edge_count = sum(len(nbrs) for nbrs in self._adj.values())
        if edge_count % 2:
            raise TreeError("邻接表不对称")
        for v, nbrs in self._adj.items():
            if len(set(nbrs)) != len(nbrs):
                raise TreeError(f"顶点 {v} 处存在重边")
        if edge_count // 2 != self.n - len(self.components()):
            raise TreeError("森林中存在环")
        return True


class Tree(BaseStructure):
    """
    以 0 为根的有标号树

    Parameters:
    -----------
    n : int
        顶点数
    parent : Sequence[int]
        父节点数组，parent[0] = -1，其余 parent[v] 在 [0, n) 内
    """
    def __init__(self, n: int, parent: Sequence[int]):
        super().__init__(n)
        if n < 1:
            raise TreeError("树至少有一个顶点")
        parents = tuple(int(p) for p in parent)
        if len(parents) != n:
            raise TreeError(f"父节点数组长度 {len(parents)} 与 n={n} 不符")
        self._parent = parents

        adjacency: List[List[int]] = [[] for _ in range(n)]
        for v in range(1, n):
            p = parents[v]
            if not 0 <= p < n or p == v:
                raise TreeError(f"顶点 {v} 的父节点 {p} 非法")
            adjacency[v].append(p)
            adjacency[p].append(v)
        self._adj = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        self._degrees = np.array([len(nbrs) for nbrs in self._adj], dtype=np.int64)
        self.validate()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], root: int = 0) -> 'Tree':
        """
        由边列表构造树（父节点由从 root 出发的 BFS 给出；root 必须为 0）

        Raises:
        -------
        TreeError
            边列表不构成 n 个顶点的树
        """
        if root != 0:
            raise TreeError("根必须为顶点 0")
        pairs = [(int(u), int(v)) for u, v in edges]
        if len(pairs) != n - 1:
            raise TreeError(f"{n} 个顶点的树必须恰有 {n - 1} 条边，实际 {len(pairs)} 条")
        adjacency: List[List[int]] = [[] for _ in range(n)]
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise TreeError(f"边 ({u}, {v}) 非法")
            adjacency[u].append(v)
            adjacency[v].append(u)

        parent = [-2] * n
        parent[0] = -1
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in sorted(adjacency[u]):
                if parent[w] == -2:
                    parent[w] = u
                    queue.append(w)
        if any(p == -2 for p in parent):
            raise TreeError("边列表不连通")
        return cls(n, parent)

    # ------------------------------------------------------------------
    @property
    def parent(self) -> Tuple[int, ...]:
        return self._parent

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def children(self, v: int) -> Tuple[int, ...]:
        return tuple(w for w in self._adj[v] if self._parent[w] == v)

    def degree(self, v: int) -> int:
        return int(self._degrees[v])

    def degree_sequence(self) -> np.ndarray:
        return self._degrees.copy()

    def num_edges(self) -> int:
        return self.n - 1

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.n):
            for v in self._adj[u]:
                if u < v:
                    yield u, v

    def leaves(self) -> List[int]:
        """度为 1 的顶点"""
        return [v for v in range(self.n) if self._degrees[v] == 1]

    def as_forest(self) -> Forest:
        """把整棵树视为单分支森林"""
        return Forest(range(self.n), self.edges())

    def validate(self) -> bool:
        """
        验证连通、无环、恰有 n−1 条边

        Raises:
        -------
        TreeError
            结构不是树
        """
        if self._parent[0] != -1:
            raise TreeError("顶点 0 必须是根（parent[0] = -1）")
        # 每个顶点沿父指针都能回到根，且不经过环
        depth = [-1] * self.n
        depth[0] = 0
        for v in range(1, self.n):
            path = []
            u = v
            while depth[u] < 0:
                path.append(u)
                u = self._parent[u]
                if len(path) > self.n:
                    raise TreeError("父节点数组含环")
            for offset, w in enumerate(reversed(path), start=1):
                depth[w] = depth[u] + offset
        return True

    # ------------------------------------------------------------------
    # 文件读写：首行 n，随后 n−1 行 `parent child`
    # ------------------------------------------------------------------
    def write(self, file_path: str) -> str:
        file_dir = os.path.dirname(file_path)
        if file_dir:
            os.makedirs(file_dir, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(f"{self.n}\n")
            for v in range(1, self.n):
                f.write(f"{self._parent[v]} {v}\n")
        return file_path

    @classmethod
    def read(cls, file_path: str) -> 'Tree':
        """
        读取树文件

        Raises:
        -------
        DataLoadError
            文件无法读取或不构成树
        """
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                tokens = [line.split() for line in f if line.strip()]
        except OSError as e:
            raise DataLoadError(f"读取树文件失败: {str(e)}") from e
        try:
            n = int(tokens[0][0])
            pairs = [(int(p), int(c)) for p, c in tokens[1:]]
            return cls.from_edges(n, pairs)
        except (IndexError, ValueError, TreeError) as e:
            raise DataLoadError(f"树文件 {file_path} 格式不正确: {str(e)}") from e


def count_leaves(t: Tree) -> int:
    """
    叶子数（度为 1 的顶点个数）

    Raises:
    -------
    TreeError
        单顶点树
    """
    if t.n < 2:
        raise TreeError(ErrorMessage.SINGLE_VERTEX_TREE)
    return len(t.leaves())


# ----------------------------------------------------------------------
# 生成器
# ----------------------------------------------------------------------
def _path_parents(n: int) -> List[int]:
    return [-1] + list(range(n - 1))


def _uniform_attachment_edges(n: int, delta_max: int, rng: np.random.Generator) -> List[Tuple[int, int]]:
    degrees = np.zeros(n, dtype=np.int64)
    edges = []
    for i in range(1, n):
        candidates = np.flatnonzero(degrees[:i] < delta_max)
        j = int(candidates[rng.integers(candidates.size)])
        edges.append((j, i))
        degrees[i] += 1
        degrees[j] += 1
    return edges


def _caterpillar_parents(n: int, delta_max: int, rng: np.random.Generator) -> List[int]:
    """尽量短的脊柱，剩余顶点作为悬挂叶随机挂在有剩余容量的脊柱顶点上"""
    if n <= delta_max + 1:
        spine, capacity = 1, [delta_max]
    else:
        spine = 2
        while spine + (spine - 2) * (delta_max - 2) + 2 * (delta_max - 1) < n:
            spine += 1
        capacity = [delta_max - 1] + [delta_max - 2] * (spine - 2) + [delta_max - 1]

    slots = np.repeat(np.arange(spine), capacity)
    chosen = np.sort(rng.choice(slots.size, size=n - spine, replace=False))
    parents = _path_parents(spine)
    parents.extend(int(slots[c]) for c in chosen)
    return parents


def _broom_parents(n: int, delta_max: int) -> List[int]:
    bristles = min(delta_max - 1, n - 2)
    handle = n - bristles
    return _path_parents(handle) + [handle - 1] * bristles


def _subdivided_edges(n: int, delta_max: int, length: int,
                      rng: np.random.Generator) -> List[Tuple[int, int]]:
    """骨架树的每条边细分成长路径，叶子少、裸路径长"""
    core = max(2, min(n, int(round(n / max(length, 1)))))
    core_edges = _uniform_attachment_edges(core, delta_max, rng)
    extra = n - core
    per_edge = np.full(len(core_edges), extra // len(core_edges), dtype=np.int64)
    per_edge[rng.choice(len(core_edges), size=extra % len(core_edges), replace=False)] += 1

    edges = []
    next_label = core
    for (u, v), inner in zip(core_edges, per_edge.tolist()):
        chain = [u] + list(range(next_label, next_label + inner)) + [v]
        next_label += inner
        edges.extend(zip(chain[:-1], chain[1:]))
    return edges


def generate_bounded_tree(n: int, delta_max: int, shape: str, seed: int = 0,
                          path: Optional[str] = None, subdivision_length: int = 12) -> Tree:
    """
    生成最大度不超过 delta_max 的树

    Parameters:
    -----------
    n : int
        顶点数（n ≥ 1）
    delta_max : int
        最大度上界
    shape : str
        uniform-attachment / path / caterpillar / broom / subdivided / star / file
    seed : int, optional
        随机种子
    path : str, optional
        shape 为 file 时的树文件路径
    subdivision_length : int, optional
        subdivided 形状中骨架边细分后的平均长度

    Returns:
    --------
    Tree
        生成的树

    Raises:
    -------
    TreeError
        参数不可行（度上界过小、未知形状、文件中的树不满足度上界等）
    """
    if n < 1:
        raise TreeError("树至少有一个顶点")
    if n >= 3 and delta_max < 2:
        raise TreeError(ErrorMessage.INVALID_DEGREE_BOUND.format(delta_max))
    if n == 2 and delta_max < 1:
        raise TreeError(ErrorMessage.INVALID_DEGREE_BOUND.format(delta_max))

    rng = make_rng(seed, 'tree', shape)

    if shape == TreeShape.FILE:
        if not path:
            raise TreeError("shape=file 需要提供树文件路径")
        tree = Tree.read(path)
        if tree.n != n:
            raise TreeError(f"树文件顶点数 {tree.n} 与 n={n} 不符")
    elif n <= 2 or shape == TreeShape.PATH:
        tree = Tree(n, _path_parents(n))
    elif shape == TreeShape.UNIFORM_ATTACHMENT:
        tree = Tree.from_edges(n, _uniform_attachment_edges(n, delta_max, rng))
    elif shape == TreeShape.CATERPILLAR:
        tree = Tree(n, _caterpillar_parents(n, delta_max, rng))
    elif shape == TreeShape.BROOM:
        tree = Tree(n, _broom_parents(n, delta_max))
    elif shape == TreeShape.SUBDIVIDED:
        tree = Tree.from_edges(n, _subdivided_edges(n, delta_max, subdivision_length, rng))
    elif shape == TreeShape.STAR:
        if delta_max < n - 1:
            raise TreeError(f"星 K_(1,{n - 1}) 需要 delta_max ≥ {n - 1}")
        tree = Tree(n, [-1] + [0] * (n - 1))
    else:
        raise TreeError(f"未知的树形状: {shape}")

    if tree.max_degree() > delta_max:
        raise TreeError(f"树的最大度 {tree.max_degree()} 超过上界 {delta_max}")
    logger.debug(f"生成树: shape={shape}, n={n}, 最大度={tree.max_degree()}")
    return tree


def bare_path_lower_bound(n: int, leaves: int, k: int) -> float:
    """不交裸路径条数的下界 (n − (2ℓ−2)(k+1)) / (k+1)"""
    return (n - (2 * leaves - 2) * (k + 1)) / (k + 1)


def leaf_target(n: int, fraction: float) -> int:
    """⌈λn⌉"""
    return int(math.ceil(fraction * n - 1e-12))
