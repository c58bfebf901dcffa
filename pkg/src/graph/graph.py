#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
无向简单图

顶点为 0..n-1 的稠密整数编号；外部标签只在文件读写边界做转换。
邻接关系同时保存为布尔邻接矩阵（O(1) 成员查询、子矩阵求密度）和
有序邻居数组（遍历）。
"""

import hashlib
import logging
import os
from functools import cached_property
from typing import FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from src.base import BaseStructure
from src.utils.constants import ErrorMessage
from src.utils.exceptions import DataLoadError, GraphError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[int]


def as_vertex_set(vertices: Iterable[int]) -> VertexSet:
    """把任意可迭代的顶点集合转换为 VertexSet（frozenset）"""
    if isinstance(vertices, frozenset):
        return vertices
    return frozenset(int(v) for v in vertices)


class Graph(BaseStructure):
    """
    无向简单图，构造后不可变

    Parameters:
    -----------
    n : int
        顶点数
    edges : Iterable[Tuple[int, int]], optional
        边列表，不允许自环；重复边会被合并
    adjacency : np.ndarray, optional
        n×n 对称布尔邻接矩阵，提供时忽略 edges
    """
    def __init__(self, n: int, edges: Optional[Iterable[Tuple[int, int]]] = None,
                 adjacency: Optional[np.ndarray] = None):
        super().__init__(n)

        if adjacency is not None:
            adj = np.array(adjacency, dtype=bool, copy=True)
            if adj.shape != (self.n, self.n):
                raise GraphError(f"邻接矩阵形状 {adj.shape} 与顶点数 {self.n} 不符")
        else:
            adj = np.zeros((self.n, self.n), dtype=bool)
            pairs = np.asarray(list(edges) if edges is not None else [], dtype=np.int64).reshape(-1, 2)
            if pairs.size:
                if pairs.min() < 0 or pairs.max() >= self.n:
                    raise GraphError(f"边的端点超出范围 [0, {self.n})")
                if np.any(pairs[:, 0] == pairs[:, 1]):
                    raise GraphError("不允许自环")
                adj[pairs[:, 0], pairs[:, 1]] = True
                adj[pairs[:, 1], pairs[:, 0]] = True

        adj.setflags(write=False)
        self._adj = adj
        self._degrees = adj.sum(axis=1).astype(np.int64)
        self._neighbors = tuple(np.flatnonzero(adj[v]) for v in range(self.n))
        self.validate()

    # ------------------------------------------------------------------
    # 基本查询
    # ------------------------------------------------------------------
    @property
    def adjacency(self) -> np.ndarray:
        """只读的布尔邻接矩阵"""
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        """{u, v} 是否为边"""
        return bool(self._adj[u, v])

    def neighbors(self, v: int) -> np.ndarray:
        """顶点 v 的邻居（升序）"""
        return self._neighbors[v]

    def degree(self, v: int) -> int:
        return int(self._degrees[v])

    def degrees(self) -> np.ndarray:
        """所有顶点的度数"""
        return self._degrees

    def degree_sequence(self) -> np.ndarray:
        return self._degrees.copy()

    def num_edges(self) -> int:
        return int(self._degrees.sum() // 2)

    def edges(self) -> Iterator[Tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self._adj, k=1))
        for u, v in zip(rows.tolist(), cols.tolist()):
            yield u, v

    @cached_property
    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        """边集合，元素为 (u, v), u < v"""
        return frozenset(self.edges())

    def validate(self) -> bool:
        """
        验证无自环、邻接对称

        Raises:
        -------
        GraphError
            邻接矩阵不合法
        """
        if self.n and np.any(np.diagonal(self._adj)):
            raise GraphError("不允许自环")
        if not np.array_equal(self._adj, self._adj.T):
            raise GraphError("邻接矩阵必须对称")
        return True

    def degree_into(self, v: int, vertices: Sequence[int]) -> int:
        """顶点 v 在给定顶点集合中的邻居数"""
        if len(vertices) == 0:
            return 0
        return int(self._adj[v, np.asarray(list(vertices), dtype=np.int64)].sum())

    def fingerprint(self) -> str:
        """邻接矩阵的稳定摘要，用作缓存键"""
        digest = hashlib.md5()
        digest.update(str(self.n).encode('ascii'))
        digest.update(np.packbits(self._adj).tobytes())
        return digest.hexdigest()

    def to_networkx(self) -> nx.Graph:
        """转换为 networkx 图（顶点按编号顺序插入）"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def __getstate__(self):
        state = self.__dict__.copy()
        state.pop('edge_set', None)
        return state


# ----------------------------------------------------------------------
# 构造函数
# ----------------------------------------------------------------------
def empty_graph(n: int) -> Graph:
    """n 个顶点的空图"""
    return Graph(n)


def complete_graph(n: int) -> Graph:
    """完全图 K_n"""
    adj = np.ones((n, n), dtype=bool)
    np.fill_diagonal(adj, False)
    return Graph(n, adjacency=adj)


def complete_bipartite(a: int, b: int) -> Graph:
    """
    完全二部图 K_{a,b}

    前 a 个顶点为一侧，后 b 个顶点为另一侧。
    """
    n = a + b
    adj = np.zeros((n, n), dtype=bool)
    adj[:a, a:] = True
    adj[a:, :a] = True
    return Graph(n, adjacency=adj)


def path_graph(n: int) -> Graph:
    """路径 0-1-...-(n-1)"""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def generate_gnp(n: int, p: float, seed: int) -> Graph:
    """
    生成二项随机图 G(n, p)

    每个无序顶点对独立地以概率 p 成为边；给定种子时结果确定。

    Parameters:
    -----------
    n : int
        顶点数
    p : float
        边概率，必须在 [0, 1] 内
    seed : int
        随机种子

    Returns:
    --------
    Graph
        随机图

    Raises:
    -------
    ValueError
        p 不在 [0, 1] 内或 n 为负
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(ErrorMessage.INVALID_PROBABILITY.format(p))
    if n < 0:
        raise ValueError(f"顶点数不能为负: {n}")

    rng = make_rng(seed, 'gnp')
    rows, cols = np.triu_indices(n, k=1)
    mask = rng.random(rows.shape[0]) < p
    adj = np.zeros((n, n), dtype=bool)
    adj[rows[mask], cols[mask]] = True
    adj |= adj.T
    return Graph(n, adjacency=adj)


def graph_union(g: Graph, h: Graph) -> Graph:
    """
    两个同顶点集图的并

    Raises:
    -------
    GraphError
        顶点数不一致
    """
    if g.n != h.n:
        raise GraphError(ErrorMessage.VERTEX_COUNT_MISMATCH.format(g.n, h.n))
    return Graph(g.n, adjacency=g.adjacency | h.adjacency)


def union_all(graphs: Sequence[Graph]) -> Graph:
    """多个同顶点集图的并"""
    if not graphs:
        raise GraphError("至少需要一个图")
    adj = graphs[0].adjacency.copy()
    for other in graphs[1:]:
        if other.n != graphs[0].n:
            raise GraphError(ErrorMessage.VERTEX_COUNT_MISMATCH.format(graphs[0].n, other.n))
        adj |= other.adjacency
    return Graph(graphs[0].n, adjacency=adj)


def min_degree(g: Graph) -> int:
    """
    最小度

    Raises:
    -------
    GraphError
        空图（n = 0）
    """
    if g.n < 1:
        raise GraphError(ErrorMessage.EMPTY_GRAPH)
    return int(g.degrees().min())


def _index_array(vertices: Iterable[int]) -> np.ndarray:
    return np.fromiter((int(v) for v in vertices), dtype=np.int64)


def edge_count_between(g: Graph, x: Iterable[int], y: Iterable[int]) -> int:
    """不相交顶点集 x, y 之间的边数 e(x, y)"""
    xs, ys = _index_array(x), _index_array(y)
    if xs.size == 0 or ys.size == 0:
        return 0
    return int(g.adjacency[np.ix_(xs, ys)].sum())


def density(g: Graph, x: Iterable[int], y: Iterable[int]) -> float:
    """
    顶点集之间的密度 d(x, y) = e(x, y) / (|x||y|)

    Parameters:
    -----------
    g : Graph
        图
    x, y : Iterable[int]
        非空且互不相交的顶点集合

    Returns:
    --------
    float
        [0, 1] 内的密度

    Raises:
    -------
    GraphError
        集合为空或相交
    """
    xs, ys = as_vertex_set(x), as_vertex_set(y)
    if not xs or not ys or (xs & ys):
        raise GraphError(ErrorMessage.INVALID_VERTEX_SET)
    return edge_count_between(g, sorted(xs), sorted(ys)) / (len(xs) * len(ys))


def random_permutation(n: int, seed: int) -> np.ndarray:
    """均匀随机的顶点置换，perm[v] 为 v 的新编号"""
    return make_rng(seed, 'permutation').permutation(n)


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    """
    按置换重新编号：旧顶点 v 变为 permutation[v]

    Raises:
    -------
    GraphError
        permutation 不是 0..n-1 的置换
    """
    perm = np.asarray(permutation, dtype=np.int64)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise GraphError("permutation 必须是 0..n-1 的置换")
    adj = np.zeros_like(g.adjacency)
    adj[np.ix_(perm, perm)] = g.adjacency
    return Graph(g.n, adjacency=adj)


# ----------------------------------------------------------------------
# 边列表文件
# ----------------------------------------------------------------------
def read_edge_list(file_path: str) -> Graph:
    """
    读取边列表文件：首行 `n m`，随后 m 行 `u v`（u < v）

    Raises:
    -------
    DataLoadError
        文件无法读取或格式不正确
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            tokens = [line.split() for line in f if line.strip()]
    except OSError as e:
        raise DataLoadError(f"读取图文件失败: {str(e)}") from e

    if not tokens or len(tokens[0]) != 2:
        raise DataLoadError(f"图文件 {file_path} 首行必须为 `n m`")
    try:
        n, m = int(tokens[0][0]), int(tokens[0][1])
        pairs = [(int(u), int(v)) for u, v in tokens[1:]]
    except ValueError as e:
        raise DataLoadError(f"图文件 {file_path} 含非整数字段") from e

    if len(pairs) != m:
        raise DataLoadError(f"图文件声明 {m} 条边，实际 {len(pairs)} 条")
    if any(u >= v for u, v in pairs):
        raise DataLoadError("边列表每行必须满足 u < v")

    try:
        graph = Graph(n, pairs)
    except GraphError as e:
        raise DataLoadError(f"图文件 {file_path} 内容非法: {str(e)}") from e
    logger.info(f"已读取图文件 {file_path}: n={n}, m={m}")
    return graph


def write_edge_list(g: Graph, file_path: str) -> str:
    """写出边列表文件，返回路径"""
    file_dir = os.path.dirname(file_path)
    if file_dir:
        os.makedirs(file_dir, exist_ok=True)
    with open(file_path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(f"{g.n} {g.num_edges()}\n")
        for u, v in g.edges():
            f.write(f"{u} {v}\n")
    return file_path
