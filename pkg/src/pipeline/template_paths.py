#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
按模板实现互不相交的特殊路径
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from src.graph import Graph
from src.pipeline.types import SpecialPair, Template
from src.regularity import ClusterId
from src.utils.constants import Stage
from src.utils.exceptions import TemplatePathError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)


@dataclass
class TemplatePathResult:
    """
    模板路径搜索结果

    Attributes:
    -----------
    paths : List[Tuple[SpecialPair, Tuple[int, ...]]]
        (特殊对, 内部顶点序列)，内部顶点依次落在模板的各个位置
    diagnostics : Dict[str, Any]
        位置大小与相邻位置之间的极大匹配大小
    """
    paths: List[Tuple[SpecialPair, Tuple[int, ...]]]
    diagnostics: Dict[str, Any] = field(default_factory=dict)


def split_slots(template: Template, w_sets: Mapping[ClusterId, Set[int]],
                rng: np.random.Generator) -> List[np.ndarray]:
    """
    把重复出现的簇随机分成互不相交的位置

    簇 C 在模板中出现 t 次时，W_C 被随机均分为 t 份，依次分给这些位置。
    """
    counts = Counter(template.slots)
    parts: Dict[ClusterId, List[np.ndarray]] = {}
    for cid, t in counts.items():
        members = rng.permutation(np.array(sorted(w_sets.get(cid, ())), dtype=np.int64))
        parts[cid] = [np.sort(p) for p in np.array_split(members, t)]
    used = Counter()
    slots = []
    for cid in template.slots:
        slots.append(parts[cid][used[cid]])
        used[cid] += 1
    return slots


def matching_diagnostics(r4: Graph, slots: Sequence[np.ndarray], bound_slack: float) -> Dict[str, Any]:
    """
    相邻位置之间 r4 的极大匹配大小，与下界 min(|s_j|, |s_{j+1}|) − bound_slack 比较
    """
    sizes, below = [], 0
    for a, b in zip(slots[:-1], slots[1:]):
        aux = nx.Graph()
        sub = r4.adjacency[np.ix_(a, b)] if a.size and b.size else np.zeros((0, 0), dtype=bool)
        rows, cols = np.nonzero(sub)
        aux.add_edges_from((('s', int(a[i])), ('t', int(b[j]))) for i, j in zip(rows, cols))
        size = len(nx.maximal_matching(aux))
        sizes.append(size)
        if size <= min(a.size, b.size) - bound_slack:
            below += 1
    return {'matching_sizes': sizes, 'below_bound': below, 'bound_slack': bound_slack}


def layer_matching(allowed: np.ndarray, rng: np.random.Generator) -> Dict[int, int]:
    """
    链尾与候选顶点之间的最大匹配（Hopcroft–Karp）

    节点用整数标号，候选顶点的标号随机打乱，使平局时的选择随种子变化。

    Parameters:
    -----------
    allowed : np.ndarray
        m × p 布尔矩阵，allowed[i, j] 表示第 i 条链可以接上第 j 个候选顶点
    rng : np.random.Generator
        随机数生成器

    Returns:
    --------
    Dict[int, int]
        链下标 → 候选顶点下标
    """
    m, p = allowed.shape
    labels = m + rng.permutation(p)
    aux = nx.Graph()
    aux.add_nodes_from(range(m))
    aux.add_nodes_from(labels.tolist())
    rows, cols = np.nonzero(allowed)
    aux.add_edges_from(zip(rows.tolist(), labels[cols].tolist()))
    matching = nx.bipartite.hopcroft_karp_matching(aux, top_nodes=range(m))
    position = {int(label): j for j, label in enumerate(labels)}
    return {i: position[matching[i]] for i in range(m) if i in matching}


def _rank_candidates(candidates: Sequence[SpecialPair], slots: Sequence[np.ndarray], g: Graph,
                     threshold: float, rng: np.random.Generator) -> List[int]:
    """两端在首末位置都有至少 threshold 个邻居的特殊对排在前面，同组内随机"""
    order = rng.permutation(len(candidates)).tolist()
    good = {}
    for idx in order:
        pair = candidates[idx]
        degree = min(int(g.adjacency[pair.end_x, slots[0]].sum()), int(g.adjacency[pair.end_y, slots[-1]].sum()))
        good[idx] = degree >= threshold
    return sorted(order, key=lambda idx: not good[idx])


def _thread_batch(batch: Sequence[SpecialPair], slots: Sequence[np.ndarray], free: Sequence[np.ndarray],
                  g: Graph, r4: Graph, rng: np.random.Generator) -> Dict[int, Tuple[int, ...]]:
    """
    逐层用最大匹配把一批特殊对同时穿过各位置

    第一层沿 G 的边从 end_x 进入 slot_1，之后各层沿 r4 的边前进，
    最后一层的顶点还要与 end_y 在 G 中相邻。中途断开的链放弃。

    Returns:
    --------
    Dict[int, Tuple[int, ...]]
        批内下标 → 内部顶点序列（只含走完全部位置的链）
    """
    alive = list(range(len(batch)))
    chains: Dict[int, List[int]] = {i: [] for i in alive}
    ends_x = np.array([p.end_x for p in batch], dtype=np.int64)
    ends_y = np.array([p.end_y for p in batch], dtype=np.int64)
    last = len(slots) - 1
    for j, slot in enumerate(slots):
        pool = slot[free[j]]
        if not alive or not pool.size:
            return {}
        if j == 0:
            allowed = g.adjacency[np.ix_(ends_x[alive], pool)]
        else:
            tails = np.array([chains[i][-1] for i in alive], dtype=np.int64)
            allowed = r4.adjacency[np.ix_(tails, pool)]
        if j == last:
            allowed = allowed & g.adjacency[np.ix_(ends_y[alive], pool)]
        matched = layer_matching(allowed, rng)
        for row, col in matched.items():
            chains[alive[row]].append(int(pool[col]))
        alive = [alive[row] for row in sorted(matched)]
    return {i: tuple(chains[i]) for i in alive}


def find_template_paths(template: Template, count: int, candidates: Sequence[SpecialPair],
                        w_sets: Mapping[ClusterId, Set[int]], g: Graph, r4: Graph, xi: float, seed: int,
                        delta: float = 0.0, n: Optional[int] = None) -> TemplatePathResult:
    """
    为模板找 count 条互不相交的特殊路径

    每一轮取排在最前的 N − 已找到条数 个特殊对，逐层做最大匹配穿过各位置；
    走完的链占用其顶点，没走完的特殊对排到队尾，下一轮用剩余顶点重试。
    连续一整遍都没有新路径时停止。

    Parameters:
    -----------
    template : Template
        簇序列
    count : int
        需要的路径条数 N
    candidates : Sequence[SpecialPair]
        可用的特殊对（两端在模板首末簇中）
    w_sets : Mapping[ClusterId, Set[int]]
        当前各簇空闲顶点
    g : Graph
        宿主图（端点与首末位置之间的边）
    r4 : Graph
        第四阶段随机边（相邻位置之间的边；union 模式下为 G ∪ R₄）
    xi : float
        允许缺少的比例 ξ
    seed : int
        随机种子
    delta : float, optional
        δ，两端邻居数不少于 δξn 的特殊对优先，同时用于诊断下界
    n : int, optional
        δξn 中的 n，默认 g.n

    Returns:
    --------
    TemplatePathResult
        至多 count 条路径，至少 ⌈(1−ξ)count⌉ 条

    Raises:
    -------
    TemplatePathError
        找到的路径少于 ⌈(1−ξ)count⌉ 条
    """
    rng = make_rng(seed, 'template', *[c for cid in template.cluster_sequence for c in cid])
    slots = split_slots(template, w_sets, rng)
    n = g.n if n is None else n
    k = template.k
    bound_slack = delta * xi * n / max(k - 2, 1)
    diagnostics = {
        'template': [list(cid) for cid in template.cluster_sequence],
        'count': count,
        'slot_sizes': [int(s.size) for s in slots],
    }
    diagnostics.update(matching_diagnostics(r4, slots, bound_slack))

    free = [np.ones(s.size, dtype=bool) for s in slots]
    paths = []
    queue = _rank_candidates(candidates, slots, g, delta * xi * n, rng)
    stalled = rounds = 0
    while len(paths) < count and queue and stalled < len(queue):
        need = count - len(paths)
        batch, queue = queue[:need], queue[need:]
        threaded = _thread_batch([candidates[idx] for idx in batch], slots, free, g, r4, rng)
        rounds += 1
        for position, interior in sorted(threaded.items()):
            for j, v in enumerate(interior):
                free[j][np.searchsorted(slots[j], v)] = False
            paths.append((candidates[batch[position]], interior))
        queue.extend(idx for position, idx in enumerate(batch) if position not in threaded)
        stalled = 0 if threaded else stalled + len(batch)

    required = math.ceil((1 - xi) * count - 1e-9)
    diagnostics['found'] = len(paths)
    diagnostics['rounds'] = rounds
    if len(paths) < required:
        raise TemplatePathError(Stage.ADJUST_CLUSTERS,
                                f"模板只找到 {len(paths)} 条路径，少于 {required} 条", diagnostics)
    return TemplatePathResult(paths, diagnostics)
