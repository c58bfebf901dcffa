#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
带回溯的贪心森林嵌入
"""

import heapq
import logging
from typing import Dict, Iterable, List, Optional, Set, Union

import numpy as np

from src.embedding.embedding import Embedding
from src.graph import Graph
from src.tree import Forest, Tree
from src.utils.constants import Stage
from src.utils.exceptions import EmbeddingError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)


def embed_forest_greedy(forest: Union[Forest, Tree], host: Graph, allowed: Iterable[int], seed: int,
                        retry_budget: Optional[int] = None, stage: str = Stage.ALMOST_SPANNING) -> Embedding:
    """
    按 BFS 顺序贪心嵌入森林

    各分支的根放在随机的空闲允许顶点上，其余顶点放在父顶点像的随机空闲允许邻居上。
    某个顶点无处可放时，撤销其父顶点的整棵子树，并让父顶点换一个未尝试过的位置。

    Parameters:
    -----------
    forest : Forest or Tree
        被嵌入的森林
    host : Graph
        宿主图
    allowed : Iterable[int]
        可使用的宿主顶点
    seed : int
        随机种子
    retry_budget : int, optional
        放置次数上限，默认 10 * 森林顶点数
    stage : str, optional
        失败时报告的阶段标签

    Returns:
    --------
    Embedding
        只使用 allowed 中顶点的嵌入

    Raises:
    -------
    EmbeddingError
        允许顶点不足，或预算耗尽；details 含卡住子树的大小
    """
    if isinstance(forest, Tree):
        forest = forest.as_forest()
    allowed_mask = np.zeros(host.n, dtype=bool)
    allowed_list = sorted(set(int(v) for v in allowed))
    allowed_mask[allowed_list] = True

    size = forest.n
    if size > len(allowed_list):
        raise EmbeddingError(stage, f"森林有 {size} 个顶点，但只有 {len(allowed_list)} 个允许顶点",
                             {'forest_size': size, 'allowed': len(allowed_list)})
    budget = retry_budget if retry_budget is not None else 10 * size
    rng = make_rng(seed, 'embed_forest')

    # BFS 顺序与父子关系
    order: List[int] = []
    parent: Dict[int, Optional[int]] = {}
    children: Dict[int, List[int]] = {v: [] for v in forest.vertices}
    for component in forest.components():
        root = component[0]
        parent[root] = None
        for v in component:
            order.append(v)
            for w in forest.neighbors(v):
                if w not in parent:
                    parent[w] = v
                    children[v].append(w)
    position = {v: i for i, v in enumerate(order)}

    free = allowed_mask.copy()
    image: Dict[int, int] = {}
    tried: Dict[int, Set[int]] = {v: set() for v in order}
    pending = list(range(len(order)))
    heapq.heapify(pending)
    placements = 0

    def subtree(v: int) -> List[int]:
        stack, result = [v], []
        while stack:
            u = stack.pop()
            result.append(u)
            stack.extend(children[u])
        return result

    while pending:
        v = order[heapq.heappop(pending)]
        p = parent[v]
        if p is None:
            candidates = np.flatnonzero(free)
        else:
            nbrs = host.neighbors(image[p])
            candidates = nbrs[free[nbrs]]
        if tried[v]:
            candidates = candidates[~np.isin(candidates, list(tried[v]))]

        if candidates.size:
            choice = int(candidates[rng.integers(candidates.size)])
            image[v] = choice
            free[choice] = False
            placements += 1
            if placements > budget:
                raise EmbeddingError(stage, f"放置次数超过预算 {budget}",
                                     {'placements': placements, 'placed': len(image),
                                      'forest_size': size, 'stuck_subtree': len(subtree(v))})
            continue

        if p is None:
            raise EmbeddingError(stage, f"根 {v} 无可用位置",
                                 {'placements': placements, 'placed': len(image),
                                  'forest_size': size, 'stuck_subtree': len(subtree(v))})

        # 撤销父顶点的子树，父顶点换位置
        heapq.heappush(pending, position[v])
        tried[p].add(image[p])
        for u in subtree(p):
            if u in image:
                free[image.pop(u)] = True
                heapq.heappush(pending, position[u])
            if u != p:
                tried[u].clear()
        logger.debug(f"顶点 {v} 无处可放，撤销父顶点 {p} 的子树")

    return Embedding(image)
