#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
叶子多的情形：删去一部分叶子，把剩下的树嵌入随机边，再用星打包补回叶子
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence

from src.embedding import Embedding, embed_forest_greedy
from src.graph import Graph, graph_union
from src.matching.star_packing import StarDemand, StarPacking, cross_degree_bound, find_star_packing
from src.tree import LeafRemoval, Tree, count_leaves, leaf_target, remove_leaves
from src.utils.constants import PhaseMode, Stage
from src.utils.exceptions import PreconditionError
from src.utils.rng import derive_seed

logger = logging.getLogger(__name__)


@dataclass
class Case1Result:
    """
    情形一的结果

    Attributes:
    -----------
    embedding : Embedding
        整棵树的嵌入（原树编号）
    removal : LeafRemoval
        删除叶子的记录
    packing : StarPacking
        补回叶子的星打包
    details : Dict[str, Any]
        各子阶段的统计
    """
    embedding: Embedding
    removal: LeafRemoval
    packing: StarPacking
    details: Dict[str, Any] = field(default_factory=dict)


def complete_case1(tree: Tree, host: Graph, phases: Sequence[Graph], lam: float, seed: int,
                   retry_factor: int = 10, phase_mode: str = PhaseMode.RANDOM) -> Case1Result:
    """
    删去 ⌈λn⌉ 个随机叶子，把剩下的 T′ 嵌入 R₁，再在 G ∪ R₂ 中为每个像 a 找 ℓ(a) 个未用顶点

    Parameters:
    -----------
    tree : Tree
        待嵌入的树，叶子数至少 λn
    host : Graph
        稠密宿主图
    phases : Sequence[Graph]
        随机边阶段 [R₁, R₂, ...]，至少两个
    lam : float
        删除叶子的比例 λ
    seed : int
        随机种子
    retry_factor : int, optional
        贪心嵌入的回溯预算系数
    phase_mode : str, optional
        random 时 T′ 只用 R₁ 的边；union 时使用 G ∪ R₁

    Returns:
    --------
    Case1Result
        完整嵌入及各子阶段统计

    Raises:
    -------
    PreconditionError
        叶子数不足 λn 或顶点数不一致
    EmbeddingError
        T′ 嵌入失败（阶段 almost_spanning）
    HallViolationError
        星打包不可行（阶段 star_packing）
    """
    n = tree.n
    if host.n != n:
        raise PreconditionError(f"树有 {n} 个顶点，宿主图有 {host.n} 个顶点")
    if len(phases) < 2:
        raise PreconditionError("情形一至少需要两个随机边阶段")
    leaves = count_leaves(tree)
    if leaves < lam * n:
        raise PreconditionError(f"叶子数 {leaves} < λn = {lam * n:.1f}")

    count = min(leaf_target(n, lam), leaves)
    removal = remove_leaves(tree, count, seed=derive_seed(seed, 'case1', 'leaves'))
    pruned = removal.tree

    r1 = phases[0] if phase_mode == PhaseMode.RANDOM else graph_union(host, phases[0])
    partial = embed_forest_greedy(pruned, r1, range(n), derive_seed(seed, 'case1', 'embed'),
                                  retry_budget=retry_factor * pruned.n, stage=Stage.ALMOST_SPANNING)
    logger.debug(f"T′ ({pruned.n} 个顶点) 已嵌入 R₁")

    demand = {partial.image(a): c for a, c in removal.demand.items()}
    b_side = frozenset(range(n)) - partial.used
    bipartite = graph_union(host, phases[1])
    star_demand = StarDemand(frozenset(demand), b_side, demand)
    packing = find_star_packing(bipartite, star_demand, stage=Stage.STAR_PACKING)

    mapping = {removal.kept[a]: image for a, image in partial.items()}
    for a in removal.demand:
        centre_image = partial.image(a)
        for leaf, target in zip(removal.leaves_at(a), sorted(packing.stars[centre_image])):
            mapping[leaf] = target

    details = {
        'removed_leaves': count,
        'pruned_size': pruned.n,
        'a_side': len(demand),
        'b_side': len(b_side),
        'min_cross_degree': cross_degree_bound(bipartite, demand.keys(), b_side),
    }
    return Case1Result(Embedding(mapping), removal, packing, details)
