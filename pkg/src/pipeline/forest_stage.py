#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
情形二第一步：把删去裸路径内部后的森林 F 嵌入随机边
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Set, Tuple

from src.embedding import Embedding, embed_forest_greedy
from src.graph import Graph
from src.pipeline.types import ClusterState, SpecialPair
from src.regularity import ClusterId, ClusterPartition, certify_super_regular, flip
from src.tree import BarePathDecomposition
from src.utils.constants import CertifyMode, Stage
from src.utils.rng import derive_seed
from src.utils.stats_processor import StatsProcessor

logger = logging.getLogger(__name__)

OCCUPANCY_BAND = 5.0


@dataclass
class ForestStageResult:
    """
    森林嵌入阶段的结果

    Attributes:
    -----------
    embedding : Embedding
        F 的嵌入（原树编号）
    pairs : List[SpecialPair]
        每条被删路径对应的特殊对，x、y 为两端的像
    state : ClusterState
        各簇剩余的空闲顶点 W_C
    specials : Dict[ClusterId, Set[int]]
        各簇中的特殊顶点 X_C
    details : Dict[str, Any]
        占用统计
    """
    embedding: Embedding
    pairs: List[SpecialPair]
    state: ClusterState
    specials: Dict[ClusterId, Set[int]]
    details: Dict[str, Any] = field(default_factory=dict)


def occupancy_check(partition: ClusterPartition, state: ClusterState,
                    band: float = OCCUPANCY_BAND) -> Dict[str, Any]:
    """
    比较各簇空闲顶点数与超几何分布的期望

    未用顶点可看作从 n 个顶点中不放回抽取 |W| 个，簇 C 中的个数服从
    超几何分布 (n, |C|, |W|)。

    Returns:
    --------
    Dict[str, Any]
        各簇的 z 值与超出 band·σ 的簇
    """
    n = partition.n
    total = state.total_free()
    z_scores = {}
    outside = []
    for cid, size in partition.sizes().items():
        observed = len(state.w[cid])
        mean, std = StatsProcessor.hypergeometric_moments(n, size, total)
        z_scores[str(cid)] = round((observed - mean) / std, 3) if std > 0 else 0.0
        if not StatsProcessor.within_band(observed, mean, std, band):
            outside.append(list(cid))
    return {'z_scores': z_scores, 'outside_band': outside}


def certify_cluster_pairs(g: Graph, pairs: Iterable[Tuple[Iterable[int], Iterable[int]]], eps: float,
                          delta: float, budget: int, seed: int) -> Dict[str, Any]:
    """
    对一组簇对做抽样超正则认证，只记录结果

    Returns:
    --------
    Dict[str, Any]
        通过数、检查数以及观察到的最小密度和最小度比例
    """
    checked = passed = 0
    min_density, min_ratio = 1.0, 1.0
    for j, (x, y) in enumerate(pairs):
        x, y = sorted(x), sorted(y)
        if not x or not y:
            continue
        verdict = certify_super_regular(g, x, y, eps, delta, CertifyMode.SAMPLED, budget,
                                        derive_seed(seed, 'certify', j))
        checked += 1
        passed += int(verdict.passed)
        min_density = min(min_density, verdict.min_density)
        if verdict.min_degree_ratio is not None:
            min_ratio = min(min_ratio, verdict.min_degree_ratio)
    return {'checked': checked, 'passed': passed, 'min_density': min_density,
            'min_degree_ratio': min_ratio, 'epsilon': eps, 'delta': delta}


def special_sets(pairs: Iterable[SpecialPair], membership: Mapping[int, ClusterId]) -> Dict[ClusterId, Set[int]]:
    """各簇中当前端点组成的 X_C"""
    sets: Dict[ClusterId, Set[int]] = {cid: set() for cid in sorted(set(membership.values()))}
    for pair in pairs:
        sets[membership[pair.end_x]].add(pair.end_x)
        sets[membership[pair.end_y]].add(pair.end_y)
    return sets


def stage_embed_forest(decomp: BarePathDecomposition, r2: Graph, partition: ClusterPartition, seed: int,
                       retry_factor: int = 10) -> ForestStageResult:
    """
    把森林 F 嵌入 r2，并按簇统计特殊顶点 X_C 与空闲顶点 W_C

    Parameters:
    -----------
    decomp : BarePathDecomposition
        已截取条数的裸路径分解
    r2 : Graph
        第二阶段随机边（union 模式下为 G ∪ R₂）
    partition : ClusterPartition
        伙伴簇划分
    seed : int
        随机种子
    retry_factor : int, optional
        回溯预算系数

    Returns:
    --------
    ForestStageResult
        F 的嵌入、特殊对与各簇集合

    Raises:
    -------
    EmbeddingError
        森林嵌入失败，阶段标签为 embed_forest
    """
    forest = decomp.forest()
    n = r2.n
    embedding = embed_forest_greedy(forest, r2, range(n), derive_seed(seed, 'forest'),
                                    retry_budget=retry_factor * max(forest.n, 1), stage=Stage.EMBED_FOREST)

    pairs = []
    for index, path in enumerate(decomp.paths):
        pairs.append(SpecialPair(index, tuple(path), (embedding.image(path[0]),),
                                 (embedding.image(path[-1]),)))

    membership = partition.membership()
    free = set(range(n)) - embedding.used
    state = ClusterState(membership, free)
    specials = special_sets(pairs, membership)

    details = {
        'forest_size': forest.n,
        'paths': len(pairs),
        'free': len(free),
        'x_sizes': {str(cid): len(xs) for cid, xs in specials.items()},
        'w_sizes': {str(cid): size for cid, size in state.w_sizes().items()},
    }
    occupancy = occupancy_check(partition, state)
    details.update(occupancy)
    if occupancy['outside_band']:
        logger.warning(f"{len(occupancy['outside_band'])} 个簇的空闲顶点数超出 {OCCUPANCY_BAND}σ 范围")
    logger.debug(f"森林 F ({forest.n} 个顶点) 已嵌入，剩余 {len(free)} 个空闲顶点")
    return ForestStageResult(embedding, pairs, state, specials, details)


def stage_pairs_for_certification(specials: Mapping[ClusterId, Set[int]],
                                  state: ClusterState) -> List[Tuple[Set[int], Set[int]]]:
    """(X_C, W_flip(C)) 与 (W_C, W_flip(C)) 两类簇对"""
    result = []
    for cid in state.cluster_ids():
        result.append((specials.get(cid, set()), state.w[flip(cid)]))
        if cid[1] == 1:
            result.append((state.w[cid], state.w[flip(cid)]))
    return result
