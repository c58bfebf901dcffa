#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
情形二第二步：用长度为 2 的路径把特殊顶点移到目标簇对

x 经 G 的边走到伙伴簇前半部分的 w，再经 R₃ 的边走到目标簇 (r,1) 后半部分的 x′；
y 对称地走到 (r,2)。每个特殊对消耗 4 个顶点，特殊路径长度 k 减 4。
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from src.graph import Graph
from src.pipeline.types import ClusterState, SpecialPair
from src.regularity import ClusterId, flip
from src.utils.constants import DestinationRule, Stage
from src.utils.exceptions import BridgeError, InvariantError
from src.utils.rng import make_rng

logger = logging.getLogger(__name__)

BRIDGE_SHRINK = 4


@dataclass
class EndpointStageResult:
    """
    端点修正的结果

    Attributes:
    -----------
    pairs : List[SpecialPair]
        修正后的特殊对（home 已确定）
    consumed : Set[int]
        桥接用掉的顶点
    k : int
        新的特殊路径长度
    details : Dict[str, Any]
        回退次数与目的地分布
    """
    pairs: List[SpecialPair]
    consumed: Set[int]
    k: int
    details: Dict[str, Any] = field(default_factory=dict)


class _Bridger:
    """在两个半簇集合之间找 end–w–end′ 形式的桥"""

    def __init__(self, g: Graph, r3: Graph, state: ClusterState, rng: np.random.Generator):
        self.g = g
        self.r3 = r3
        self.state = state
        self.rng = rng
        self.first: Dict[ClusterId, Set[int]] = {}
        self.second: Dict[ClusterId, Set[int]] = {}
        for cid in state.cluster_ids():
            members = np.array(sorted(state.w[cid]), dtype=np.int64)
            shuffled = rng.permutation(members)
            half = shuffled.size // 2
            self.first[cid] = set(int(v) for v in shuffled[:half])
            self.second[cid] = set(int(v) for v in shuffled[half:])
        self.middle_fallbacks = 0

    def bridge(self, end: int, target: ClusterId) -> Optional[Tuple[int, int]]:
        """
        找 w ∈ N_G(end) ∩ W¹_{flip(C_end)} 和 R₃ 中与 w 相邻的 end′ ∈ W²_target

        伙伴簇前半部分没有可用的 w 时，依次尝试其他簇的前半部分。
        """
        home = flip(self.state.membership[end])
        others = sorted((cid for cid in self.first if cid != home), key=lambda c: (-len(self.first[c]), c))
        destination = self.second[target]
        if not destination:
            return None
        nbrs = self.g.neighbors(end)
        for source in [home] + others:
            pool = self.first[source]
            candidates = np.array([int(w) for w in nbrs if int(w) in pool], dtype=np.int64)
            if not candidates.size:
                continue
            for w in self.rng.permutation(candidates):
                options = [int(v) for v in self.r3.neighbors(int(w)) if int(v) in destination]
                if options:
                    if source != home:
                        self.middle_fallbacks += 1
                    return int(w), options[int(self.rng.integers(len(options)))]
        return None

    def take(self, w: int, end: int):
        cid_w, cid_end = self.state.membership[w], self.state.membership[end]
        self.first[cid_w].discard(w)
        self.second[cid_end].discard(end)

    def give_back(self, w: int, end: int):
        self.first[self.state.membership[w]].add(w)
        self.second[self.state.membership[end]].add(end)

    def residual_sizes(self) -> Dict[str, Dict[str, int]]:
        return {
            'first_halves': {str(cid): len(vs) for cid, vs in sorted(self.first.items())},
            'second_halves': {str(cid): len(vs) for cid, vs in sorted(self.second.items())},
        }


def stage_fix_endpoints(pairs: List[SpecialPair], state: ClusterState, g: Graph, r3: Graph, k: int,
                        seed: int, rule: str = DestinationRule.BALANCED) -> EndpointStageResult:
    """
    把每个特殊对的两端移到同一簇对 r 的两个簇中

    目的地 r 从随机偏移开始轮转分配。balanced 规则下只接受仍有余量的 r：
    对 h = 1, 2 都要求 |W_(r,h)| − 待处理桥中点数 − 1 ≥ ((k′−1)/2)(|Z_r|+1)，
    否则退回余量最大的 r 并计数。

    Parameters:
    -----------
    pairs : List[SpecialPair]
        森林嵌入后的特殊对
    state : ClusterState
        各簇空闲顶点，原地更新
    g : Graph
        宿主图（x–w 边）
    r3 : Graph
        第三阶段随机边（w–x′ 边；union 模式下为 G ∪ R₃）
    k : int
        当前特殊路径长度
    seed : int
        随机种子
    rule : str, optional
        round_robin 或 balanced

    Returns:
    --------
    EndpointStageResult
        修正后的特殊对，k′ = k − 4

    Raises:
    -------
    BridgeError
        某个特殊对在所有目的地都找不到桥，details 含各半簇的剩余大小
    """
    if rule not in (DestinationRule.ROUND_ROBIN, DestinationRule.BALANCED):
        raise ValueError(f"未知的目的地规则: {rule}")
    new_k = k - BRIDGE_SHRINK
    rng = make_rng(seed, 'fix_endpoints')
    bridger = _Bridger(g, r3, state, rng)
    indices = sorted({cid[0] for cid in state.cluster_ids()})
    q = len(indices)
    offset = int(rng.integers(q))
    per_home = (new_k - 1) // 2

    pending = Counter()
    for pair in pairs:
        pending[flip(state.membership[pair.x])] += 1
        pending[flip(state.membership[pair.y])] += 1
    homes = Counter()

    def slack(r: int) -> int:
        return min(len(state.w[(r, h)]) - pending[(r, h)] - 1 for h in (1, 2)) - per_home * (homes[r] + 1)

    capacity_fallbacks = destination_fallbacks = 0
    updated, consumed = [], set()
    for step, pair in enumerate(pairs):
        rotation = [indices[(offset + step + j) % q] for j in range(q)]
        by_slack = sorted(indices, key=lambda r: (-slack(r), r))
        if rule == DestinationRule.BALANCED:
            first = next((r for r in rotation if slack(r) >= 0), None)
            if first is None:
                capacity_fallbacks += 1
                first = by_slack[0]
        else:
            first = rotation[0]
        order = [first] + [r for r in by_slack if r != first]

        chosen = None
        for r in order:
            x_step = bridger.bridge(pair.x, (r, 1))
            if x_step is None:
                continue
            bridger.take(*x_step)
            y_step = bridger.bridge(pair.y, (r, 2))
            if y_step is None:
                bridger.give_back(*x_step)
                continue
            bridger.take(*y_step)
            chosen = (r, x_step, y_step)
            break
        if chosen is None:
            raise BridgeError(Stage.FIX_ENDPOINTS, f"特殊对 {pair.index} 在所有目的地都找不到桥",
                              dict(pair=pair.index, **bridger.residual_sizes()))

        r, x_step, y_step = chosen
        if r != first:
            destination_fallbacks += 1
        pending[flip(state.membership[pair.x])] -= 1
        pending[flip(state.membership[pair.y])] -= 1
        homes[r] += 1
        state.remove(x_step + y_step)
        consumed.update(x_step + y_step)
        updated.append(pair.bridged(x_step, y_step, r))
        logger.debug(f"特殊对 {pair.index} 移到簇对 {r}: {pair.x}→{x_step[1]}, {pair.y}→{y_step[1]}")

    if 2 * state.total_free() != (new_k - 1) * 2 * len(updated):
        raise InvariantError(f"端点修正后 2|W| = {2 * state.total_free()} 不等于 "
                             f"(k−1)|X| = {(new_k - 1) * 2 * len(updated)}")

    expected = len(updated) / q if q else 0.0
    details = {
        'k': new_k,
        'homes': {str(r): homes[r] for r in indices},
        'max_home_deviation': max((abs(homes[r] - expected) for r in indices), default=0.0),
        'capacity_fallbacks': capacity_fallbacks,
        'destination_fallbacks': destination_fallbacks,
        'middle_fallbacks': bridger.middle_fallbacks,
    }
    if capacity_fallbacks or destination_fallbacks or bridger.middle_fallbacks:
        logger.warning(f"端点修正发生回退: 余量 {capacity_fallbacks}，目的地 {destination_fallbacks}，"
                       f"中点 {bridger.middle_fallbacks}")
    return EndpointStageResult(updated, consumed, new_k, details)
