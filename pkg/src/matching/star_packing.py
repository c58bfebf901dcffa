#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Hall 条件判定与不交星打包

需求 ℓ 的星打包等价于把每个 a 复制 ℓ(a) 份后的二部图中饱和左侧的匹配。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

import networkx as nx

from src.graph import Graph, as_vertex_set
from src.utils.constants import HallMode, Stage
from src.utils.exceptions import DataValidationError, HallViolationError, PreconditionError

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class StarDemand:
    """
    星打包需求

    Attributes:
    -----------
    a_side : FrozenSet[int]
        中心一侧
    b_side : FrozenSet[int]
        叶子一侧
    demand : Dict[int, int]
        a → 需要的叶子数 ℓ(a)（正整数）
    delta_max : int, optional
        ℓ(a) 的上界
    """
    a_side: FrozenSet[int]
    b_side: FrozenSet[int]
    demand: Mapping[int, int]
    delta_max: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'a_side', as_vertex_set(self.a_side))
        object.__setattr__(self, 'b_side', as_vertex_set(self.b_side))
        object.__setattr__(self, 'demand', {int(a): int(c) for a, c in sorted(self.demand.items())})
        self.validate()

    def validate(self) -> bool:
        """
        Raises:
        -------
        DataValidationError
            需求与集合不一致
        """
        if self.a_side & self.b_side:
            raise DataValidationError("A 与 B 必须不相交")
        if set(self.demand) != set(self.a_side):
            raise DataValidationError("需求的定义域必须恰为 A")
        if any(c < 1 for c in self.demand.values()):
            raise DataValidationError("每个需求 ℓ(a) 必须为正整数")
        if self.delta_max is not None and any(c > self.delta_max for c in self.demand.values()):
            raise DataValidationError(f"需求 ℓ(a) 超过最大度 {self.delta_max}")
        if sum(self.demand.values()) != len(self.b_side):
            raise DataValidationError(f"Σℓ = {sum(self.demand.values())} 与 |B| = {len(self.b_side)} 不符")
        return True


@dataclass(frozen=True)
class StarPacking:
    """中心 → 叶子集合"""
    stars: Mapping[int, FrozenSet[int]]

    def leaves(self) -> FrozenSet[int]:
        result = set()
        for leaves in self.stars.values():
            result |= leaves
        return frozenset(result)


@dataclass(frozen=True)
class HallCheck:
    """Hall 条件判定结果；不成立时 witness 为违反条件的集合 S"""
    holds: bool
    witness: Optional[FrozenSet[int]] = None
    mode: str = HallMode.MATCHING

    def __bool__(self) -> bool:
        return self.holds


def _replicated_graph(g: Graph, d: StarDemand) -> Tuple[nx.Graph, list]:
    """每个 a 复制 ℓ(a) 份；顶点按编号顺序插入以固定 Hopcroft–Karp 的选择"""
    b_sorted = sorted(d.b_side)
    b_set = d.b_side
    aux = nx.Graph()
    top = [('a', a, c) for a in sorted(d.a_side) for c in range(d.demand[a])]
    aux.add_nodes_from(top, bipartite=0)
    aux.add_nodes_from((('b', b) for b in b_sorted), bipartite=1)
    for a in sorted(d.a_side):
        nbrs = [int(b) for b in g.neighbors(a) if int(b) in b_set]
        for c in range(d.demand[a]):
            aux.add_edges_from((('a', a, c), ('b', b)) for b in nbrs)
    return aux, top


def _max_matching(g: Graph, d: StarDemand):
    aux, top = _replicated_graph(g, d)
    matching = nx.bipartite.hopcroft_karp_matching(aux, top_nodes=top)
    return aux, top, matching


def _hall_witness(aux: nx.Graph, top: list, matching: dict) -> FrozenSet[int]:
    """由 König 点覆盖得到违反 Hall 条件的 A 子集"""
    cover = nx.bipartite.to_vertex_cover(aux, matching, top_nodes=top)
    return frozenset(node[1] for node in top if node not in cover)


def check_hall_condition(g: Graph, d: StarDemand, mode: str = HallMode.MATCHING) -> HallCheck:
    """
    判定 |N(S) ∩ B| ≥ Σ_{s∈S} ℓ(s) 是否对所有 S ⊆ A 成立

    Parameters:
    -----------
    g : Graph
        图（只使用 A 与 B 之间的边）
    d : StarDemand
        需求
    mode : str, optional
        exhaustive（逐一检查子集，|A| ≤ 20）或 matching（复制图最大匹配）

    Returns:
    --------
    HallCheck
        判定结果，不成立时附带违反条件的 S

    Raises:
    -------
    PreconditionError
        穷举模式下 |A| 超过上限
    """
    if mode == HallMode.EXHAUSTIVE:
        a_list = sorted(d.a_side)
        if len(a_list) > EXHAUSTIVE_LIMIT:
            raise PreconditionError(f"穷举 Hall 判定要求 |A| ≤ {EXHAUSTIVE_LIMIT}，实际为 {len(a_list)}")
        b_index = {b: j for j, b in enumerate(sorted(d.b_side))}
        masks = []
        for a in a_list:
            m = 0
            for b in g.neighbors(a).tolist():
                if b in b_index:
                    m |= 1 << b_index[b]
            masks.append(m)

        size = 1 << len(a_list)
        nbr = [0] * size
        need = [0] * size
        for s in range(1, size):
            low = s & -s
            j = low.bit_length() - 1
            nbr[s] = nbr[s ^ low] | masks[j]
            need[s] = need[s ^ low] + d.demand[a_list[j]]
            if bin(nbr[s]).count('1') < need[s]:
                witness = frozenset(a_list[i] for i in range(len(a_list)) if s >> i & 1)
                return HallCheck(False, witness, mode)
        return HallCheck(True, None, mode)

    if mode != HallMode.MATCHING:
        raise ValueError(f"未知的 Hall 判定模式: {mode}")
    aux, top, matching = _max_matching(g, d)
    saturated = sum(1 for node in top if node in matching)
    if saturated == len(top):
        return HallCheck(True, None, mode)
    return HallCheck(False, _hall_witness(aux, top, matching), mode)


def find_star_packing(g: Graph, d: StarDemand, stage: str = Stage.STAR_PACKING) -> StarPacking:
    """
    求满足需求的不交星打包

    Parameters:
    -----------
    g : Graph
        图
    d : StarDemand
        需求

    Returns:
    --------
    StarPacking
        |stars(a)| = ℓ(a)，叶子两两不交且都与中心相邻

    Raises:
    -------
    HallViolationError
        不存在打包，witness 为违反 Hall 条件的集合
    """
    aux, top, matching = _max_matching(g, d)
    stars: Dict[int, set] = {a: set() for a in d.a_side}
    unmatched = 0
    for node in top:
        if node in matching:
            stars[node[1]].add(matching[node][1])
        else:
            unmatched += 1
    if unmatched:
        witness = _hall_witness(aux, top, matching)
        raise HallViolationError(stage, f"Hall 条件不成立，{unmatched} 个叶子无法匹配", witness,
                                 {'unmatched': unmatched, 'witness_size': len(witness),
                                  'a_side': len(d.a_side), 'b_side': len(d.b_side)})
    packing = StarPacking({a: frozenset(leaves) for a, leaves in sorted(stars.items())})
    ok, message = validate_star_packing(g, d, packing)
    if not ok:
        raise HallViolationError(stage, f"星打包未通过验证: {message}", frozenset())
    return packing


def validate_star_packing(g: Graph, d: StarDemand, packing: StarPacking) -> Tuple[bool, Optional[str]]:
    """
    独立验证星打包

    Returns:
    --------
    Tuple[bool, str]
        (是否合法, 第一个违例的描述)
    """
    if set(packing.stars) != set(d.a_side):
        return False, "星的中心集合与 A 不一致"
    seen = set()
    for a in sorted(packing.stars):
        leaves = packing.stars[a]
        if len(leaves) != d.demand[a]:
            return False, f"中心 {a} 有 {len(leaves)} 个叶子，需求为 {d.demand[a]}"
        for b in sorted(leaves):
            if b not in d.b_side:
                return False, f"叶子 {b} 不在 B 中"
            if b in seen:
                return False, f"叶子 {b} 被多个星使用"
            if not g.has_edge(a, b):
                return False, f"叶子 {b} 与中心 {a} 不相邻"
            seen.add(b)
    return True, None


def cross_degree_bound(g: Graph, a_side: Iterable[int], b_side: Iterable[int]) -> int:
    """A 与 B 之间二部图的最小度（两侧顶点都计入）"""
    a_list, b_list = sorted(set(a_side)), sorted(set(b_side))
    if not a_list or not b_list:
        return 0
    sub = g.adjacency[a_list][:, b_list]
    return int(min(sub.sum(axis=1).min(), sub.sum(axis=0).min()))


def beta_bound(lam: float, alpha: float, delta_max: int) -> float:
    """二部图最小度的比例下界 β = λα/(2Δ)"""
    return lam * alpha / (2 * delta_max)
