#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
流水线共享的数据类型
"""

import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

from src.regularity import ClusterId, flip
from src.utils.constants import StageStatus
from src.utils.exceptions import InvariantError, TemplatePathError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpecialPair:
    """
    特殊对：一条被删去内部的裸路径的两个端点

    Attributes:
    -----------
    index : int
        路径编号
    tree_path : Tuple[int, ...]
        树中的路径 t_0..t_k
    x_trail, y_trail : Tuple[int, ...]
        从 x（或 y）出发已确定的宿主顶点序列，末端为当前端点
    home : int, optional
        端点修正后两端所在的簇对编号
    """
    index: int
    tree_path: Tuple[int, ...]
    x_trail: Tuple[int, ...]
    y_trail: Tuple[int, ...]
    home: Optional[int] = None

    @property
    def x(self) -> int:
        return self.x_trail[0]

    @property
    def y(self) -> int:
        return self.y_trail[0]

    @property
    def end_x(self) -> int:
        return self.x_trail[-1]

    @property
    def end_y(self) -> int:
        return self.y_trail[-1]

    @property
    def remaining_length(self) -> int:
        """两个当前端点之间还需要的边数"""
        return len(self.tree_path) - len(self.x_trail) - len(self.y_trail) + 1

    def bridged(self, x_step: Tuple[int, int], y_step: Tuple[int, int], home: int) -> 'SpecialPair':
        return replace(self, x_trail=self.x_trail + tuple(x_step),
                       y_trail=self.y_trail + tuple(y_step), home=home)

    def host_path(self, interior: Iterable[int]) -> Tuple[int, ...]:
        """x 侧轨迹 + 内部顶点 + 反向的 y 侧轨迹"""
        return self.x_trail + tuple(interior) + tuple(reversed(self.y_trail))


@dataclass(frozen=True)
class Template:
    """
    模板：特殊路径必须依次经过的簇序列 X_i, W_{i1}, ..., W_{i(k−1)}, X_{ī}

    Attributes:
    -----------
    home : int
        端点所在的簇对编号
    cluster_sequence : Tuple[ClusterId, ...]
        长度 k+1 的簇序列
    """
    home: int
    cluster_sequence: Tuple[ClusterId, ...]

    @property
    def k(self) -> int:
        return len(self.cluster_sequence) - 1

    @property
    def slots(self) -> Tuple[ClusterId, ...]:
        """内部位置的簇 W_{i1}..W_{i(k−1)}"""
        return self.cluster_sequence[1:-1]

    @property
    def good(self) -> bool:
        seq = self.cluster_sequence
        return seq[-1] == flip(seq[0]) and seq[1] == flip(seq[0]) and seq[-2] == seq[0]

    def validate(self, k: int) -> bool:
        """
        Raises:
        -------
        TemplatePathError
            长度不是 k+1 或端点不是伙伴簇
        """
        if len(self.cluster_sequence) != k + 1:
            raise TemplatePathError('adjust_clusters', f"模板长度 {len(self.cluster_sequence)} 不是 {k + 1}")
        first, last = self.cluster_sequence[0], self.cluster_sequence[-1]
        if first != (self.home, 1) or last != (self.home, 2):
            raise TemplatePathError('adjust_clusters', f"模板端点 {first}, {last} 不是簇对 {self.home}")
        return True


class ClusterState:
    """
    各簇的剩余空闲顶点 W_C

    Parameters:
    -----------
    membership : Mapping[int, ClusterId]
        顶点 → 所在簇
    free : Iterable[int]
        尚未使用的顶点
    """
    def __init__(self, membership: Mapping[int, ClusterId], free: Iterable[int]):
        self.membership = dict(membership)
        self.w: Dict[ClusterId, Set[int]] = {cid: set() for cid in sorted(set(self.membership.values()))}
        for v in free:
            self.w[self.membership[v]].add(v)

    def cluster_ids(self) -> List[ClusterId]:
        return sorted(self.w)

    def remove(self, vertices: Iterable[int]):
        for v in vertices:
            cid = self.membership[v]
            if v not in self.w[cid]:
                raise InvariantError(f"顶点 {v} 不在空闲集合 W{cid} 中")
            self.w[cid].discard(v)

    def free_vertices(self) -> Set[int]:
        result = set()
        for members in self.w.values():
            result |= members
        return result

    def w_sizes(self) -> Dict[ClusterId, int]:
        return {cid: len(members) for cid, members in sorted(self.w.items())}

    def total_free(self) -> int:
        return sum(len(members) for members in self.w.values())


def x_sizes(pairs: Iterable[SpecialPair], cluster_ids: Iterable[ClusterId]) -> Dict[ClusterId, int]:
    """修正后各簇 X_C 的大小：x 端在 (i,1)，y 端在 (i,2)"""
    sizes = {cid: 0 for cid in cluster_ids}
    for pair in pairs:
        sizes[(pair.home, 1)] += 1
        sizes[(pair.home, 2)] += 1
    return sizes


def check_balance(pairs: Iterable[SpecialPair], state: ClusterState, k: int) -> Dict[ClusterId, Tuple[int, int]]:
    """
    检查每个簇的平衡恒等式 2|W_C| = (k−1)|X_C|

    Returns:
    --------
    Dict[ClusterId, Tuple[int, int]]
        不满足的簇 → (2|W_C|, (k−1)|X_C|)，全部满足时为空
    """
    xs = x_sizes(pairs, state.cluster_ids())
    broken = {}
    for cid, w_size in state.w_sizes().items():
        if 2 * w_size != (k - 1) * xs[cid]:
            broken[cid] = (2 * w_size, (k - 1) * xs[cid])
    return broken


class ConsumptionLedger:
    """
    各阶段消耗的宿主顶点

    阶段之间两两不交，全部阶段的并集必须恰为 [n]。
    """
    def __init__(self, n: int):
        self.n = n
        self._by_stage: Dict[str, Set[int]] = {}
        self._all: Set[int] = set()

    def record(self, stage: str, vertices: Iterable[int]):
        """
        Raises:
        -------
        InvariantError
            与之前阶段消耗的顶点相交
        """
        batch = set(int(v) for v in vertices)
        overlap = batch & self._all
        if overlap:
            raise InvariantError(f"阶段 {stage} 重复使用了顶点 {sorted(overlap)[:5]}")
        self._by_stage.setdefault(stage, set()).update(batch)
        self._all |= batch

    def consumed(self, stage: str) -> int:
        return len(self._by_stage.get(stage, ()))

    def counts(self) -> Dict[str, int]:
        return {stage: len(vs) for stage, vs in self._by_stage.items()}

    def assert_complete(self):
        """
        Raises:
        -------
        InvariantError
            并集不等于 [n]
        """
        if self._all != set(range(self.n)):
            missing = sorted(set(range(self.n)) - self._all)
            raise InvariantError(f"有 {len(missing)} 个顶点未被任何阶段使用，例如 {missing[:5]}")


@dataclass
class StageOutcome:
    """单个阶段的结果"""
    stage: str
    status: str = StageStatus.OK
    consumed: int = 0
    wall_ms: float = 0.0
    message: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class TrialReport:
    """
    一次试验的完整报告

    success 为真时 valid 必须为真（验证器在流水线末尾独立重跑）。
    """
    n: int
    alpha: float
    k: int
    c: float
    seed: int
    phase_split: List[float] = field(default_factory=list)
    delta_max: Optional[int] = None
    tree_shape: Optional[str] = None
    host: Optional[str] = None
    case: Optional[str] = None
    stages: List[StageOutcome] = field(default_factory=list)
    rho: Optional[float] = None
    q: Optional[int] = None
    constants: Optional[Dict[str, float]] = None
    success: bool = False
    valid: bool = False
    failed_stage: Optional[str] = None
    wall_ms: float = 0.0
    cell: Optional[int] = None
    trial: Optional[int] = None
    config: Dict[str, Any] = field(default_factory=dict)

    def stage(self, name: str) -> Optional[StageOutcome]:
        for outcome in self.stages:
            if outcome.stage == name:
                return outcome
        return None

    def consumption(self) -> Dict[str, int]:
        return {outcome.stage: outcome.consumed for outcome in self.stages}

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['consumption'] = self.consumption()
        return data
