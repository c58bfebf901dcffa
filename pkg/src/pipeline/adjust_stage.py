#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
情形二第三步：删去一部分特殊对（各配一条完整的特殊路径），使各簇平衡
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Set, Tuple

from src.graph import Graph
from src.pipeline.ledger import AdjustmentLedger
from src.pipeline.template_paths import find_template_paths
from src.pipeline.types import ClusterState, SpecialPair, check_balance
from src.regularity import ClusterId
from src.utils.constants import Stage
from src.utils.exceptions import InvariantError, LedgerError, TemplatePathError
from src.utils.rng import derive_seed

logger = logging.getLogger(__name__)


@dataclass
class AdjustStageResult:
    """
    调整阶段的结果

    Attributes:
    -----------
    paths : Dict[int, Tuple[int, ...]]
        被删特殊对编号 → 内部顶点序列
    remaining : List[SpecialPair]
        留给圈打包阶段的特殊对
    ledger : AdjustmentLedger
        账本
    consumed : Set[int]
        内部顶点
    details : Dict[str, Any]
        账本与模板统计
    """
    paths: Dict[int, Tuple[int, ...]]
    remaining: List[SpecialPair]
    ledger: AdjustmentLedger
    consumed: Set[int]
    details: Dict[str, Any] = field(default_factory=dict)


def stage_adjust_clusters(pairs: List[SpecialPair], state: ClusterState, g: Graph, r4: Graph, k: int,
                          seed: int, xi: float = 0.1, rho: Optional[float] = None, delta: float = 0.0,
                          enforce_gamma: bool = False,
                          cluster_sizes: Optional[Mapping[ClusterId, int]] = None) -> AdjustStageResult:
    """
    计算账本，按模板删去特殊对，使每个簇满足 2|W_C| = (k−1)|X_C|

    Parameters:
    -----------
    pairs : List[SpecialPair]
        端点修正后的特殊对
    state : ClusterState
        各簇空闲顶点，原地更新
    g : Graph
        宿主图
    r4 : Graph
        第四阶段随机边（union 模式下为 G ∪ R₄）
    k : int
        当前特殊路径长度（奇数）
    seed : int
        随机种子
    xi : float, optional
        模板路径搜索的松弛比例
    rho : float, optional
        簇大小比，给出 γ = ρ⁻²/3
    delta : float, optional
        匹配诊断下界中的 δ
    enforce_gamma : bool, optional
        为真时 γ 违例使阶段失败，否则只记录
    cluster_sizes : Mapping[ClusterId, int], optional
        各簇完整大小

    Returns:
    --------
    AdjustStageResult
        被删特殊对的路径与剩余特殊对

    Raises:
    -------
    LedgerError
        账本不可行，或 enforce_gamma 时出现 γ 违例
    TemplatePathError
        某个模板的路径不足
    """
    z_sizes = Counter(pair.home for pair in pairs)
    ledger = AdjustmentLedger.compute(z_sizes, state.w_sizes(), k, rho=rho, cluster_sizes=cluster_sizes)
    ledger.check_feasible()

    violations = ledger.gamma_violations()
    if violations:
        logger.warning(f"{len(violations)} 个簇的消耗超过 (1−γ) 比例")
        if enforce_gamma:
            raise LedgerError(Stage.ADJUST_CLUSTERS, f"{len(violations)} 个簇违反 γ 下界",
                              {'gamma': ledger.gamma, 'violations': violations})

    templates = ledger.templates()
    by_home: Dict[int, List[SpecialPair]] = {}
    for pair in pairs:
        by_home.setdefault(pair.home, []).append(pair)

    paths: Dict[int, Tuple[int, ...]] = {}
    consumed: Set[int] = set()
    reports = []
    for t_index, (template, count) in enumerate(sorted(templates.items(), key=lambda item: item[0].cluster_sequence)):
        template.validate(k)
        candidates = [p for p in by_home.get(template.home, []) if p.index not in paths]
        result = find_template_paths(template, count, candidates, state.w, g, r4, xi,
                                     derive_seed(seed, 'adjust', t_index), delta=delta)
        reports.append(result.diagnostics)
        if len(result.paths) < count:
            raise TemplatePathError(Stage.ADJUST_CLUSTERS,
                                    f"模板需要 {count} 条路径，只找到 {len(result.paths)} 条",
                                    result.diagnostics)
        for pair, interior in result.paths:
            trace = tuple(state.membership[v] for v in interior)
            if trace != template.slots:
                raise InvariantError(f"特殊对 {pair.index} 的路径簇序列 {trace} 与模板不符")
            state.remove(interior)
            consumed.update(interior)
            paths[pair.index] = interior

    remaining = [p for p in pairs if p.index not in paths]
    broken = check_balance(remaining, state, k)
    if broken:
        raise InvariantError(f"调整后平衡恒等式不成立: {broken}")

    details = {
        'ledger': ledger.to_dict(),
        'templates': len(templates),
        'removed_pairs': len(paths),
        'remaining_pairs': len(remaining),
        'below_matching_bound': sum(r['below_bound'] for r in reports),
    }
    logger.debug(f"簇调整完成: 删去 {len(paths)} 个特殊对，剩余 {len(remaining)} 个")
    return AdjustStageResult(paths, remaining, ledger, consumed, details)
