#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
端到端嵌入流水线

叶子数不少于 λn 时走叶子情形（删叶子、嵌入、星打包），否则走裸路径情形：
划分 → 抽取裸路径 → 嵌入森林 → 修正端点 → 调整簇大小 → 圈打包 → 组装 → 验证。
"""

import math
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from src.base.base_runner import BaseRunner
from src.embedding import Embedding, verify_embedding
from src.graph import Graph, PerturbationPlan, graph_union, min_degree, union_all
from src.matching import complete_case1
from src.pipeline.adjust_stage import stage_adjust_clusters
from src.pipeline.cycle_stage import stage_complete_cycles
from src.pipeline.endpoint_stage import stage_fix_endpoints
from src.pipeline.forest_stage import (
    certify_cluster_pairs, special_sets, stage_embed_forest, stage_pairs_for_certification,
)
from src.pipeline.types import ConsumptionLedger, StageOutcome, TrialReport
from src.regularity import ClusterPartition, RegularityParams, StageConstants, build_partition
from src.tree import Tree, count_leaves, extract_bare_paths
from src.utils.config import Config
from src.utils.constants import CaseName, DestinationRule, ErrorMessage, PhaseMode, Stage, StageStatus
from src.utils.exceptions import ConfigError, PreconditionError, StageError
from src.utils.performance_cache import PerformanceCache, get_cache
from src.utils.rng import derive_seed

LEAF_STAGES = (Stage.REMOVE_LEAVES, Stage.ALMOST_SPANNING, Stage.STAR_PACKING, Stage.VERIFY)
PATH_STAGES = (Stage.PARTITION, Stage.BARE_PATHS, Stage.EMBED_FOREST, Stage.FIX_ENDPOINTS,
               Stage.ADJUST_CLUSTERS, Stage.COMPLETE_CYCLES, Stage.ASSEMBLE, Stage.VERIFY)


@dataclass(frozen=True)
class PipelineConfig:
    """
    流水线参数

    k 是裸路径长度；端点修正后变为 k − 4，必须仍是 ≥ 5 的奇数。
    """
    alpha: float = 0.35
    leaf_fraction: float = 0.05
    k: int = 9
    phase_split: Tuple[float, ...] = (0.25, 0.25, 0.25, 0.25)
    xi: float = 0.1
    cycle_rounds: int = 25
    cycle_augment_rounds: int = 3
    phase_mode: str = PhaseMode.RANDOM
    destination_rule: str = DestinationRule.BALANCED
    enforce_gamma: bool = False
    certify_stages: bool = False
    epsilon: float = 0.25
    delta: float = 0.15
    witness_budget: int = 2000
    cluster_graph_budget: int = 200
    target_cluster_size: int = 40
    alpha_prime_factor: float = 0.25
    max_growth_factor: float = 2.0
    min_free_per_cluster: int = 32
    retry_factor: int = 10

    def __post_init__(self):
        object.__setattr__(self, 'phase_split', tuple(float(s) for s in self.phase_split))
        self.validate()

    def validate(self) -> bool:
        """
        Raises:
        -------
        ConfigError
            参数越界
        """
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha 必须在 (0, 1) 内，实际为 {self.alpha}")
        if not 0 < self.leaf_fraction < 1:
            raise ConfigError(f"leaf_fraction 必须在 (0, 1) 内，实际为 {self.leaf_fraction}")
        if self.k % 2 == 0 or self.k - 4 < 5:
            raise ConfigError(f"k 必须为奇数且 k − 4 ≥ 5，实际为 {self.k}")
        if not 0 <= self.xi < 1:
            raise ConfigError(f"xi 必须在 [0, 1) 内，实际为 {self.xi}")
        if min(self.cycle_rounds, self.cycle_augment_rounds, self.retry_factor, self.target_cluster_size,
               self.min_free_per_cluster) < 1:
            raise ConfigError("cycle_rounds、cycle_augment_rounds、retry_factor、target_cluster_size、"
                              "min_free_per_cluster 必须为正")
        if self.phase_mode not in (PhaseMode.RANDOM, PhaseMode.UNION):
            raise ConfigError(f"未知的 phase_mode: {self.phase_mode}")
        if self.destination_rule not in (DestinationRule.ROUND_ROBIN, DestinationRule.BALANCED):
            raise ConfigError(f"未知的 destination_rule: {self.destination_rule}")
        if len(self.phase_split) != 4 or any(s < 0 for s in self.phase_split) or sum(self.phase_split) <= 0:
            raise ConfigError("phase_split 必须是 4 个非负且不全为零的比例")
        if not 0 < self.epsilon < 1 or not 0 < self.delta < 1:
            raise ConfigError(f"epsilon、delta 必须在 (0, 1) 内，实际为 {self.epsilon}、{self.delta}")
        if self.witness_budget < 1 or self.cluster_graph_budget < 1:
            raise ConfigError("witness_budget、cluster_graph_budget 必须为正")
        return True

    @classmethod
    def from_config(cls, config: Config) -> 'PipelineConfig':
        """从 Config 的 pipeline、regularity、almost_spanning 三节读取"""
        pipeline = config.get_section('pipeline')
        regularity = config.get_section('regularity')
        values = {key: pipeline[key] for key in (
            'alpha', 'leaf_fraction', 'k', 'phase_split', 'xi', 'cycle_rounds', 'cycle_augment_rounds', 'phase_mode',
            'destination_rule', 'enforce_gamma', 'certify_stages') if key in pipeline}
        values.update({key: regularity[key] for key in (
            'epsilon', 'delta', 'witness_budget', 'cluster_graph_budget', 'target_cluster_size',
            'alpha_prime_factor', 'max_growth_factor', 'min_free_per_cluster') if key in regularity})
        values['retry_factor'] = config.get('almost_spanning.retry_factor', cls.retry_factor)
        return cls(**values)

    def cluster_target(self, n: int) -> int:
        """
        划分的目标簇大小

        端点修正后空闲顶点约为 (n // 2(k − 1))·(k − 5) 个；簇对数受限于
        每个簇至少分到 min_free_per_cluster 个空闲顶点。
        """
        free = (n // (2 * (self.k - 1))) * (self.k - 5)
        pairs = max(1, free // (2 * self.min_free_per_cluster))
        return max(self.target_cluster_size, math.ceil(n / (2 * pairs)))

    def regularity_params(self) -> RegularityParams:
        return RegularityParams(self.epsilon, self.delta, self.witness_budget)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['phase_split'] = list(self.phase_split)
        return data


class EmbeddingPipeline(BaseRunner):
    """
    生成树嵌入流水线

    每次 run 都是一次独立的试验：阶段失败写入 TrialReport，不向外抛出；
    结构不变量被破坏时抛出 InvariantError。
    """
    def __init__(self, pipeline_config: Optional[PipelineConfig] = None, config: Optional[Config] = None):
        super().__init__(config)
        self.cfg = pipeline_config or PipelineConfig.from_config(self.config)

    def partition_for(self, host: Graph, seed: int) -> ClusterPartition:
        """为宿主图构造簇划分；同一宿主图、种子与参数只构造一次"""
        cfg = self.cfg
        target = cfg.cluster_target(host.n)
        key = PerformanceCache.make_key('partition', host.fingerprint(), seed, cfg.alpha,
                                        target, cfg.epsilon, cfg.delta, cfg.witness_budget,
                                        cfg.alpha_prime_factor, cfg.cluster_graph_budget, cfg.max_growth_factor)
        return get_cache().get_or_compute(key, lambda: build_partition(
            host, cfg.alpha, target, cfg.regularity_params(), seed=derive_seed(seed, 'partition'),
            alpha_prime_factor=cfg.alpha_prime_factor, cluster_graph_budget=cfg.cluster_graph_budget,
            max_growth_factor=cfg.max_growth_factor))

    @contextmanager
    def _stage(self, report: TrialReport, name: str):
        outcome = StageOutcome(name)
        report.stages.append(outcome)
        start = time.perf_counter()
        try:
            yield outcome
        except StageError as exc:
            outcome.stage = exc.stage
            outcome.status = StageStatus.FAILED
            outcome.message = exc.message
            outcome.details.update(exc.details)
            self.logger.info(f"阶段 {exc.stage} 失败: {exc.message}")
            raise
        finally:
            outcome.wall_ms = (time.perf_counter() - start) * 1000.0

    def _phase(self, host: Graph, phases: Sequence[Graph], index: int) -> Graph:
        if self.cfg.phase_mode == PhaseMode.UNION:
            return graph_union(host, phases[index])
        return phases[index]

    def run(self, tree: Tree, host: Graph, plan: PerturbationPlan, seed: int,
            partition: Optional[ClusterPartition] = None,
            partition_seed: Optional[int] = None) -> Tuple[Optional[Embedding], TrialReport]:
        """
        执行一次试验

        Parameters:
        -----------
        tree : Tree
            待嵌入的生成树
        host : Graph
            稠密宿主图，最小度 ≥ αn
        plan : PerturbationPlan
            随机边的分阶段计划
        seed : int
            试验种子
        partition : ClusterPartition, optional
            预先构造的簇划分；缺省时在裸路径情形中现场构造
        partition_seed : int, optional
            现场构造划分所用的种子，默认为 seed（实验中取单元种子，使划分按宿主图固定）

        Returns:
        --------
        Tuple[Optional[Embedding], TrialReport]
            成功时为通过验证的嵌入，失败时为 None；报告记录每个阶段

        Raises:
        -------
        PreconditionError
            顶点数不一致或宿主图最小度不足
        """
        cfg = self.cfg
        n = tree.n
        start = time.perf_counter()
        c = sum(plan.budgets) if plan.budgets else sum(plan.phase_densities) * n
        report = TrialReport(n=n, alpha=cfg.alpha, k=cfg.k, c=c, seed=seed,
                             phase_split=list(cfg.phase_split), config=cfg.to_dict())

        if host.n != n:
            raise PreconditionError(ErrorMessage.VERTEX_COUNT_MISMATCH.format(n, host.n))
        if n > 1 and min_degree(host) < cfg.alpha * n - 1e-9:
            raise PreconditionError(ErrorMessage.MIN_DEGREE_VIOLATED.format(min_degree(host), cfg.alpha, n))
        report.stages.append(StageOutcome(Stage.PRECONDITION))

        phases = plan.sample_phases(n)
        if n == 1:
            embedding = Embedding({0: 0})
            report.case = CaseName.LEAVES
        else:
            leaves = count_leaves(tree)
            report.case = CaseName.LEAVES if leaves >= cfg.leaf_fraction * n else CaseName.BARE_PATHS
            report.stages.append(StageOutcome(Stage.DISPATCH, details={
                'leaves': leaves, 'threshold': cfg.leaf_fraction * n, 'case': report.case}))
            self.logger.debug(f"叶子数 {leaves}，走 {report.case} 情形")
            sequence = LEAF_STAGES if report.case == CaseName.LEAVES else PATH_STAGES
            try:
                if report.case == CaseName.LEAVES:
                    embedding = self._leaf_case(report, tree, host, phases, seed)
                else:
                    embedding = self._path_case(report, tree, host, phases, seed, partition,
                                                 seed if partition_seed is None else partition_seed)
            except StageError as exc:
                report.failed_stage = exc.stage
                done = {outcome.stage for outcome in report.stages}
                for name in sequence:
                    if name not in done:
                        report.stages.append(StageOutcome(name, StageStatus.SKIPPED))
                report.wall_ms = (time.perf_counter() - start) * 1000.0
                return None, report

        with self._stage(report, Stage.VERIFY) as outcome:
            full = union_all([host] + list(phases))
            verdict = verify_embedding(tree, full, embedding)
            spanning = embedding.used == frozenset(range(n))
            report.valid = bool(verdict) and spanning
            outcome.details = {'kind': verdict.kind, 'violation': verdict.violation, 'spanning': spanning}
            if not report.valid:
                outcome.status = StageStatus.FAILED
                report.failed_stage = Stage.VERIFY
                self.logger.error(f"嵌入未通过验证: {verdict.violation or '不是生成嵌入'}")
        report.success = report.valid
        report.wall_ms = (time.perf_counter() - start) * 1000.0
        self.results['last_report'] = report
        return (embedding if report.success else None), report

    def _leaf_case(self, report: TrialReport, tree: Tree, host: Graph, phases: Sequence[Graph],
                   seed: int) -> Embedding:
        cfg = self.cfg
        with self._stage(report, Stage.REMOVE_LEAVES) as outcome:
            result = complete_case1(tree, host, phases, cfg.leaf_fraction, derive_seed(seed, 'case1'),
                                    retry_factor=cfg.retry_factor, phase_mode=cfg.phase_mode)
            outcome.details = {'removed_leaves': result.details['removed_leaves']}
        report.stages.append(StageOutcome(Stage.ALMOST_SPANNING, consumed=result.details['pruned_size'],
                                          details={'pruned_size': result.details['pruned_size']}))
        report.stages.append(StageOutcome(Stage.STAR_PACKING, consumed=result.details['b_side'],
                                          details={key: result.details[key] for key in
                                                   ('a_side', 'b_side', 'min_cross_degree')}))
        return result.embedding

    def _path_case(self, report: TrialReport, tree: Tree, host: Graph, phases: Sequence[Graph], seed: int,
                   partition: Optional[ClusterPartition], partition_seed: int) -> Embedding:
        cfg = self.cfg
        n = tree.n
        ledger = ConsumptionLedger(n)

        with self._stage(report, Stage.PARTITION) as outcome:
            if partition is None:
                partition = self.partition_for(host, partition_seed)
            report.rho, report.q = partition.rho, partition.q
            outcome.details = {'q': partition.q, 'rho': partition.rho}

        with self._stage(report, Stage.BARE_PATHS) as outcome:
            decomp = extract_bare_paths(tree, cfg.k)
            budget = min(len(decomp), n // (2 * (cfg.k - 1)))
            outcome.details = {'available': len(decomp), 'used': budget}
            if budget < 1:
                raise StageError(Stage.BARE_PATHS, f"没有可用的长度 {cfg.k} 裸路径", outcome.details)
            decomp = decomp.restrict(budget)

        constants = StageConstants.chain(cfg.epsilon, cfg.delta, partition.rho, cfg.k - 4)
        report.constants = constants.to_dict()

        with self._stage(report, Stage.EMBED_FOREST) as outcome:
            forest = stage_embed_forest(decomp, self._phase(host, phases, 1), partition,
                                        derive_seed(seed, 'embed_forest'), cfg.retry_factor)
            ledger.record(Stage.EMBED_FOREST, forest.embedding.used)
            outcome.consumed = ledger.consumed(Stage.EMBED_FOREST)
            outcome.details = dict(forest.details)
            if cfg.certify_stages:
                outcome.details['certification'] = certify_cluster_pairs(
                    host, stage_pairs_for_certification(forest.specials, forest.state), constants.eps2,
                    constants.delta2, cfg.witness_budget, derive_seed(seed, 'certify', 2))
        state = forest.state

        with self._stage(report, Stage.FIX_ENDPOINTS) as outcome:
            fixed = stage_fix_endpoints(forest.pairs, state, host, self._phase(host, phases, 2), cfg.k,
                                        derive_seed(seed, 'fix_endpoints'), cfg.destination_rule)
            ledger.record(Stage.FIX_ENDPOINTS, fixed.consumed)
            outcome.consumed = ledger.consumed(Stage.FIX_ENDPOINTS)
            outcome.details = dict(fixed.details)
            if cfg.certify_stages:
                specials = special_sets(fixed.pairs, state.membership)
                outcome.details['certification'] = certify_cluster_pairs(
                    host, stage_pairs_for_certification(specials, state), constants.eps3, constants.delta3,
                    cfg.witness_budget, derive_seed(seed, 'certify', 3))

        with self._stage(report, Stage.ADJUST_CLUSTERS) as outcome:
            adjusted = stage_adjust_clusters(fixed.pairs, state, host, self._phase(host, phases, 3), fixed.k,
                                             derive_seed(seed, 'adjust_clusters'), xi=cfg.xi,
                                             rho=partition.rho, delta=constants.delta4,
                                             enforce_gamma=cfg.enforce_gamma, cluster_sizes=partition.sizes())
            ledger.record(Stage.ADJUST_CLUSTERS, adjusted.consumed)
            outcome.consumed = ledger.consumed(Stage.ADJUST_CLUSTERS)
            outcome.details = dict(adjusted.details)

        with self._stage(report, Stage.COMPLETE_CYCLES) as outcome:
            cycles = stage_complete_cycles(adjusted.remaining, state, host, fixed.k,
                                           derive_seed(seed, 'complete_cycles'), cfg.cycle_rounds,
                                           cfg.cycle_augment_rounds)
            ledger.record(Stage.COMPLETE_CYCLES, cycles.consumed)
            outcome.consumed = ledger.consumed(Stage.COMPLETE_CYCLES)
            outcome.details = dict(cycles.details)

        with self._stage(report, Stage.ASSEMBLE) as outcome:
            interiors = dict(adjusted.paths)
            interiors.update(cycles.paths)
            mapping = dict(forest.embedding.mapping)
            for pair in fixed.pairs:
                host_path = pair.host_path(interiors[pair.index])
                if len(host_path) != len(pair.tree_path):
                    raise StageError(Stage.ASSEMBLE, f"特殊对 {pair.index} 的宿主路径长度不符",
                                     {'pair': pair.index, 'length': len(host_path)})
                for tree_vertex, host_vertex in zip(pair.tree_path[1:-1], host_path[1:-1]):
                    mapping[tree_vertex] = host_vertex
            ledger.assert_complete()
            outcome.details = {'stage_consumption': ledger.counts()}
        return Embedding(mapping)


def embed_spanning_tree(t: Tree, host: Graph, plan: PerturbationPlan, cfg: Optional[PipelineConfig] = None,
                        seed: int = 0,
                        partition: Optional[ClusterPartition] = None,
                        partition_seed: Optional[int] = None) -> Tuple[Optional[Embedding], TrialReport]:
    """
    把生成树 t 嵌入 host ∪ R

    Parameters:
    -----------
    t : Tree
        生成树，顶点数与 host 相同
    host : Graph
        最小度 ≥ αn 的宿主图
    plan : PerturbationPlan
        随机边计划
    cfg : PipelineConfig, optional
        流水线参数，默认取 Config 的默认值
    seed : int, optional
        试验种子
    partition : ClusterPartition, optional
        预先构造的簇划分
    partition_seed : int, optional
        现场构造划分所用的种子，默认为 seed

    Returns:
    --------
    Tuple[Optional[Embedding], TrialReport]
        成功时的嵌入与试验报告
    """
    return EmbeddingPipeline(cfg).run(t, host, plan, seed, partition, partition_seed)
