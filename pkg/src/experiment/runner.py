#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
蒙特卡洛实验驱动

每个 (n, c) 单元固定一张宿主图（由单元种子生成），每次试验独立生成树、
随机边与流水线随机性，种子由 (主种子, 单元编号, 试验编号, 用途) 派生。
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, replace
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from tqdm import tqdm

from src.base.base_runner import BaseRunner
from src.embedding import verify_embedding
from src.experiment.experiment_config import ExperimentConfig
from src.export import CsvExporter, ExcelExporter, JsonExporter
from src.graph import Graph, PerturbationPlan, generate_dense_host, parse_host_spec, union_all
from src.pipeline import EmbeddingPipeline, PipelineConfig, TrialReport
from src.tree import generate_bounded_tree
from src.utils.config import Config
from src.utils.constants import ColumnName, FilePath, RunMode
from src.utils.exceptions import InvariantError, PartitionError
from src.utils.performance_cache import PerformanceCache, get_cache
from src.utils.rng import derive_seed
from src.utils.stats_processor import StatsProcessor

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = [ColumnName.N, ColumnName.ALPHA, ColumnName.DELTA_MAX, ColumnName.TREE_SHAPE, ColumnName.K,
                 ColumnName.C, 'cell', 'trial', 'seed', 'case', 'success', 'valid', 'failed_stage', 'wall_ms']


@dataclass(frozen=True)
class TrialTask:
    """一次试验所需的全部输入（可在进程之间传递）"""
    cell: int
    trial: int
    n: int
    c: float
    master_seed: int
    host_name: str
    host: Graph
    pipeline: PipelineConfig
    delta_max: int
    tree_shape: str
    tree_path: Optional[str] = None
    subdivision_length: int = 12

    @property
    def seed(self) -> int:
        return derive_seed(self.master_seed, self.cell, self.trial)

    @property
    def cell_seed(self) -> int:
        return derive_seed(self.master_seed, self.cell)


def run_trial(task: TrialTask) -> TrialReport:
    """
    运行单次试验（模块级函数，供进程池调用）

    Returns:
    --------
    TrialReport
        试验报告；成功时已在驱动层重新验证

    Raises:
    -------
    InvariantError
        报告成功但驱动层验证不通过
    """
    tree = generate_bounded_tree(task.n, task.delta_max, task.tree_shape, seed=derive_seed(task.seed, 'tree'),
                                 path=task.tree_path, subdivision_length=task.subdivision_length)
    plan = PerturbationPlan.from_budget(task.c, task.n, task.pipeline.phase_split, derive_seed(task.seed, 'phases'))
    embedding, report = EmbeddingPipeline(task.pipeline).run(tree, task.host, plan, derive_seed(task.seed, 'pipeline'),
                                                             partition_seed=task.cell_seed)
    if report.success:
        full = union_all([task.host] + plan.sample_phases(task.n))
        verdict = verify_embedding(tree, full, embedding)
        if not verdict or embedding.used != frozenset(range(task.n)):
            raise InvariantError(f"单元 {task.cell} 试验 {task.trial}: 驱动层验证失败 {verdict.violation}")
    report.delta_max = task.delta_max
    report.tree_shape = task.tree_shape
    report.host = task.host_name
    report.cell = task.cell
    report.trial = task.trial
    report.c = task.c
    return report


class ExperimentRunner(BaseRunner):
    """
    实验运行器

    Parameters:
    -----------
    experiment : ExperimentConfig
        实验参数
    config : Config, optional
        全局配置（流水线、正则性等参数）
    show_progress : bool, optional
        是否显示 tqdm 进度条
    """
    def __init__(self, experiment: ExperimentConfig, config: Optional[Config] = None, show_progress: bool = True):
        super().__init__(config)
        self.pipeline_config = replace(PipelineConfig.from_config(self.config), alpha=experiment.alpha,
                                       k=experiment.k)
        experiment.validate(self.pipeline_config.phase_split)
        self.experiment = experiment
        self.show_progress = show_progress

    def host_for(self, cell: int, n: int) -> Graph:
        """单元的宿主图（按单元种子生成并缓存）"""
        exp = self.experiment
        spec = parse_host_spec(exp.host)
        seed = derive_seed(exp.seed, cell, 'host')
        key = PerformanceCache.make_key('host', str(spec), n, exp.alpha, seed)
        return get_cache().get_or_compute(key, lambda: generate_dense_host(
            spec, n, exp.alpha, seed, max_attempts=self.config.get('graph.gnp_max_attempts', 50)))

    def tasks(self, cells: Sequence[Tuple[int, int, float]]) -> List[TrialTask]:
        exp = self.experiment
        shape, path = exp.shape
        result = []
        for cell, n, c in cells:
            host = self.host_for(cell, n)
            for trial in range(exp.trials):
                result.append(TrialTask(cell, trial, n, c, exp.seed, exp.host, host, self.pipeline_config,
                                        exp.delta_max, shape, path,
                                        self.config.get('tree.subdivision_length', 12)))
        return result

    def execute(self, tasks: Sequence[TrialTask]) -> List[TrialReport]:
        """运行全部试验，按 (单元, 试验) 排序返回"""
        workers = self.experiment.workers
        reports: List[TrialReport] = []
        progress = tqdm(total=len(tasks), desc="试验", unit="trial", disable=not self.show_progress or not tasks)
        if workers <= 1 or len(tasks) <= 1:
            for task in tasks:
                reports.append(run_trial(task))
                progress.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {executor.submit(run_trial, task): task for task in tasks}
                for future in as_completed(futures):
                    reports.append(future.result())
                    progress.update(1)
        progress.close()
        reports.sort(key=lambda r: (r.cell, r.trial))
        return reports

    def trial_frame(self, reports: Sequence[TrialReport]) -> pd.DataFrame:
        exp = self.experiment
        rows = []
        for report in reports:
            rows.append({
                ColumnName.N: report.n, ColumnName.ALPHA: exp.alpha, ColumnName.DELTA_MAX: exp.delta_max,
                ColumnName.TREE_SHAPE: exp.tree_shape, ColumnName.K: exp.k, ColumnName.C: report.c,
                'cell': report.cell, 'trial': report.trial, 'seed': report.seed, 'case': report.case,
                'success': bool(report.success), 'valid': bool(report.valid),
                'failed_stage': report.failed_stage, 'wall_ms': report.wall_ms,
            })
        return pd.DataFrame(rows, columns=TRIAL_COLUMNS)

    def run_cells(self, cells: Sequence[Tuple[int, int, float]]) -> Tuple[pd.DataFrame, pd.DataFrame, List[TrialReport]]:
        """
        运行若干单元

        Returns:
        --------
        Tuple[pd.DataFrame, pd.DataFrame, List[TrialReport]]
            (试验明细, 单元汇总, 试验报告)
        """
        reports = self.execute(self.tasks(cells))
        trials = self.trial_frame(reports)
        summary = StatsProcessor.summarize_trials(trials, self.experiment.record_timing)
        return trials, summary, reports

    def probe(self, n: int, c: float) -> Tuple[int, int]:
        """标定探测：在 (n, c) 上运行 trials 次试验，返回 (成功次数, 试验次数)"""
        cell = next((index for index, cell_n, cell_c in self.experiment.cells() if cell_n == n and cell_c == c), None)
        if cell is None:
            raise ValueError(f"(n = {n}, c = {c}) 不在实验网格上")
        trials, _, _ = self.run_cells([(cell, n, c)])
        return int(trials['success'].sum()) if not trials.empty else 0, len(trials)

    def run_embed(self) -> Dict[str, Any]:
        exp = self.experiment
        start = time.perf_counter()
        self.logger.info(f"开始实验: {len(exp.cells())} 个单元，每个单元 {exp.trials} 次试验")
        trials, cells, reports = self.run_cells(exp.cells())
        inversions = {}
        for n in exp.n:
            subset = cells[cells[ColumnName.N] == n] if not cells.empty else cells
            rates = StatsProcessor.rates_by_c(subset)
            inversions[str(n)] = StatsProcessor.count_inversions([r for _, r, _ in rates], [t for _, _, t in rates])
        self.results.update({
            'trials': trials,
            'cells': cells,
            'reports': [r.to_dict() for r in reports],
            'inversions': inversions,
            'elapsed_s': time.perf_counter() - start,
        })
        self.logger.info(f"实验完成: {int(trials['success'].sum()) if not trials.empty else 0}/{len(trials)} 次成功")
        return self.results

    def run_certify(self) -> Dict[str, Any]:
        """对每个 n 的第一张宿主图构造并认证簇划分"""
        exp = self.experiment
        pipeline = EmbeddingPipeline(self.pipeline_config, self.config)
        partitions, rows, errors = {}, [], {}
        for n in exp.n:
            cell = next(index for index, cell_n, _ in exp.cells() if cell_n == n)
            host = self.host_for(cell, n)
            try:
                partition = pipeline.partition_for(host, derive_seed(exp.seed, cell))
            except PartitionError as e:
                self.logger.warning(f"n = {n} 的簇划分失败: {e}")
                errors[str(n)] = {'message': e.message, 'details': e.details}
                continue
            partitions[str(n)] = partition.to_dict()
            for i, verdict in enumerate(partition.verdicts):
                rows.append({
                    'n': n, 'pair': i, 'size_1': len(partition.pairs[i][0]), 'size_2': len(partition.pairs[i][1]),
                    'density': partition.densities[i] if i < len(partition.densities) else None,
                    'passed': verdict.passed, 'reason': verdict.reason, 'min_density': verdict.min_density,
                    'min_degree_ratio': verdict.min_degree_ratio, 'epsilon': partition.params.epsilon,
                    'delta': partition.params.delta, 'rho': partition.rho,
                })
        columns = ['n', 'pair', 'size_1', 'size_2', 'density', 'passed', 'reason', 'min_density',
                   'min_degree_ratio', 'epsilon', 'delta', 'rho']
        self.results.update({
            'partitions': partitions,
            'certification': pd.DataFrame(rows, columns=columns),
            'certification_errors': errors,
        })
        return self.results

    def run(self, *args, **kwargs) -> Dict[str, Any]:
        mode = self.experiment.mode
        if mode == RunMode.EMBED:
            return self.run_embed()
        if mode == RunMode.CERTIFY:
            return self.run_certify()
        from src.experiment.calibration import calibrate
        record = calibrate(self.experiment, self.config, probe=self.probe)
        self.results['calibration'] = record
        return self.results

    def write_outputs(self) -> Dict[str, str]:
        """
        按运行模式写出结果文件

        Returns:
        --------
        Dict[str, str]
            结果名 → 文件路径
        """
        exp = self.experiment
        paths = {}
        json_exporter = JsonExporter(exp.out)
        meta = {'generated_at': datetime.now().isoformat(), 'experiment': exp.to_dict(),
                'pipeline': self.pipeline_config.to_dict()}
        if exp.mode == RunMode.EMBED:
            paths['results'] = CsvExporter(exp.out).export(self.results, FilePath.RESULTS_CSV, key='cells')
            summary = dict(meta, cells=self.results['cells'], inversions=self.results['inversions'],
                           elapsed_s=self.results['elapsed_s'], trials=self.results['reports'])
            paths['summary'] = json_exporter.export(summary, FilePath.SUMMARY_JSON)
            if exp.excel:
                paths['workbook'] = ExcelExporter(exp.out).export(
                    {'cells': self.results['cells'], 'trials': self.results['trials']}, FilePath.WORKBOOK)
        elif exp.mode == RunMode.CERTIFY:
            paths['partition'] = json_exporter.export(dict(meta, partitions=self.results['partitions'],
                                                           errors=self.results['certification_errors']),
                                                      FilePath.PARTITION_JSON)
            paths['certification'] = CsvExporter(exp.out).export(self.results, FilePath.CERTIFICATION_CSV,
                                                                 key='certification')
        else:
            paths['calibration'] = json_exporter.export(dict(meta, calibration=self.results['calibration'].to_dict()),
                                                        FilePath.CALIBRATION_JSON)
        return paths


def run_experiment(cfg: ExperimentConfig, config: Optional[Config] = None,
                   show_progress: bool = True) -> Dict[str, str]:
    """
    运行实验并写出 CSV 与 JSON 汇总

    Parameters:
    -----------
    cfg : ExperimentConfig
        实验参数
    config : Config, optional
        全局配置
    show_progress : bool, optional
        是否显示进度条

    Returns:
    --------
    Dict[str, str]
        结果名 → 文件路径

    Raises:
    -------
    ConfigError
        配置非法
    ExportError
        写出失败
    """
    runner = ExperimentRunner(cfg, config, show_progress)
    runner.run()
    return runner.write_outputs()
