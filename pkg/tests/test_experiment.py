#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import os

import pytest

from src.experiment import ExperimentConfig, ExperimentRunner, TrialTask, calibrate, run_experiment, run_trial
from src.graph import complete_graph
from src.pipeline import PipelineConfig
from src.utils.config import Config
from src.utils.constants import ColumnName, RunMode, TreeShape
from src.utils.exceptions import ConfigError

HEADER = ','.join(ColumnName.CELL_COLUMNS) + '\n'


def small_experiment(out_dir, **overrides) -> ExperimentConfig:
    values = dict(host='complete', n=[20], tree_shape=TreeShape.PATH, c=[0.0, 40.0], trials=2,
                  seed=7, out=out_dir, record_timing=False)
    values.update(overrides)
    return ExperimentConfig(**values)


class TestExperimentConfig:
    def test_cells_ordered_by_n_then_c(self):
        cfg = ExperimentConfig(n=[10, 20], c=[0.0, 5.0])
        assert cfg.cells() == [(0, 10, 0.0), (1, 10, 5.0), (2, 20, 0.0), (3, 20, 5.0)]

    @pytest.mark.parametrize("overrides", [
        {'k': 8}, {'alpha': 1.0}, {'c': [30.0, 0.0]}, {'trials': -1}, {'mode': 'plot'},
        {'tree_shape': 'spiral'}, {'host': 'torus'}, {'workers': 0},
    ])
    def test_invalid_fields(self, overrides):
        with pytest.raises(ConfigError):
            ExperimentConfig(**overrides).validate()

    def test_tree_file_shape(self):
        assert ExperimentConfig(tree_shape='file:trees/t.txt').shape == (TreeShape.FILE, 'trees/t.txt')

    def test_budget_above_phase_cap(self):
        cfg = ExperimentConfig(host='gnp:0.5', n=[300], c=[0.0, 60.0, 300.0, 3000.0])
        with pytest.raises(ConfigError):
            cfg.validate()
        assert ExperimentConfig(n=[300], c=[0.0, 1200.0]).validate()

    def test_skewed_split_lowers_cap(self):
        cfg = ExperimentConfig(n=[300], c=[0.0, 500.0])
        assert cfg.validate()
        with pytest.raises(ConfigError):
            cfg.validate((0.7, 0.1, 0.1, 0.1))

    def test_runner_checks_configured_split(self, out_dir):
        config = Config()
        config.set('pipeline.phase_split', [0.7, 0.1, 0.1, 0.1])
        with pytest.raises(ConfigError):
            ExperimentRunner(small_experiment(out_dir, c=[0.0, 40.0]), config, show_progress=False)


class TestRunTrial:
    def test_report_carries_cell_identity(self):
        task = TrialTask(cell=3, trial=1, n=20, c=0.0, master_seed=5, host_name='complete',
                         host=complete_graph(20), pipeline=PipelineConfig(), delta_max=3,
                         tree_shape=TreeShape.PATH)
        report = run_trial(task)
        assert (report.cell, report.trial, report.c) == (3, 1, 0.0)
        assert report.host == 'complete'
        assert report.success == report.valid
        assert report.wall_ms >= 0.0

    def test_seed_depends_on_cell_and_trial(self):
        base = dict(n=20, c=0.0, master_seed=5, host_name='complete', host=complete_graph(20),
                    pipeline=PipelineConfig(), delta_max=3, tree_shape=TreeShape.PATH)
        seeds = {TrialTask(cell=c, trial=t, **base).seed for c in range(2) for t in range(2)}
        assert len(seeds) == 4


class TestRunExperiment:
    def test_zero_trials_writes_header_only(self, out_dir):
        paths = run_experiment(small_experiment(out_dir, trials=0), show_progress=False)
        with open(paths['results'], encoding='utf-8') as f:
            assert f.read() == HEADER
        with open(paths['summary'], encoding='utf-8') as f:
            summary = json.load(f)
        assert summary['cells'] == []
        assert summary['trials'] == []

    def test_reruns_are_byte_identical(self, tmp_path):
        contents = []
        for name in ('first', 'second'):
            paths = run_experiment(small_experiment(str(tmp_path / name)), show_progress=False)
            with open(paths['results'], 'rb') as f:
                contents.append(f.read())
        assert contents[0] == contents[1]
        lines = contents[0].decode('utf-8').splitlines()
        assert lines[0] + '\n' == HEADER
        assert len(lines) == 3

    def test_trials_are_counted_per_cell(self, out_dir):
        runner = ExperimentRunner(small_experiment(out_dir, trials=3), show_progress=False)
        results = runner.run()
        cells = results['cells']
        assert list(cells[ColumnName.TRIALS]) == [3, 3]
        assert len(results['trials']) == 6
        assert set(results['inversions']) == {'20'}

    def test_excel_workbook(self, out_dir):
        paths = run_experiment(small_experiment(out_dir, trials=1, excel=True), show_progress=False)
        assert paths['workbook'].endswith('.xlsx')
        assert os.path.exists(paths['workbook'])

    def test_certify_mode(self, out_dir):
        cfg = small_experiment(out_dir, n=[80], mode=RunMode.CERTIFY)
        paths = run_experiment(cfg, show_progress=False)
        with open(paths['partition'], encoding='utf-8') as f:
            data = json.load(f)
        assert '80' in data['partitions'] or '80' in data['errors']
        assert os.path.exists(paths['certification'])

    def test_probe_outside_grid(self, out_dir):
        runner = ExperimentRunner(small_experiment(out_dir), show_progress=False)
        with pytest.raises(ValueError):
            runner.probe(20, 7.0)


class TestCalibrate:
    GRID = [0.0, 30.0, 60.0, 120.0, 240.0]

    def test_finds_smallest_passing_c(self, out_dir):
        calls = []

        def probe(n, c):
            calls.append(c)
            return (10, 10) if c >= 60 else (0, 10)

        record = calibrate(small_experiment(out_dir, n=[50, 100], c=self.GRID), probe=probe, show_progress=False)
        assert record.thresholds == {50: 60.0, 100: 60.0}
        assert record.exhausted == []
        # 每个 n 的探测次数不超过 1 + log2(网格长度) 向上取整
        assert len(calls) <= 2 * 4

    def test_exhausted_grid(self, out_dir):
        record = calibrate(small_experiment(out_dir, c=self.GRID), probe=lambda n, c: (8, 10), show_progress=False)
        assert record.thresholds == {20: None}
        assert record.exhausted == [20]
        data = record.to_dict()
        assert data['exhausted'] == ['20']
        assert data['probes']['20'][0]['rate'] == pytest.approx(0.8)

    def test_first_grid_point_passes(self, out_dir):
        record = calibrate(small_experiment(out_dir, c=self.GRID), probe=lambda n, c: (9, 10), show_progress=False)
        assert record.thresholds[20] == 0.0

    def test_calibration_mode_writes_json(self, out_dir):
        cfg = small_experiment(out_dir, c=[0.0, 40.0], trials=1, mode=RunMode.CALIBRATE)
        paths = run_experiment(cfg, show_progress=False)
        with open(paths['calibration'], encoding='utf-8') as f:
            data = json.load(f)
        assert set(data['calibration']['thresholds']) == {'20'}
