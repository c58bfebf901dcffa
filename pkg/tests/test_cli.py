#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import logging
import os

import pytest

from main import logging_options
from src.interface import CommandLineInterface
from src.interface.cli_interface import flag_value, float_list, int_list
from src.utils.constants import FilePath
from src.utils.exceptions import ConfigError


def write_config(tmp_path, data) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding='utf-8')
    return str(path)


class TestParsers:
    def test_lists(self):
        assert int_list("100,200") == [100, 200]
        assert float_list("0,30.5") == [0.0, 30.5]

    @pytest.mark.parametrize("text,expected", [("true", True), ("0", False), ("ON", True), ("", False)])
    def test_flag_value(self, text, expected):
        assert flag_value(text) is expected


class TestResolve:
    def test_defaults(self):
        cli = CommandLineInterface(environ={})
        experiment, _ = cli.resolve(cli.parse_args([]))
        assert experiment.k == 9
        assert experiment.trials == 50

    def test_environment_overrides_config_file(self, tmp_path):
        path = write_config(tmp_path, {'experiment': {'trials': 5, 'seed': 11}})
        cli = CommandLineInterface(environ={'TREE_EMBED_TRIALS': '7'})
        experiment, _ = cli.resolve(cli.parse_args(['--config', path]))
        assert experiment.trials == 7
        assert experiment.seed == 11

    def test_flag_overrides_environment(self):
        cli = CommandLineInterface(environ={'TREE_EMBED_TRIALS': '7', 'TREE_EMBED_C': '0,10'})
        experiment, _ = cli.resolve(cli.parse_args(['--trials', '3']))
        assert experiment.trials == 3
        assert experiment.c == [0.0, 10.0]

    def test_pipeline_section_supplies_alpha_and_k(self, tmp_path):
        path = write_config(tmp_path, {'pipeline': {'alpha': 0.4, 'k': 11}})
        cli = CommandLineInterface(environ={})
        experiment, config = cli.resolve(cli.parse_args(['--config', path]))
        assert (experiment.alpha, experiment.k) == (0.4, 11)
        assert config.get('regularity.epsilon') == 0.25

    def test_invalid_environment_value(self):
        cli = CommandLineInterface(environ={'TREE_EMBED_N': 'many'})
        with pytest.raises(ConfigError):
            cli.resolve(cli.parse_args([]))


class TestExitCodes:
    def test_bad_flag(self):
        assert CommandLineInterface(environ={}).run(['--k', 'seven']) == 2

    def test_invalid_value(self, out_dir):
        assert CommandLineInterface(environ={}).run(['--alpha', '1.5', '--out', out_dir]) == 2

    def test_budget_above_phase_cap(self, out_dir):
        argv = ['--n', '300', '--c', '0,3000', '--trials', '1', '--out', out_dir]
        assert CommandLineInterface(environ={}).run(argv) == 2
        assert not os.path.exists(os.path.join(out_dir, 'results.csv'))

    def test_malformed_config_file(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding='utf-8')
        assert CommandLineInterface(environ={}).run(['--config', str(path)]) == 2

    def test_successful_run(self, out_dir, capsys):
        argv = ['--host', 'complete', '--n', '20', '--tree', 'path', '--c', '0', '--trials', '1',
                '--timing', 'false', '--out', out_dir]
        assert CommandLineInterface(environ={}).run(argv) == 0
        assert os.path.exists(os.path.join(out_dir, 'results.csv'))
        assert os.path.exists(os.path.join(out_dir, 'summary.json'))
        assert 'results:' in capsys.readouterr().out


class TestLoggingOptions:
    def test_app_section_sets_level_and_file(self, tmp_path):
        log_file = str(tmp_path / "trees.log")
        path = write_config(tmp_path, {'app': {'log_level': 'DEBUG', 'log_file': log_file}})
        args = CommandLineInterface(environ={}).parse_args(['--config', path])
        assert logging_options(args) == (logging.DEBUG, log_file)

    def test_flags_override_app_section(self, tmp_path):
        path = write_config(tmp_path, {'app': {'log_level': 'WARNING', 'log_file': 'from_config.log'}})
        flag_file = str(tmp_path / "flag.log")
        args = CommandLineInterface(environ={}).parse_args(['--config', path, '-l', flag_file, '-v'])
        assert logging_options(args) == (logging.DEBUG, flag_file)

    def test_quiet_level_from_config(self, tmp_path):
        path = write_config(tmp_path, {'app': {'log_level': 'WARNING'}})
        args = CommandLineInterface(environ={}).parse_args(['--config', path])
        assert logging_options(args) == (logging.WARNING, FilePath.DEFAULT_LOG)

    def test_malformed_config_falls_back(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding='utf-8')
        args = CommandLineInterface(environ={}).parse_args(['--config', str(path)])
        assert logging_options(args) == (logging.INFO, FilePath.DEFAULT_LOG)
