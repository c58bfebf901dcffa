#!/usr/bin/env python
# -*- coding: utf-8 -*-

import argparse
import logging
import os
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from src.experiment import ExperimentConfig, run_experiment
from src.experiment.experiment_config import DEFAULT_PHASE_SPLIT
from src.utils.config import Config
from src.utils.constants import EnvVar, RunMode, TreeShape
from src.utils.exceptions import ConfigError, ExportError, PreconditionError


def int_list(text: str) -> List[int]:
    """'100,200' → [100, 200]"""
    try:
        return [int(part) for part in str(text).split(',') if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"无法解析整数列表: {text}") from e


def float_list(text: str) -> List[float]:
    """'0,30,60' → [0.0, 30.0, 60.0]"""
    try:
        return [float(part) for part in str(text).split(',') if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"无法解析数值列表: {text}") from e


def flag_value(text: str) -> bool:
    value = str(text).strip().lower()
    if value in ('1', 'true', 'yes', 'on'):
        return True
    if value in ('0', 'false', 'no', 'off', ''):
        return False
    raise argparse.ArgumentTypeError(f"无法解析布尔值: {text}")


# 命令行参数 → (ExperimentConfig 字段, 类型转换)
FLAGS: Dict[str, Tuple[str, Callable[[str], Any]]] = {
    'host': ('host', str),
    'n': ('n', int_list),
    'alpha': ('alpha', float),
    'dmax': ('delta_max', int),
    'tree': ('tree_shape', str),
    'k': ('k', int),
    'c': ('c', float_list),
    'trials': ('trials', int),
    'seed': ('seed', int),
    'out': ('out', str),
    'mode': ('mode', str),
    'workers': ('workers', int),
    'target': ('target', float),
    'excel': ('excel', flag_value),
    'timing': ('record_timing', flag_value),
}


class CommandLineInterface:
    """
    命令行界面 `embed`

    参数优先级：显式命令行参数 > 环境变量 TREE_EMBED_<FLAG> > 配置文件 > 默认配置。
    """
    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.environ = os.environ if environ is None else environ
        self.parser = self.build_parser()

    @staticmethod
    def build_parser() -> argparse.ArgumentParser:
        env = EnvVar.PREFIX
        parser = argparse.ArgumentParser(
            prog='embed',
            description="在随机扰动的稠密图中嵌入有界度生成树的蒙特卡洛实验",
            epilog=f"每个参数都可以用环境变量 {env}<FLAG> 覆盖配置文件，例如 {env}TRIALS=20。")
        parser.add_argument('--host', help="宿主图: gnp:<p> | bipartite:<a>:<b> | complete | file:<path>")
        parser.add_argument('--n', type=int_list, help="顶点数列表，逗号分隔")
        parser.add_argument('--alpha', type=float, help="最小度比例 α")
        parser.add_argument('--dmax', type=int, help="树的最大度 Δ")
        parser.add_argument('--tree', help=f"树形状: {' | '.join(TreeShape.ALL[:-1])} | file:<path>")
        parser.add_argument('--k', type=int, help="裸路径长度（奇数）")
        parser.add_argument('--c', type=float_list, help="随机边预算 c 的网格（升序，逗号分隔）")
        parser.add_argument('--trials', type=int, help="每个单元的试验次数")
        parser.add_argument('--seed', type=int, help="主种子")
        parser.add_argument('--out', help="输出目录")
        parser.add_argument('--mode', choices=RunMode.ALL, help="运行模式")
        parser.add_argument('--workers', type=int, help="并行进程数")
        parser.add_argument('--target', type=float, help="标定的目标成功率")
        parser.add_argument('--excel', type=flag_value, nargs='?', const=True, help="同时写出 Excel 工作簿")
        parser.add_argument('--timing', type=flag_value, help="是否在结果表中记录平均耗时")
        parser.add_argument('--config', help="JSON 配置文件路径")
        parser.add_argument('-v', '--verbose', action='store_true', help="显示详细日志")
        parser.add_argument('-l', '--log-file', type=str, help="日志文件路径")
        return parser

    def parse_args(self, argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
        return self.parser.parse_args(argv)

    def env_overrides(self) -> Dict[str, Any]:
        """
        读取 TREE_EMBED_<FLAG> 环境变量

        Raises:
        -------
        ConfigError
            环境变量的值无法解析
        """
        values = {}
        for flag, (name, convert) in FLAGS.items():
            key = f"{EnvVar.PREFIX}{flag.upper()}"
            if key not in self.environ:
                continue
            try:
                values[name] = convert(self.environ[key])
            except (argparse.ArgumentTypeError, ValueError) as e:
                raise ConfigError(f"环境变量 {key} 无效: {self.environ[key]}") from e
        return values

    def resolve(self, args: argparse.Namespace) -> Tuple[ExperimentConfig, Config]:
        """
        按优先级合并参数

        Returns:
        --------
        Tuple[ExperimentConfig, Config]
            实验参数与全局配置

        Raises:
        -------
        ConfigError
            任一来源的值非法
        """
        config = Config(args.config)
        values = {name: value for name, value in config.get_section('experiment').items()
                  if name in ExperimentConfig.__dataclass_fields__}
        values['alpha'] = config.get('pipeline.alpha', ExperimentConfig.alpha)
        values['k'] = config.get('pipeline.k', ExperimentConfig.k)
        values.update(self.env_overrides())
        for flag, (name, _) in FLAGS.items():
            value = getattr(args, flag, None)
            if value is not None:
                values[name] = value
        try:
            experiment = ExperimentConfig(**values)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"实验配置无效: {str(e)}") from e
        experiment.validate(config.get('pipeline.phase_split', DEFAULT_PHASE_SPLIT))
        return experiment, config

    def execute(self, args: argparse.Namespace) -> int:
        """
        运行实验并返回退出码

        Returns:
        --------
        int
            0 完成（即使有失败的试验），2 配置错误，3 读写错误，1 其他错误
        """
        try:
            experiment, config = self.resolve(args)
            self.logger.info(f"运行模式: {experiment.mode}, 宿主图: {experiment.host}, n = {experiment.n}, "
                             f"c = {experiment.c}")
            paths = run_experiment(experiment, config)
        except (ConfigError, PreconditionError) as e:
            self.logger.error(f"配置错误: {str(e)}", exc_info=True)
            print(f"\n配置错误: {str(e)}")
            return 2
        except (OSError, ExportError) as e:
            self.logger.error(f"读写错误: {str(e)}", exc_info=True)
            print(f"\n读写错误: {str(e)}")
            return 3
        except Exception as e:
            self.logger.error(f"程序运行出错: {str(e)}", exc_info=True)
            print(f"\n程序发生错误: {str(e)}")
            print("详细信息请查看日志文件")
            return 1

        for name, path in paths.items():
            print(f"{name}: {path}")
        return 0

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """解析参数并运行；argparse 的用法错误返回 2"""
        try:
            args = self.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2
        return self.execute(args)
