#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
实验配置
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.graph import PHASE_COUNT, HostSpec, PerturbationPlan, parse_host_spec
from src.utils.config import Config
from src.utils.constants import RunMode, TreeShape
from src.utils.exceptions import ConfigError

DEFAULT_PHASE_SPLIT = (0.25,) * PHASE_COUNT


@dataclass
class ExperimentConfig:
    """
    一次蒙特卡洛实验的参数

    每个 (n, c) 组合是一个单元，每个单元运行 trials 次试验。
    tree_shape 为 `file:<path>` 时从文件读取树。
    """
    host: str = 'gnp:0.5'
    n: List[int] = field(default_factory=lambda: [300])
    alpha: float = 0.35
    delta_max: int = 3
    tree_shape: str = TreeShape.UNIFORM_ATTACHMENT
    k: int = 9
    c: List[float] = field(default_factory=lambda: [0.0, 30.0, 60.0, 120.0, 240.0])
    trials: int = 50
    seed: int = 20240601
    out: str = 'output'
    mode: str = RunMode.EMBED
    workers: int = 1
    target: float = 0.9
    record_timing: bool = True
    excel: bool = False

    def __post_init__(self):
        self.n = [int(v) for v in self.n]
        self.c = [float(v) for v in self.c]

    @property
    def host_spec(self) -> HostSpec:
        return parse_host_spec(self.host)

    @property
    def shape(self) -> Tuple[str, Optional[str]]:
        """(形状, 树文件路径)"""
        if self.tree_shape.startswith(f"{TreeShape.FILE}:"):
            return TreeShape.FILE, self.tree_shape.split(':', 1)[1]
        return self.tree_shape, None

    def validate(self, phase_split: Sequence[float] = DEFAULT_PHASE_SPLIT) -> bool:
        """
        Parameters:
        -----------
        phase_split : Sequence[float], optional
            扰动预算的阶段拆分，用于检查 c 的上限

        Raises:
        -------
        ConfigError
            任一字段非法，或某个 c 会让阶段边概率超过 1
        """
        if not self.n or any(v < 1 for v in self.n):
            raise ConfigError(f"n 必须是正整数列表，实际为 {self.n}")
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha 必须在 (0, 1) 内，实际为 {self.alpha}")
        if self.delta_max < 1:
            raise ConfigError(f"delta_max 必须为正，实际为 {self.delta_max}")
        if self.k < 1 or self.k % 2 == 0:
            raise ConfigError(f"k 必须是正奇数，实际为 {self.k}")
        if not self.c or any(v < 0 for v in self.c):
            raise ConfigError(f"c 必须是非负数列表，实际为 {self.c}")
        if self.c != sorted(self.c):
            raise ConfigError(f"c 网格必须升序，实际为 {self.c}")
        if self.trials < 0:
            raise ConfigError(f"trials 不能为负，实际为 {self.trials}")
        if self.seed < 0:
            raise ConfigError(f"seed 不能为负，实际为 {self.seed}")
        if self.workers < 1:
            raise ConfigError(f"workers 必须为正，实际为 {self.workers}")
        if not 0 < self.target < 1:
            raise ConfigError(f"target 必须在 (0, 1) 内，实际为 {self.target}")
        if self.mode not in RunMode.ALL:
            raise ConfigError(f"未知的运行模式: {self.mode}")
        shape, path = self.shape
        if shape not in TreeShape.ALL or (shape == TreeShape.FILE and not path):
            raise ConfigError(f"未知的树形状: {self.tree_shape}")
        parse_host_spec(self.host)
        self.check_budget(phase_split)
        return True

    def check_budget(self, phase_split: Sequence[float]) -> None:
        """每个 n 上的 c 都不能超过 n / max(s_i)"""
        try:
            caps = {n: PerturbationPlan.max_budget(n, phase_split) for n in self.n}
        except ValueError as e:
            raise ConfigError(str(e)) from e
        for n, cap in caps.items():
            over = [c for c in self.c if c > cap]
            if over:
                raise ConfigError(f"n = {n} 时 c 不能超过 {cap:g}（阶段拆分 {list(phase_split)}），实际为 {over}")

    def cells(self) -> List[Tuple[int, int, float]]:
        """(单元编号, n, c)，先按 n 再按 c 排列"""
        return [(index, n, c) for index, (n, c) in enumerate((n, c) for n in self.n for c in self.c)]

    @classmethod
    def from_config(cls, config: Config) -> 'ExperimentConfig':
        """从 Config 的 experiment 节以及 pipeline.alpha、pipeline.k 构造"""
        section = config.get_section('experiment')
        known = {name for name in cls.__dataclass_fields__}
        values = {key: value for key, value in section.items() if key in known}
        values.setdefault('alpha', config.get('pipeline.alpha', cls.alpha))
        values.setdefault('k', config.get('pipeline.k', cls.k))
        try:
            result = cls(**values)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"实验配置无效: {str(e)}") from e
        result.validate()
        return result

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
